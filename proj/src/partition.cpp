// Copyright 2026 The dilationlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dilationlab/partition.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "dilationlab/matrixcore.hpp"

namespace dilationlab {

namespace {

std::int64_t parse_int(const std::string& text, const std::string& whole) {
  std::int64_t v = 0;
  const char* b = text.data();
  const char* e = text.data() + text.size();
  if (b < e && *b == '+') ++b;
  auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc() || r.ptr != e || b == e) {
    throw PreconditionError("rational literal: cannot parse '" + whole + "'");
  }
  return v;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) /
         static_cast<double>(q.denominator());
}

Rational parse_rational(const std::string& raw) {
  const std::string text = trim(raw);
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text, text));
  std::int64_t num = parse_int(trim(text.substr(0, slash)), text);
  std::int64_t den = parse_int(trim(text.substr(slash + 1)), text);
  if (den == 0) throw PreconditionError("rational literal: zero denominator");
  return Rational(num, den);
}

std::string format_rational(const Rational& q) {
  std::ostringstream out;
  out << q.numerator();
  if (q.denominator() != 1) out << '/' << q.denominator();
  return out.str();
}

Partition::Partition(std::vector<Rational> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw PreconditionError("Partition: need N >= 1");
  if (points_.front() != Rational(0) || points_.back() != Rational(1)) {
    throw PreconditionError("Partition: must start at 0 and end at 1");
  }
  for (std::size_t k = 1; k < points_.size(); ++k) {
    if (!(points_[k - 1] < points_[k])) {
      throw PreconditionError("Partition: points must be strictly increasing");
    }
  }
}

Partition Partition::trivial() { return Partition({Rational(0), Rational(1)}); }

Partition Partition::uniform(int N) {
  if (N < 1) throw PreconditionError("Partition::uniform: N < 1");
  std::vector<Rational> pts;
  for (int k = 0; k <= N; ++k) pts.emplace_back(k, N);
  return Partition(std::move(pts));
}

Partition Partition::parse(const std::string& literal) {
  std::vector<Rational> pts;
  std::stringstream in(literal);
  std::string item;
  while (std::getline(in, item, ',')) pts.push_back(parse_rational(item));
  return Partition(std::move(pts));
}

Rational Partition::delta(int k) const {
  if (k < 1 || k > N()) throw std::out_of_range("Partition::delta");
  return points_[k] - points_[k - 1];
}

Rational Partition::mesh() const {
  Rational m(0);
  for (int k = 1; k <= N(); ++k) m = std::max(m, delta(k));
  return m;
}

bool Partition::contains(const Partition& other) const {
  return std::includes(points_.begin(), points_.end(), other.points_.begin(),
                       other.points_.end());
}

Partition Partition::unite(const Partition& other) const {
  std::vector<Rational> pts;
  std::set_union(points_.begin(), points_.end(), other.points_.begin(),
                 other.points_.end(), std::back_inserter(pts));
  return Partition(std::move(pts));
}

std::string Partition::to_string() const {
  std::string out;
  for (const auto& q : points_) {
    if (!out.empty()) out += ',';
    out += format_rational(q);
  }
  return out;
}

Partition homogenize(const Partition& xi, int m) {
  if (m < 1) throw PreconditionError("homogenize: m < 1");
  std::vector<Rational> pts;
  for (int k = 1; k <= xi.N(); ++k) {
    const Rational a = xi.tau(k - 1);
    const Rational d = xi.delta(k);
    for (int j = 0; j < m; ++j) pts.push_back(a + d * Rational(j, m));
  }
  pts.push_back(Rational(1));
  return Partition(std::move(pts));
}

std::vector<Rational> affine_image(const Partition& p, const Rational& a,
                                   const Rational& b) {
  std::vector<Rational> out;
  for (const auto& q : p.points()) out.push_back(a + b * q);
  return out;
}

SelfSimilarSplit self_similar_split(const Partition& xi, const Rational& alpha,
                                    int m) {
  if (alpha < Rational(0) || alpha > Rational(1)) {
    throw PreconditionError("self_similar_split: alpha outside [0,1]");
  }
  if (m < 1) throw PreconditionError("self_similar_split: m < 1");
  auto in_system = [m](const Partition& p) {
    return m == 1 ? p : homogenize(p, m);
  };
  Partition g1 = Partition::trivial();
  Partition g2 = Partition::trivial();
  if (alpha == Rational(0)) {
    g2 = xi;
  } else if (alpha == Rational(1)) {
    g1 = xi;
  } else {
    // Left part rescaled from [0, alpha], right part from [alpha, 1].
    std::vector<Rational> left{Rational(0)};
    std::vector<Rational> right{Rational(0)};
    for (const auto& q : xi.points()) {
      if (q > Rational(0) && q < alpha) left.push_back(q / alpha);
      if (q > alpha && q < Rational(1)) {
        right.push_back((q - alpha) / (Rational(1) - alpha));
      }
    }
    left.push_back(Rational(1));
    right.push_back(Rational(1));
    g1 = Partition(std::move(left));
    g2 = Partition(std::move(right));
  }
  g1 = in_system(g1);
  g2 = in_system(g2);
  std::vector<Rational> pts = affine_image(g1, Rational(0), alpha);
  auto upper = affine_image(g2, alpha, Rational(1) - alpha);
  pts.insert(pts.end(), upper.begin(), upper.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return SelfSimilarSplit{g1, g2, Partition(std::move(pts))};
}

ScaledPartition ScaledPartition::make(const Partition& base, double t,
                                      double s) {
  if (t < s) throw PreconditionError("ScaledPartition: t < s");
  ScaledPartition sp{base, t, s, {}, {}};
  const double span = t - s;
  for (const auto& q : base.points()) sp.taus.push_back(s + span * to_double(q));
  for (int k = 1; k <= base.N(); ++k) {
    sp.deltas.push_back(span * to_double(base.delta(k)));
  }
  return sp;
}

}  // namespace dilationlab
