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

#ifndef DILATIONLAB_PARTITION_HPP_
#define DILATIONLAB_PARTITION_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "dilationlab/matrixcore.hpp"  // PreconditionError

namespace dilationlab {

using Rational = boost::rational<std::int64_t>;

double to_double(const Rational& q);
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

// Finite partition of [0,1]: strictly increasing exact points from 0 to 1.
class Partition {
 public:
  explicit Partition(std::vector<Rational> points);

  static Partition trivial();
  static Partition uniform(int N);
  // Comma separated rationals, e.g. "0,1/3,1".
  static Partition parse(const std::string& literal);

  const std::vector<Rational>& points() const { return points_; }
  int N() const { return static_cast<int>(points_.size()) - 1; }
  // tau(k) for k = 0..N.
  const Rational& tau(int k) const { return points_.at(k); }
  // tau(k) - tau(k - 1) for k = 1..N.
  Rational delta(int k) const;
  Rational mesh() const;
  bool contains(const Partition& other) const;
  Partition unite(const Partition& other) const;
  std::string to_string() const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<Rational> points_;
};

// Splits every subinterval uniformly into m pieces.
Partition homogenize(const Partition& xi, int m);

// a + b * points, as a sorted point list (not itself a partition of [0,1]).
std::vector<Rational> affine_image(const Partition& p, const Rational& a,
                                   const Rational& b);

struct SelfSimilarSplit {
  Partition gamma1;
  Partition gamma2;
  Partition gamma3;
};

// Gamma3 = alpha Gamma1 u (alpha + (1 - alpha) Gamma2), containing xi.
// m = 1 is the system of all partitions; m > 1 requires m | N for all three.
// A side collapsed by alpha in {0,1} receives {0,1}, homogenized when m > 1.
SelfSimilarSplit self_similar_split(const Partition& xi, const Rational& alpha,
                                    int m = 1);

// The scaled partition s + (t - s) xi, converted to doubles.
struct ScaledPartition {
  Partition base;
  double t = 0.0;
  double s = 0.0;
  std::vector<double> taus;    // taus[j], j = 0..N
  std::vector<double> deltas;  // deltas[k - 1] for k = 1..N

  static ScaledPartition make(const Partition& base, double t, double s);
};

}  // namespace dilationlab

#endif  // DILATIONLAB_PARTITION_HPP_
