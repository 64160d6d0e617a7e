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

#include "dilationlab/freeword.hpp"

#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "dilationlab/dilation.hpp"

namespace dilationlab {

namespace {

constexpr double kDyadicScale = 16777216.0;  // 2^24

TraceEntry snapshot(const Word& w, ReduceStep step) {
  return TraceEntry{w.size(), w.indices(), w.values(), step};
}

bool is_zero(double x) { return std::abs(x) <= kDust; }

}  // namespace

std::vector<int> Word::indices() const {
  std::vector<int> out;
  out.reserve(letters.size());
  for (const auto& l : letters) out.push_back(l.index);
  return out;
}

std::vector<double> Word::values() const {
  std::vector<double> out;
  out.reserve(letters.size());
  for (const auto& l : letters) out.push_back(l.value);
  return out;
}

bool is_bubble_swap_free(const std::vector<int>& indices) {
  for (std::size_t k = 1; k < indices.size(); ++k) {
    if (indices[k] == indices[k - 1]) return false;
  }
  return true;
}

bool is_minimal(const Word& w) {
  for (const auto& l : w.letters) {
    if (is_zero(l.value)) return false;
  }
  return is_bubble_swap_free(w.indices());
}

Reduction reduce(const Word& w) {
  Reduction red;
  red.word = w;
  red.trace.push_back(snapshot(w, ReduceStep::initial));
  auto& letters = red.word.letters;
  for (;;) {
    bool changed = false;
    for (std::size_t k = 0; k < letters.size(); ++k) {
      if (is_zero(letters[k].value)) {
        letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(k));
        red.trace.push_back(snapshot(red.word, ReduceStep::drop_zero));
        changed = true;
        break;
      }
    }
    if (changed) continue;
    for (std::size_t k = 0; k + 1 < letters.size(); ++k) {
      if (letters[k].index == letters[k + 1].index) {
        letters[k].value += letters[k + 1].value;
        letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(k + 1));
        red.trace.push_back(snapshot(red.word, ReduceStep::merge));
        changed = true;
        break;
      }
    }
    if (!changed) break;
  }
  red.trace.push_back(snapshot(red.word, ReduceStep::minimal));
  return red;
}

Word multiply(const Word& x, const Word& y) {
  if (x.mode != y.mode) throw PreconditionError("multiply: mode mismatch");
  Word xy = x;
  xy.letters.insert(xy.letters.end(), y.letters.begin(), y.letters.end());
  return reduce(xy).word;
}

Word inverse(const Word& x) {
  if (x.mode != WordMode::group) {
    throw PreconditionError("inverse: only defined in group mode");
  }
  Word inv;
  inv.mode = WordMode::group;
  for (auto it = x.letters.rbegin(); it != x.letters.rend(); ++it) {
    inv.letters.push_back({it->index, -it->value});
  }
  return reduce(inv).word;
}

Word expand(const Word& w, std::uint64_t seed, int steps) {
  if (steps < 0) throw PreconditionError("expand: negative step count");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Word out = w;
  auto& letters = out.letters;
  for (int s = 0; s < steps; ++s) {
    const bool split = !letters.empty() && unit(gen) < 0.5;
    if (split) {
      std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
      const std::size_t k = pick(gen);
      const Letter l = letters[k];
      double x1;
      if (out.mode == WordMode::monoid) {
        x1 = std::floor(unit(gen) * l.value * kDyadicScale) / kDyadicScale;
      } else {
        const double span = std::abs(l.value) + 1.0;
        x1 = std::floor((2.0 * unit(gen) - 1.0) * span * kDyadicScale) /
             kDyadicScale;
      }
      letters[k].value = x1;
      letters.insert(letters.begin() + static_cast<std::ptrdiff_t>(k + 1),
                     Letter{l.index, l.value - x1});
    } else {
      std::uniform_int_distribution<std::size_t> pos(0, letters.size());
      int index = 0;
      if (!letters.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
        index = letters[pick(gen)].index;
      }
      letters.insert(letters.begin() + static_cast<std::ptrdiff_t>(pos(gen)),
                     Letter{index, 0.0});
    }
  }
  return out;
}

Matrix evaluate(const Word& w, const std::vector<ContractionSemigroup>& family) {
  if (family.empty()) throw PreconditionError("evaluate: empty family");
  const int n = family.front().dim();
  Matrix out = identity(n);
  for (const auto& l : w.letters) {
    if (l.index < 0 || l.index >= static_cast<int>(family.size())) {
      throw std::out_of_range("evaluate: letter index has no family member");
    }
    const auto& T = family[l.index];
    if (l.value < 0.0) {
      if (w.mode == WordMode::monoid) {
        throw PreconditionError("evaluate: negative time in monoid word");
      }
      if (!T.is_skew()) {
        throw PreconditionError(
            "evaluate: negative time against a non-unitary family member");
      }
    }
    out = out * expm(T.generator(), l.value);
  }
  return out;
}

double verify_algebraic_dilation(const std::vector<ContractionSemigroup>& family,
                                 const std::vector<Word>& words, int M) {
  if (family.empty()) throw PreconditionError("verify_algebraic_dilation: empty family");
  std::vector<ContinuousDilation> dils;
  for (const auto& T : family) dils.push_back(continuous_dilation(T, M));
  double worst = 0.0;
  for (const auto& w : words) {
    if (w.mode != WordMode::monoid) {
      throw PreconditionError("verify_algebraic_dilation: monoid words only");
    }
    worst = std::max(worst, continuous_word_residual(family, dils, w.indices(),
                                                     w.values()));
  }
  return worst;
}

Word parse_word(const std::string& literal, WordMode mode) {
  Word w;
  w.mode = mode;
  std::istringstream in(literal);
  std::string token;
  while (in >> token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) {
      throw PreconditionError("word literal: token '" + token + "' lacks ':'");
    }
    Letter l;
    const char* begin = token.data();
    const char* end = token.data() + token.size();
    auto r1 = std::from_chars(begin, begin + colon, l.index);
    if (r1.ec != std::errc() || r1.ptr != begin + colon) {
      throw PreconditionError("word literal: bad index in '" + token + "'");
    }
    const char* vbegin = begin + colon + 1;
    if (vbegin < end && *vbegin == '+') ++vbegin;
    auto r2 = std::from_chars(vbegin, end, l.value);
    if (r2.ec != std::errc() || r2.ptr != end || !std::isfinite(l.value)) {
      throw PreconditionError("word literal: bad value in '" + token + "'");
    }
    if (mode == WordMode::monoid && l.value < 0.0) {
      throw PreconditionError("word literal: negative time in monoid word '" +
                              literal + "'");
    }
    w.letters.push_back(l);
  }
  return w;
}

std::string format_word(const Word& w) {
  std::string out;
  char buf[64];
  for (const auto& l : w.letters) {
    if (!out.empty()) out += ' ';
    out += std::to_string(l.index);
    out += ':';
    auto r = std::to_chars(buf, buf + sizeof(buf), l.value);
    out.append(buf, r.ptr);
  }
  return out;
}

}  // namespace dilationlab
