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

#ifndef DILATIONLAB_FREEWORD_HPP_
#define DILATIONLAB_FREEWORD_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dilationlab/matrixcore.hpp"
#include "dilationlab/semigroup.hpp"

namespace dilationlab {

// Values with |x| <= kDust count as zero letters.
inline constexpr double kDust = 1.0e-15;

enum class WordMode { monoid, group };

struct Letter {
  int index = 0;
  double value = 0.0;

  bool operator==(const Letter&) const = default;
};

struct Word {
  std::vector<Letter> letters;
  WordMode mode = WordMode::monoid;

  int size() const { return static_cast<int>(letters.size()); }
  std::vector<int> indices() const;
  std::vector<double> values() const;
  bool operator==(const Word&) const = default;
};

enum class ReduceStep { initial, drop_zero, merge, minimal };

struct TraceEntry {
  int N = 0;
  std::vector<int> indices;
  std::vector<double> values;
  ReduceStep step = ReduceStep::initial;
};

struct Reduction {
  Word word;
  std::vector<TraceEntry> trace;
};

bool is_bubble_swap_free(const std::vector<int>& indices);
// Bubble-swap free with no zero letters.
bool is_minimal(const Word& w);

// Drops zero letters and merges equal neighbours, smallest position first,
// dropping before merging, until neither applies.
Reduction reduce(const Word& w);
Word multiply(const Word& x, const Word& y);
// Group mode only.
Word inverse(const Word& x);

// Random rewriting that preserves the element: splits letters at dyadic
// points and inserts zero letters. Dyadic input values stay exactly
// representable through later merges.
Word expand(const Word& w, std::uint64_t seed, int steps);

// prod T_{i_k}(x_k) with family[i] serving index i. Group mode needs skew
// generators for every letter with negative value.
Matrix evaluate(const Word& w, const std::vector<ContractionSemigroup>& family);

// max over words of ||T(x) - r1* U(x) r1|| with U assembled from the
// depth-M continuous dilations of the family.
double verify_algebraic_dilation(const std::vector<ContractionSemigroup>& family,
                                 const std::vector<Word>& words, int M);

// `i:x` tokens separated by whitespace.
Word parse_word(const std::string& literal, WordMode mode = WordMode::monoid);
std::string format_word(const Word& w);

}  // namespace dilationlab

#endif  // DILATIONLAB_FREEWORD_HPP_
