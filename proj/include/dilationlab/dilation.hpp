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

#ifndef DILATIONLAB_DILATION_HPP_
#define DILATIONLAB_DILATION_HPP_

#include <vector>

#include "dilationlab/matrixcore.hpp"
#include "dilationlab/semigroup.hpp"

namespace dilationlab {

// Depth-M truncation of the Schaeffer isometry and its unitary extension.
//
// Layout: the isometry space is n*M dimensional with level l occupying rows
// [l*n, (l+1)*n). The unitary space stacks two copies of it, the first copy
// carrying W.
struct TruncatedDilation {
  int n = 0;
  int M = 0;
  Matrix S;      // the dilated contraction
  Matrix W;      // n*M
  Matrix U_hat;  // 2*n*M, [[W, I - WW*], [0, W*]]
  Matrix r0;     // n*M x n
  Matrix r1;     // 2*n*M x n
  Matrix D;      // sqrt(I - S*S)
};

struct ContinuousDilation {
  TruncatedDilation underlying;  // built from the co-generator V
  Matrix B;                      // 1 - 2(1 - U_hat)^{-1}
  Matrix r1;
  // ||(1 - U_hat)^{-1} - block assembly||, relative to the inverse's norm.
  double block_formula_residual = 0.0;

  Matrix propagator(double t) const { return expm(B, t); }
};

// r* U r.
Matrix compress(const Matrix& U, const Matrix& r);

Matrix nagy_isometry(const Matrix& S, int M);
TruncatedDilation nagy_unitary(const Matrix& S, int M);

// ||prod S_{i_k}^{n_k} - r1* (prod U_hat_{i_k}^{n_k}) r1||, leftmost letter
// leftmost in both products. Requires M >= 2 + sum of powers.
double verify_discrete_word(const std::vector<Matrix>& family,
                            const std::vector<int>& indices,
                            const std::vector<int>& powers, int M);

struct EigenTransfer {
  Complex lambda;
  double dilation_residual = 0.0;  // ||U_hat r1 xi - lambda r1 xi||
  double defect_residual = 0.0;    // ||D xi||
  bool transferred = false;
};

struct SpectrumTransferReport {
  double tol = 0.0;
  std::vector<EigenTransfer> unimodular;
};

SpectrumTransferReport point_spectrum_transfer(const Matrix& S, int M,
                                               double tol);

// (1 - U_hat)^{-1} assembled blockwise from (1 - W)^{-1}, which is summed as
// the finite Neumann series of the level-lowering part.
Matrix block_assembled_inverse(const TruncatedDilation& d);

ContinuousDilation continuous_dilation(const ContractionSemigroup& T, int M);

// ||prod T_{i_k}(t_k) - r1* (prod exp(t_k B_{i_k})) r1||.
double verify_continuous_word(const std::vector<ContractionSemigroup>& family,
                              const std::vector<int>& indices,
                              const std::vector<double>& times, int M);
double continuous_word_residual(const std::vector<ContractionSemigroup>& family,
                                const std::vector<ContinuousDilation>& dils,
                                const std::vector<int>& indices,
                                const std::vector<double>& times);

struct PolyTransportReport {
  double residual = 0.0;  // polynomial identity, exact up to rounding
  double tail_sum = 0.0;  // sum of per-letter tail bounds
  // Same word with exp(t A^(lambda)) letters against exp(t f(U_hat)).
  double yosida_word_residual = 0.0;
};

PolyTransportReport poly_transport(
    const std::vector<ContractionSemigroup>& family,
    const std::vector<int>& indices, const std::vector<double>& times,
    double lambda, int n, int M);
double verify_poly_transport(const std::vector<ContractionSemigroup>& family,
                             const std::vector<int>& indices,
                             const std::vector<double>& times, double lambda,
                             int n, int M);

// max_x ||U(x) r - r V(x)||.
double intertwine_check(const std::vector<Matrix>& V_samples, const Matrix& r,
                        const std::vector<Matrix>& U_samples);

struct WordOperators {
  Matrix T;  // the word evaluated on the base space
  Matrix U;  // the word evaluated on the dilation space
};

struct PairingReport {
  double residual = 0.0;            // max over words
  double unitarity_residual = 0.0;  // ||w* w - I||
  double completion_residual = 0.0; // ||w iota p - r1 p||
};

// Identifies the base space with the last n coordinates of the dilation
// space, completes r1 p to a unitary w on the dilation space and evaluates
// |<T(x) xi, eta> - <U(x) w p xi, w p eta>| for each word.
PairingReport weak_approx_pairing(const std::vector<WordOperators>& words,
                                  const Matrix& r1, const Vector& xi,
                                  const Vector& eta);

}  // namespace dilationlab

#endif  // DILATIONLAB_DILATION_HPP_
