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

#ifndef DILATIONLAB_SEMIGROUP_HPP_
#define DILATIONLAB_SEMIGROUP_HPP_

#include <functional>
#include <vector>

#include "dilationlab/matrixcore.hpp"

namespace dilationlab {

inline constexpr double kDissipativityTol = 1.0e-10;

// T(t) = exp(tA) for a bounded dissipative generator A.
class ContractionSemigroup {
 public:
  explicit ContractionSemigroup(Matrix A, double tol = kDissipativityTol);

  const Matrix& generator() const { return A_; }
  int dim() const { return static_cast<int>(A_.rows()); }
  // Largest eigenvalue of (A + A*)/2.
  double dissipativity() const { return dissipativity_; }
  // True when A + A* vanishes, i.e. T extends to a unitary group.
  bool is_skew(double tol = 1.0e-10) const;

 private:
  Matrix A_;
  double dissipativity_;
};

Matrix evaluate(const ContractionSemigroup& T, double t);

// max over the grid of ||T(t)|| - 1; should be <= 1e-10.
double contractivity_excess(const ContractionSemigroup& T,
                            const std::vector<double>& t_grid);

struct YosidaConstants {
  double lambda;
  double gamma;  // (lambda + 1) / (lambda - 1)
  double alpha;  // lambda / (lambda - 1)
  double beta;   // 2 alpha^2

  static YosidaConstants from_lambda(double lambda);
};

struct PolyApprox {
  double t = 0.0;
  double lambda = 0.0;
  int degree = 0;
  std::vector<double> coeffs;
  double tail_bound = 0.0;
};

struct QuadratureSpec {
  double tol = 1.0e-10;
  double panel_width = 1.0;  // initial width, halved until converged
  int max_panels = 1 << 14;
};

// V = (A + 1)(A - 1)^{-1}; cross-checked against 1 - 2(1 - A)^{-1}.
Matrix cogenerator(const ContractionSemigroup& T);
// A = 1 - 2(1 - V)^{-1}.
Matrix generator_from_cogenerator(const Matrix& V);

// lambda^2 R(A, lambda) - lambda, cross-checked against
// alpha - beta (gamma - V)^{-1}.
Matrix yosida_generator(const ContractionSemigroup& T,
                        const YosidaConstants& c);
Matrix yosida_semigroup(const ContractionSemigroup& T,
                        const YosidaConstants& c, double t);

// Maclaurin coefficients of exp(t(alpha - beta / (gamma - z))) up to
// degree n with a Cauchy estimate of the discarded tail on the unit disc.
PolyApprox poly_coeffs(double t, const YosidaConstants& c, int n);
// Scalar tail estimate alone, for sizing degrees.
double poly_tail_bound(double t, const YosidaConstants& c, int n);
Matrix poly_apply(const PolyApprox& p, const Matrix& V);
// p(V) X by Horner's rule on the columns of X.
Matrix poly_apply_to(const PolyApprox& p, const Matrix& V, const Matrix& X);

Matrix resolvent_via_laplace(const ContractionSemigroup& T, Complex lambda,
                             const QuadratureSpec& quad = {});

using GeneratorMap = std::function<Matrix(double)>;

struct ContinuityReport {
  std::vector<double> grid;
  // Entry k compares grid[k] with grid[k + 1].
  std::vector<double> ksot;  // sup_t max_xi ||(T_w(t) - T_w'(t)) xi||
  std::vector<double> sot;   // max_xi ||(V_w - V_w') xi||
};

ContinuityReport continuity_moduli(const GeneratorMap& family,
                                   const std::vector<double>& grid,
                                   const std::vector<double>& t_grid,
                                   const std::vector<Vector>& probes);

}  // namespace dilationlab

#endif  // DILATIONLAB_SEMIGROUP_HPP_
