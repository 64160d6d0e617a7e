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

#ifndef DILATIONLAB_EVOLUTION_HPP_
#define DILATIONLAB_EVOLUTION_HPP_

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "dilationlab/dilation.hpp"
#include "dilationlab/matrixcore.hpp"
#include "dilationlab/partition.hpp"
#include "dilationlab/semigroup.hpp"

namespace dilationlab {

// tau -> A(tau) on a closed interval, dissipative wherever it is sampled.
class GeneratorFamily {
 public:
  enum class Kind { constant, affine, table };

  static GeneratorFamily constant(Matrix A, double lo = 0.0, double hi = 1.0);
  // A(tau) = A0 + tau A1. The Hermitian part is affine in tau, so checking
  // the two endpoints covers the whole interval.
  static GeneratorFamily affine(Matrix A0, Matrix A1, double lo = 0.0,
                                double hi = 1.0);
  // Piecewise constant: nearest grid point, ties to the lower one.
  static GeneratorFamily table(std::vector<double> taus,
                               std::vector<Matrix> generators);

  Kind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int dim() const { return static_cast<int>(A0_.rows()); }
  Matrix at(double tau) const;
  ContractionSemigroup semigroup_at(double tau) const;
  // Index of the table entry used for tau (table kind only).
  int snap(double tau) const;

 private:
  GeneratorFamily() = default;

  Kind kind_ = Kind::constant;
  double lo_ = 0.0;
  double hi_ = 1.0;
  Matrix A0_;
  Matrix A1_;
  std::vector<double> taus_;
  std::vector<Matrix> table_;
};

using Monitor = std::function<Matrix(double)>;

struct MonitoredProcess {
  ContractionSemigroup T;
  Monitor X;
  int m = 0;  // idempotency order, 0 when unchecked
};

struct MonitorCheck {
  double idempotency = 0.0;  // max ||X^m X - X||
  double measurement = 0.0;  // max ||X(tau') X(tau) - X(tau)||
};

// Validates the monitor on a grid: m-idempotency when m >= 1 and, when
// `measurements` is set, the family law X(tau') X(tau) = X(tau).
MonitoredProcess make_monitored_process(ContractionSemigroup T, Monitor X,
                                        int m, const std::vector<double>& grid,
                                        bool measurements = false);
MonitorCheck check_monitor(const MonitoredProcess& proc,
                           const std::vector<double>& grid);

Matrix pre_evolution_product(const GeneratorFamily& fam, const Partition& xi,
                             double t, double s);
Matrix monitoring_product(const MonitoredProcess& proc, const Partition& xi,
                          double t, double s);

struct RefinementReport {
  Matrix last;
  std::vector<double> differences;  // ||E_k - E_{k-1}||
  bool converged = false;
  std::string message;
};

RefinementReport refinement_limit(
    const std::function<Matrix(const Partition&)>& producer,
    const std::vector<Partition>& schedule, double tol);

using TwoParameterFamily = std::function<Matrix(double, double)>;

struct LawReport {
  double diagonal = 0.0;  // max ||E(t,t) - I||, skipped for pseudo families
  double cocycle = 0.0;   // max ||E(t,s) E(s,r) - E(t,r)||
};

LawReport evolution_law_check(const TwoParameterFamily& E,
                              const std::vector<std::array<double, 3>>& triples,
                              const std::vector<double>& diag,
                              bool pseudo = false);

// T_{perm(m-1)}(tau) ... T_{perm(0)}(tau).
Matrix chernoff_Q(const std::vector<int>& perm,
                  const std::vector<ContractionSemigroup>& sgs, double tau);

// On C^m (x) X: T~(t) = sum_i E_ii (x) T_i(m t), monitored by the cyclic
// shift W = sum_i E_{i+1 mod m, i} (x) 1.
MonitoredProcess cycle_monitored_system(
    const std::vector<ContractionSemigroup>& sgs);
// sum_i E_ii (x) prod_l Q_{sigma_i}(delta_l) over xi0 scaled to [s,t],
// sigma_i(j) = (i + j) mod m; equals the cycle system's monitoring product
// over homogenize(xi0, m).
Matrix cycle_block_reference(const std::vector<ContractionSemigroup>& sgs,
                             const Partition& xi0, double t, double s);
// The m = 2 cycle system of the unitary groups generated by iH0 and iH1.
MonitoredProcess feynman_analog(const Matrix& H0, const Matrix& H1);

struct DiagonalBlock {
  std::vector<double> grid;
  int n = 0;
  ContractionSemigroup T_omega;  // block diagonal, blocks A(grid[k])
  Matrix iota;                   // n*g x n, stacks g copies of the identity

  Matrix pi(int k) const;  // n x n*g, selects block k
  int index_of(double tau) const;
};

DiagonalBlock diagonal_block(const GeneratorFamily& fam,
                             const std::vector<double>& grid);

struct ReductionDiagnostics {
  double j_r = 0.0;          // max ||j_tau r - I||
  double measurement = 0.0;  // max ||P_tau' P_tau - P_tau||
  double passivity = 0.0;    // semigroup law of P U(.) P
  double isometry_deficit = 0.0;  // ||r* r - I||, equals grid size - 1
};

struct WordIdentity {
  double residual = 0.0;    // ||T^xi(t,s) - j (P x U)^xi(t,s) r||
  double truncation = 0.0;  // continuous-dilation word residual, same deltas
};

struct PreEvolutionReduction {
  DiagonalBlock block;
  ContinuousDilation dilation;
  MonitoredProcess process;  // U = exp(tB), monitored by P_tau
  Matrix r;
  std::vector<Matrix> j;  // one per grid point
  std::vector<Matrix> P;  // r j_tau
  GeneratorFamily snapped;  // the family restricted to the grid
  ReductionDiagnostics diagnostics;

  WordIdentity word_identity(const Partition& xi, double t, double s) const;
};

PreEvolutionReduction reduce_pre_evolution(const GeneratorFamily& fam,
                                           const std::vector<double>& grid,
                                           int M);

}  // namespace dilationlab

#endif  // DILATIONLAB_EVOLUTION_HPP_
