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

#include "dilationlab/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dilationlab {

namespace {

void require_dissipative(const Matrix& A, const char* what) {
  if (hermitian_part_max_eigenvalue(A) > kDissipativityTol) {
    throw PreconditionError(std::string(what) + ": generator not dissipative");
  }
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
  int total = 0;
  for (const auto& b : blocks) total += static_cast<int>(b.rows());
  Matrix out = Matrix::Zero(total, total);
  int at = 0;
  for (const auto& b : blocks) {
    const int n = static_cast<int>(b.rows());
    out.block(at, at, n, n) = b;
    at += n;
  }
  return out;
}

Matrix matrix_power(const Matrix& X, int m) {
  Matrix out = identity(static_cast<int>(X.rows()));
  for (int k = 0; k < m; ++k) out = out * X;
  return out;
}

}  // namespace

GeneratorFamily GeneratorFamily::constant(Matrix A, double lo, double hi) {
  if (!(lo <= hi)) throw PreconditionError("GeneratorFamily: empty domain");
  require_dissipative(A, "GeneratorFamily::constant");
  GeneratorFamily f;
  f.kind_ = Kind::constant;
  f.lo_ = lo;
  f.hi_ = hi;
  f.A0_ = std::move(A);
  return f;
}

GeneratorFamily GeneratorFamily::affine(Matrix A0, Matrix A1, double lo,
                                        double hi) {
  if (!(lo <= hi)) throw PreconditionError("GeneratorFamily: empty domain");
  if (A0.rows() != A1.rows() || A0.cols() != A1.cols()) {
    throw PreconditionError("GeneratorFamily::affine: shape mismatch");
  }
  require_dissipative(A0 + lo * A1, "GeneratorFamily::affine");
  require_dissipative(A0 + hi * A1, "GeneratorFamily::affine");
  GeneratorFamily f;
  f.kind_ = Kind::affine;
  f.lo_ = lo;
  f.hi_ = hi;
  f.A0_ = std::move(A0);
  f.A1_ = std::move(A1);
  return f;
}

GeneratorFamily GeneratorFamily::table(std::vector<double> taus,
                                       std::vector<Matrix> generators) {
  if (taus.empty() || taus.size() != generators.size()) {
    throw PreconditionError("GeneratorFamily::table: bad table");
  }
  if (!std::is_sorted(taus.begin(), taus.end()) ||
      std::adjacent_find(taus.begin(), taus.end()) != taus.end()) {
    throw PreconditionError("GeneratorFamily::table: grid not increasing");
  }
  for (const auto& A : generators) {
    require_dissipative(A, "GeneratorFamily::table");
  }
  GeneratorFamily f;
  f.kind_ = Kind::table;
  f.lo_ = taus.front();
  f.hi_ = taus.back();
  f.A0_ = generators.front();
  f.taus_ = std::move(taus);
  f.table_ = std::move(generators);
  return f;
}

int GeneratorFamily::snap(double tau) const {
  if (kind_ != Kind::table) throw PreconditionError("snap: not a table family");
  auto it = std::lower_bound(taus_.begin(), taus_.end(), tau);
  if (it == taus_.end()) return static_cast<int>(taus_.size()) - 1;
  const int hi = static_cast<int>(it - taus_.begin());
  if (hi == 0) return 0;
  const int lo = hi - 1;
  // Ties go to the lower grid point.
  return (tau - taus_[lo] <= taus_[hi] - tau) ? lo : hi;
}

Matrix GeneratorFamily::at(double tau) const {
  switch (kind_) {
    case Kind::constant:
      return A0_;
    case Kind::affine:
      return A0_ + tau * A1_;
    case Kind::table:
      return table_[snap(tau)];
  }
  return A0_;
}

ContractionSemigroup GeneratorFamily::semigroup_at(double tau) const {
  return ContractionSemigroup(at(tau));
}

MonitorCheck check_monitor(const MonitoredProcess& proc,
                           const std::vector<double>& grid) {
  MonitorCheck c;
  for (double tau : grid) {
    Matrix X = proc.X(tau);
    if (proc.m >= 1) {
      c.idempotency =
          std::max(c.idempotency, op_norm(matrix_power(X, proc.m) * X - X));
    }
    for (double other : grid) {
      c.measurement =
          std::max(c.measurement, op_norm(proc.X(other) * X - X));
    }
  }
  return c;
}

MonitoredProcess make_monitored_process(ContractionSemigroup T, Monitor X,
                                        int m, const std::vector<double>& grid,
                                        bool measurements) {
  if (m < 0) throw PreconditionError("monitored process: negative order");
  MonitoredProcess proc{std::move(T), std::move(X), m};
  for (double tau : grid) {
    Matrix x = proc.X(tau);
    if (x.rows() != proc.T.dim() || x.cols() != proc.T.dim()) {
      throw PreconditionError("monitored process: monitor shape mismatch");
    }
  }
  MonitorCheck c = check_monitor(proc, grid);
  if (m >= 1 && c.idempotency > 1.0e-10) {
    std::ostringstream msg;
    msg << "monitored process: monitor is not " << m << "-idempotent ("
        << c.idempotency << ")";
    throw PreconditionError(msg.str());
  }
  if (measurements && c.measurement > 1.0e-10) {
    std::ostringstream msg;
    msg << "monitored process: not a family of measurements ("
        << c.measurement << ")";
    throw PreconditionError(msg.str());
  }
  return proc;
}

Matrix pre_evolution_product(const GeneratorFamily& fam, const Partition& xi,
                             double t, double s) {
  if (t < s) throw PreconditionError("pre_evolution_product: t < s");
  if (s < fam.lo() || t > fam.hi()) {
    throw PreconditionError("pre_evolution_product: interval outside domain");
  }
  const auto sp = ScaledPartition::make(xi, t, s);
  Matrix out = identity(fam.dim());
  for (int k = 1; k <= xi.N(); ++k) {
    out = expm(fam.at(sp.taus[k]), sp.deltas[k - 1]) * out;
  }
  return out;
}

Matrix monitoring_product(const MonitoredProcess& proc, const Partition& xi,
                          double t, double s) {
  if (t < s) throw PreconditionError("monitoring_product: t < s");
  const auto sp = ScaledPartition::make(xi, t, s);
  Matrix out = identity(proc.T.dim());
  for (int k = 1; k <= xi.N(); ++k) {
    out = proc.X(sp.taus[k]) * (evaluate(proc.T, sp.deltas[k - 1]) * out);
  }
  return out;
}

RefinementReport refinement_limit(
    const std::function<Matrix(const Partition&)>& producer,
    const std::vector<Partition>& schedule, double tol) {
  if (schedule.empty()) throw PreconditionError("refinement_limit: empty schedule");
  for (std::size_t k = 1; k < schedule.size(); ++k) {
    if (!schedule[k].contains(schedule[k - 1])) {
      throw PreconditionError("refinement_limit: schedule is not refining");
    }
  }
  RefinementReport rep;
  rep.last = producer(schedule.front());
  for (std::size_t k = 1; k < schedule.size(); ++k) {
    Matrix next = producer(schedule[k]);
    rep.differences.push_back(op_norm(next - rep.last));
    rep.last = std::move(next);
  }
  std::ostringstream msg;
  if (rep.differences.empty()) {
    msg << "schedule has a single partition; no difference to assess";
  } else if (rep.differences.back() <= tol) {
    rep.converged = true;
    msg << "converged within tol along schedule (last difference "
        << rep.differences.back() << ")";
  } else {
    msg << "not converged along schedule: last difference "
        << rep.differences.back() << " > " << tol;
  }
  rep.message = msg.str();
  return rep;
}

LawReport evolution_law_check(const TwoParameterFamily& E,
                              const std::vector<std::array<double, 3>>& triples,
                              const std::vector<double>& diag, bool pseudo) {
  LawReport rep;
  if (!pseudo) {
    for (double t : diag) {
      Matrix e = E(t, t);
      rep.diagonal = std::max(
          rep.diagonal, op_norm(e - identity(static_cast<int>(e.rows()))));
    }
  }
  for (const auto& [t, s, r] : triples) {
    if (!(t >= s && s >= r)) {
      throw PreconditionError("evolution_law_check: need t >= s >= r");
    }
    rep.cocycle = std::max(rep.cocycle, op_norm(E(t, s) * E(s, r) - E(t, r)));
  }
  return rep;
}

Matrix chernoff_Q(const std::vector<int>& perm,
                  const std::vector<ContractionSemigroup>& sgs, double tau) {
  const int m = static_cast<int>(sgs.size());
  if (m < 1 || static_cast<int>(perm.size()) != m) {
    throw PreconditionError("chernoff_Q: permutation size mismatch");
  }
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < m; ++k) {
    if (sorted[k] != k) throw PreconditionError("chernoff_Q: not a permutation");
  }
  Matrix out = identity(sgs.front().dim());
  for (int j = 0; j < m; ++j) out = evaluate(sgs[perm[j]], tau) * out;
  return out;
}

MonitoredProcess cycle_monitored_system(
    const std::vector<ContractionSemigroup>& sgs) {
  const int m = static_cast<int>(sgs.size());
  if (m < 1) throw PreconditionError("cycle_monitored_system: empty list");
  const int n = sgs.front().dim();
  std::vector<Matrix> blocks;
  for (const auto& T : sgs) {
    if (T.dim() != n) {
      throw PreconditionError("cycle_monitored_system: dimension mismatch");
    }
    blocks.push_back(static_cast<double>(m) * T.generator());
  }
  Matrix W = Matrix::Zero(m * n, m * n);
  for (int i = 0; i < m; ++i) {
    W.block(((i + 1) % m) * n, i * n, n, n) = identity(n);
  }
  ContractionSemigroup big(block_diagonal(blocks));
  return make_monitored_process(std::move(big), [W](double) { return W; }, m,
                                {0.0});
}

Matrix cycle_block_reference(const std::vector<ContractionSemigroup>& sgs,
                             const Partition& xi0, double t, double s) {
  const int m = static_cast<int>(sgs.size());
  const auto sp = ScaledPartition::make(xi0, t, s);
  std::vector<Matrix> blocks;
  for (int i = 0; i < m; ++i) {
    std::vector<int> sigma(m);
    for (int j = 0; j < m; ++j) sigma[j] = (i + j) % m;
    Matrix acc = identity(sgs.front().dim());
    for (int l = 1; l <= xi0.N(); ++l) {
      acc = chernoff_Q(sigma, sgs, sp.deltas[l - 1]) * acc;
    }
    blocks.push_back(acc);
  }
  return block_diagonal(blocks);
}

MonitoredProcess feynman_analog(const Matrix& H0, const Matrix& H1) {
  for (const Matrix* H : {&H0, &H1}) {
    if (H->rows() != H->cols() ||
        (*H - H->adjoint()).cwiseAbs().maxCoeff() > 1.0e-12) {
      throw PreconditionError("feynman_analog: Hamiltonian not Hermitian");
    }
  }
  const Complex i(0.0, 1.0);
  return cycle_monitored_system(
      {ContractionSemigroup(i * H0), ContractionSemigroup(i * H1)});
}

Matrix DiagonalBlock::pi(int k) const {
  const int g = static_cast<int>(grid.size());
  Matrix p = Matrix::Zero(n, n * g);
  p.block(0, k * n, n, n) = identity(n);
  return p;
}

int DiagonalBlock::index_of(double tau) const {
  auto it = std::lower_bound(grid.begin(), grid.end(), tau);
  if (it == grid.end()) return static_cast<int>(grid.size()) - 1;
  const int hi = static_cast<int>(it - grid.begin());
  if (hi == 0) return 0;
  const int lo = hi - 1;
  return (tau - grid[lo] <= grid[hi] - tau) ? lo : hi;
}

DiagonalBlock diagonal_block(const GeneratorFamily& fam,
                             const std::vector<double>& grid) {
  if (grid.empty()) throw PreconditionError("diagonal_block: empty grid");
  if (!std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
    throw PreconditionError("diagonal_block: grid not increasing");
  }
  for (double tau : grid) {
    if (tau < fam.lo() || tau > fam.hi()) {
      throw PreconditionError("diagonal_block: grid point outside domain");
    }
  }
  const int n = fam.dim();
  const int g = static_cast<int>(grid.size());
  std::vector<Matrix> blocks;
  for (double tau : grid) blocks.push_back(fam.at(tau));
  Matrix iota(n * g, n);
  for (int k = 0; k < g; ++k) iota.block(k * n, 0, n, n) = identity(n);
  return DiagonalBlock{grid, n, ContractionSemigroup(block_diagonal(blocks)),
                       iota};
}

PreEvolutionReduction reduce_pre_evolution(const GeneratorFamily& fam,
                                           const std::vector<double>& grid,
                                           int M) {
  DiagonalBlock block = diagonal_block(fam, grid);
  ContinuousDilation dil = continuous_dilation(block.T_omega, M);
  const int g = static_cast<int>(grid.size());
  const int n = block.n;
  Matrix r = dil.r1 * block.iota;
  std::vector<Matrix> j;
  std::vector<Matrix> P;
  for (int k = 0; k < g; ++k) {
    j.push_back(block.pi(k) * dil.r1.adjoint());
    P.push_back(r * j.back());
  }
  std::vector<Matrix> table;
  for (double tau : grid) table.push_back(fam.at(tau));
  GeneratorFamily snapped = GeneratorFamily::table(grid, table);

  ReductionDiagnostics diag;
  for (int k = 0; k < g; ++k) {
    diag.j_r = std::max(diag.j_r, op_norm(j[k] * r - identity(n)));
    for (int k2 = 0; k2 < g; ++k2) {
      diag.measurement =
          std::max(diag.measurement, op_norm(P[k2] * P[k] - P[k]));
    }
  }
  diag.isometry_deficit = op_norm(r.adjoint() * r - identity(n));

  // P U(a) P U(b) P against P U(a + b) P on a small time set.
  const double a = 0.25;
  const double b = 0.5;
  Matrix Ua = dil.propagator(a);
  Matrix Ub = dil.propagator(b);
  Matrix Uab = dil.propagator(a + b);
  for (int k = 0; k < g; ++k) {
    Matrix lhs = P[k] * Ua * P[k] * Ub * P[k];
    Matrix rhs = P[k] * Uab * P[k];
    diag.passivity = std::max(diag.passivity, op_norm(lhs - rhs));
  }

  auto grid_copy = grid;
  auto P_copy = P;
  auto monitor = [grid_copy, P_copy](double tau) {
    auto it = std::lower_bound(grid_copy.begin(), grid_copy.end(), tau);
    int hi = static_cast<int>(it - grid_copy.begin());
    int idx;
    if (it == grid_copy.end()) {
      idx = static_cast<int>(grid_copy.size()) - 1;
    } else if (hi == 0) {
      idx = 0;
    } else {
      idx = (tau - grid_copy[hi - 1] <= grid_copy[hi] - tau) ? hi - 1 : hi;
    }
    return P_copy[idx];
  };
  MonitoredProcess proc{ContractionSemigroup(dil.B), monitor, 1};

  return PreEvolutionReduction{std::move(block), std::move(dil),
                               std::move(proc),  std::move(r),
                               std::move(j),     std::move(P),
                               std::move(snapped), diag};
}

WordIdentity PreEvolutionReduction::word_identity(const Partition& xi, double t,
                                                  double s) const {
  WordIdentity out;
  Matrix lhs = pre_evolution_product(snapped, xi, t, s);
  Matrix rhs = j.front() * monitoring_product(process, xi, t, s) * r;
  out.residual = op_norm(lhs - rhs);

  const auto sp = ScaledPartition::make(xi, t, s);
  std::vector<int> indices(sp.deltas.size(), 0);
  std::vector<double> times(sp.deltas.rbegin(), sp.deltas.rend());
  out.truncation = continuous_word_residual({block.T_omega}, {dilation},
                                            indices, times);
  return out;
}

}  // namespace dilationlab
