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

#include "dilationlab/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

namespace dilationlab {

ContractionSemigroup::ContractionSemigroup(Matrix A, double tol)
    : A_(std::move(A)) {
  if (A_.rows() != A_.cols() || A_.rows() == 0) {
    throw PreconditionError("ContractionSemigroup: generator must be square");
  }
  if (!A_.allFinite()) {
    throw PreconditionError("ContractionSemigroup: non-finite generator");
  }
  dissipativity_ = hermitian_part_max_eigenvalue(A_);
  if (dissipativity_ > tol) {
    std::ostringstream msg;
    msg << "ContractionSemigroup: generator not dissipative (max eigenvalue "
           "of Hermitian part "
        << dissipativity_ << ")";
    throw PreconditionError(msg.str());
  }
}

bool ContractionSemigroup::is_skew(double tol) const {
  return (A_ + A_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Matrix evaluate(const ContractionSemigroup& T, double t) {
  if (t < 0.0) throw PreconditionError("evaluate: negative time");
  return expm(T.generator(), t);
}

double contractivity_excess(const ContractionSemigroup& T,
                            const std::vector<double>& t_grid) {
  double worst = -1.0;
  for (double t : t_grid) worst = std::max(worst, op_norm(evaluate(T, t)) - 1.0);
  return worst;
}

YosidaConstants YosidaConstants::from_lambda(double lambda) {
  if (!(lambda > 1.0)) throw PreconditionError("Yosida constants: lambda <= 1");
  YosidaConstants c;
  c.lambda = lambda;
  c.gamma = (lambda + 1.0) / (lambda - 1.0);
  c.alpha = lambda / (lambda - 1.0);
  c.beta = 2.0 * c.alpha * c.alpha;
  return c;
}

Matrix cogenerator(const ContractionSemigroup& T) {
  const Matrix& A = T.generator();
  const int n = T.dim();
  Matrix I = identity(n);
  Matrix V1 = (A + I) * solve(A - I, I);
  Matrix V2 = I - 2.0 * solve(I - A, I);
  double scale = 1.0 + op_norm(A);
  double gap = op_norm(V1 - V2);
  if (gap > 1.0e-10 * scale) {
    std::ostringstream msg;
    msg << "cogenerator: closed forms disagree by " << gap;
    throw NumericalError(msg.str());
  }
  if (op_norm(V2) > 1.0 + 1.0e-10) {
    throw NumericalError("cogenerator: result is not a contraction");
  }
  return V2;
}

Matrix generator_from_cogenerator(const Matrix& V) {
  const int n = static_cast<int>(V.rows());
  Matrix I = identity(n);
  try {
    return I - 2.0 * solve(I - V, I);
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError("co-generator has eigenvalue 1",
                              e.condition_estimate());
  }
}

Matrix yosida_generator(const ContractionSemigroup& T,
                        const YosidaConstants& c) {
  const Matrix& A = T.generator();
  const int n = T.dim();
  Matrix I = identity(n);
  const double lam = c.lambda;
  Matrix first = lam * lam * solve(lam * I - A, I) - lam * I;
  Matrix V = cogenerator(T);
  Matrix second = c.alpha * I - c.beta * solve(c.gamma * I - V, I);
  double gap = op_norm(first - second);
  if (gap > 1.0e-10 * std::max(1.0, op_norm(first))) {
    std::ostringstream msg;
    msg << "yosida_generator: resolvent and co-generator forms disagree by "
        << gap;
    throw NumericalError(msg.str());
  }
  if (hermitian_part_max_eigenvalue(first) > 1.0e-8) {
    throw NumericalError("yosida_generator: approximant not dissipative");
  }
  return first;
}

Matrix yosida_semigroup(const ContractionSemigroup& T,
                        const YosidaConstants& c, double t) {
  if (t < 0.0) throw PreconditionError("yosida_semigroup: negative time");
  return expm(yosida_generator(T, c), t);
}

double poly_tail_bound(double t, const YosidaConstants& c, int n) {
  if (n < 0) throw PreconditionError("poly_tail_bound: negative degree");
  if (t == 0.0) return 0.0;
  const double r = 0.5 * (1.0 + c.gamma);
  const double log_m = t * (c.alpha + c.beta / (c.gamma - r));
  return std::exp(log_m - (n + 1) * std::log(r)) / (1.0 - 1.0 / r);
}

PolyApprox poly_coeffs(double t, const YosidaConstants& c, int n) {
  if (n < 0) throw PreconditionError("poly_coeffs: negative degree");
  if (t < 0.0) throw PreconditionError("poly_coeffs: negative time");
  PolyApprox p;
  p.t = t;
  p.lambda = c.lambda;
  p.degree = n;
  // g(z) = t(alpha - beta/(gamma - z)) = sum_j g_j z^j; f = exp(g) obeys
  // f' = g' f, which gives the coefficient recurrence below.
  std::vector<double> g(n + 1);
  g[0] = t * (c.alpha - c.beta / c.gamma);
  double inv_gamma_pow = 1.0 / c.gamma;
  for (int j = 1; j <= n; ++j) {
    inv_gamma_pow /= c.gamma;
    g[j] = -t * c.beta * inv_gamma_pow;
  }
  p.coeffs.assign(n + 1, 0.0);
  p.coeffs[0] = std::exp(g[0]);
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += (j + 1) * g[j + 1] * p.coeffs[k - j];
    p.coeffs[k + 1] = acc / (k + 1);
  }
  p.tail_bound = poly_tail_bound(t, c, n);
  return p;
}

Matrix poly_apply_to(const PolyApprox& p, const Matrix& V, const Matrix& X) {
  if (V.rows() != V.cols() || V.cols() != X.rows()) {
    throw PreconditionError("poly_apply: shape mismatch");
  }
  Matrix Y = p.coeffs.back() * X;
  for (int k = p.degree - 1; k >= 0; --k) {
    Y = V * Y;
    Y += p.coeffs[k] * X;
  }
  return Y;
}

Matrix poly_apply(const PolyApprox& p, const Matrix& V) {
  return poly_apply_to(p, V, identity(static_cast<int>(V.rows())));
}

namespace {

using Gauss = boost::math::quadrature::gauss<double, 20>;

// Composite Gauss-Legendre over [0, t_max] with `panels` equal panels.
Matrix laplace_panels(const ContractionSemigroup& T, Complex lambda,
                      double t_max, int panels) {
  const int n = T.dim();
  const double h = t_max / panels;
  const auto& x = Gauss::abscissa();
  const auto& w = Gauss::weights();
  // Node offsets inside one panel, shared by every panel.
  std::vector<double> offsets;
  std::vector<double> weights;
  for (std::size_t i = 0; i < x.size(); ++i) {
    offsets.push_back(0.5 * h * (1.0 - x[i]));
    weights.push_back(0.5 * h * w[i]);
    if (x[i] != 0.0) {
      offsets.push_back(0.5 * h * (1.0 + x[i]));
      weights.push_back(0.5 * h * w[i]);
    }
  }
  std::vector<Matrix> local;
  local.reserve(offsets.size());
  for (double o : offsets) local.push_back(evaluate(T, o));
  Matrix step = evaluate(T, h);
  Matrix start = identity(n);
  Matrix sum = Matrix::Zero(n, n);
  for (int k = 0; k < panels; ++k) {
    const double a = k * h;
    Matrix panel = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      panel += (weights[i] * std::exp(-lambda * (a + offsets[i]))) * local[i];
    }
    sum += panel * start;
    start = step * start;
  }
  return sum;
}

}  // namespace

Matrix resolvent_via_laplace(const ContractionSemigroup& T, Complex lambda,
                             const QuadratureSpec& quad) {
  const double re = lambda.real();
  if (!(re > 0.0)) throw PreconditionError("resolvent_via_laplace: Re lambda <= 0");
  if (!(quad.tol > 0.0) || !(quad.panel_width > 0.0)) {
    throw PreconditionError("resolvent_via_laplace: bad quadrature spec");
  }
  // ||T(t)|| <= 1, so the tail past t_max is at most exp(-re t_max)/re.
  const double t_max = std::max(0.0, std::log(2.0 / (quad.tol * re)) / re);
  if (t_max == 0.0) return Matrix::Zero(T.dim(), T.dim());
  int panels = std::max(1, static_cast<int>(std::ceil(t_max / quad.panel_width)));
  Matrix prev = laplace_panels(T, lambda, t_max, panels);
  double achieved = 0.0;
  while (2 * panels <= quad.max_panels) {
    panels *= 2;
    Matrix next = laplace_panels(T, lambda, t_max, panels);
    achieved = op_norm(next - prev);
    if (achieved <= 0.5 * quad.tol) return next;
    prev = std::move(next);
  }
  std::ostringstream msg;
  msg << "resolvent_via_laplace: quadrature budget exhausted, achieved "
         "panel-halving difference "
      << achieved;
  throw NumericalError(msg.str());
}

ContinuityReport continuity_moduli(const GeneratorMap& family,
                                   const std::vector<double>& grid,
                                   const std::vector<double>& t_grid,
                                   const std::vector<Vector>& probes) {
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw PreconditionError("continuity_moduli: grid not sorted");
  }
  for (const auto& xi : probes) {
    if (xi.norm() == 0.0) throw PreconditionError("continuity_moduli: zero probe");
  }
  ContinuityReport rep;
  rep.grid = grid;
  std::vector<ContractionSemigroup> sgs;
  std::vector<Matrix> cogens;
  for (double w : grid) {
    sgs.emplace_back(family(w));
    cogens.push_back(cogenerator(sgs.back()));
  }
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    double ksot = 0.0;
    for (double t : t_grid) {
      Matrix diff = evaluate(sgs[k], t) - evaluate(sgs[k + 1], t);
      for (const auto& xi : probes) ksot = std::max(ksot, (diff * xi).norm());
    }
    double sot = 0.0;
    Matrix vdiff = cogens[k] - cogens[k + 1];
    for (const auto& xi : probes) sot = std::max(sot, (vdiff * xi).norm());
    rep.ksot.push_back(ksot);
    rep.sot.push_back(sot);
  }
  return rep;
}

}  // namespace dilationlab
