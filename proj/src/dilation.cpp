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

#include "dilationlab/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/QR>

namespace dilationlab {

namespace {

void check_contraction(const Matrix& S, const char* op) {
  if (S.rows() != S.cols() || S.rows() == 0) {
    throw PreconditionError(std::string(op) + ": matrix must be square");
  }
  if (op_norm(S) > 1.0 + 1.0e-10) {
    throw PreconditionError(std::string(op) + ": not a contraction");
  }
}

Matrix first_columns_embedding(int total, int n) {
  Matrix r = Matrix::Zero(total, n);
  r.topRows(n) = identity(n);
  return r;
}

// Applies U^p to the columns of X.
Matrix apply_power(const Matrix& U, int p, Matrix X) {
  for (int k = 0; k < p; ++k) X = U * X;
  return X;
}

}  // namespace

Matrix compress(const Matrix& U, const Matrix& r) {
  return r.adjoint() * U * r;
}

Matrix nagy_isometry(const Matrix& S, int M) {
  check_contraction(S, "nagy_isometry");
  if (M < 2) throw PreconditionError("nagy_isometry: depth M < 2");
  const int n = static_cast<int>(S.rows());
  Matrix D = psd_sqrt(identity(n) - S.adjoint() * S);
  Matrix W = Matrix::Zero(n * M, n * M);
  W.block(0, 0, n, n) = S;
  W.block(n, 0, n, n) = D;
  for (int l = 1; l + 1 < M; ++l) {
    W.block((l + 1) * n, l * n, n, n) = identity(n);
  }
  return W;
}

TruncatedDilation nagy_unitary(const Matrix& S, int M) {
  TruncatedDilation d;
  d.W = nagy_isometry(S, M);
  d.n = static_cast<int>(S.rows());
  d.M = M;
  d.S = S;
  const int n = d.n;
  const int h = n * M;
  d.D = d.W.block(n, 0, n, n);
  d.U_hat = Matrix::Zero(2 * h, 2 * h);
  d.U_hat.topLeftCorner(h, h) = d.W;
  d.U_hat.topRightCorner(h, h) = identity(h) - d.W * d.W.adjoint();
  d.U_hat.bottomRightCorner(h, h) = d.W.adjoint();
  d.r0 = first_columns_embedding(h, n);
  d.r1 = first_columns_embedding(2 * h, n);
  return d;
}

double verify_discrete_word(const std::vector<Matrix>& family,
                            const std::vector<int>& indices,
                            const std::vector<int>& powers, int M) {
  if (indices.size() != powers.size()) {
    throw PreconditionError("verify_discrete_word: indices/powers length mismatch");
  }
  if (family.empty()) throw PreconditionError("verify_discrete_word: empty family");
  int total = 0;
  for (int p : powers) {
    if (p < 0) throw PreconditionError("verify_discrete_word: negative power");
    total += p;
  }
  if (M < 2 + total) {
    std::ostringstream msg;
    msg << "verify_discrete_word: depth " << M << " below 2 + total degree "
        << total;
    throw PreconditionError(msg.str());
  }
  for (int i : indices) {
    if (i < 0 || i >= static_cast<int>(family.size())) {
      throw std::out_of_range("verify_discrete_word: index out of range");
    }
  }
  const int n = static_cast<int>(family.front().rows());
  std::vector<TruncatedDilation> dils;
  for (const auto& S : family) dils.push_back(nagy_unitary(S, M));

  Matrix left = identity(n);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    for (int p = 0; p < powers[k]; ++p) left = left * family[indices[k]];
  }
  Matrix X = dils.front().r1;
  for (std::size_t k = indices.size(); k-- > 0;) {
    X = apply_power(dils[indices[k]].U_hat, powers[k], std::move(X));
  }
  Matrix right = dils.front().r1.adjoint() * X;
  return op_norm(left - right);
}

SpectrumTransferReport point_spectrum_transfer(const Matrix& S, int M,
                                               double tol) {
  check_contraction(S, "point_spectrum_transfer");
  TruncatedDilation d = nagy_unitary(S, M);
  SpectrumTransferReport rep;
  rep.tol = tol;
  const double scale = std::max(1.0, op_norm(S));
  // Eigenvectors come back with unit norm, so only the operator norm scales.
  Spectrum sp = point_spectrum(S, 1.0e-8 * scale);
  for (std::size_t k = 0; k < sp.eigenvalues.size(); ++k) {
    const Complex lambda = sp.eigenvalues[k];
    if (std::abs(std::abs(lambda) - 1.0) > tol) continue;
    const Vector& xi = sp.eigenvectors[k];
    Vector lifted = d.r1 * xi;
    EigenTransfer e;
    e.lambda = lambda;
    e.dilation_residual = (d.U_hat * lifted - lambda * lifted).norm();
    e.defect_residual = (d.D * xi).norm();
    const double bound = tol * scale * xi.norm();
    e.transferred = e.dilation_residual <= bound && e.defect_residual <= bound;
    rep.unimodular.push_back(e);
  }
  return rep;
}

Matrix block_assembled_inverse(const TruncatedDilation& d) {
  const int n = d.n;
  const int h = n * d.M;
  // 1 - W = Dg - L with Dg = (1 - S) on level 0 and identity below, and L the
  // level-lowering part (defect into level 1 plus the shift).
  Matrix Dg_inv = identity(h);
  Dg_inv.topLeftCorner(n, n) = solve(identity(n) - d.S, identity(n));
  Matrix L = d.W;
  L.topLeftCorner(n, n).setZero();
  // (Dg - L)^{-1} = sum_k (Dg^{-1} L)^k Dg^{-1}; Dg^{-1} L is nilpotent.
  Matrix K = Dg_inv * L;
  Matrix term = Dg_inv;
  Matrix X_inv = term;
  for (int k = 1; k < d.M; ++k) {
    term = K * term;
    X_inv += term;
  }
  Matrix P = d.W * d.W.adjoint();
  Matrix inv = Matrix::Zero(2 * h, 2 * h);
  inv.topLeftCorner(h, h) = X_inv;
  inv.topRightCorner(h, h) = X_inv * (identity(h) - P) * X_inv.adjoint();
  inv.bottomRightCorner(h, h) = X_inv.adjoint();
  return inv;
}

ContinuousDilation continuous_dilation(const ContractionSemigroup& T, int M) {
  if (M < 2) throw PreconditionError("continuous_dilation: depth M < 2");
  Matrix V = cogenerator(T);
  ContinuousDilation c;
  c.underlying = nagy_unitary(V, M);
  const int N = static_cast<int>(c.underlying.U_hat.rows());
  Matrix inv;
  try {
    inv = solve(identity(N) - c.underlying.U_hat, identity(N));
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError(
        std::string("continuous_dilation: 1 - U_hat singular (truncation "
                    "pathology): ") + e.what(),
        e.condition_estimate());
  }
  c.B = identity(N) - 2.0 * inv;
  c.r1 = c.underlying.r1;
  Matrix assembled = block_assembled_inverse(c.underlying);
  c.block_formula_residual =
      op_norm(inv - assembled) / std::max(1.0, op_norm(inv));
  if (c.block_formula_residual > 1.0e-10) {
    std::ostringstream msg;
    msg << "continuous_dilation: block assembly disagrees with direct solve ("
        << c.block_formula_residual << ")";
    throw NumericalError(msg.str());
  }
  return c;
}

double continuous_word_residual(const std::vector<ContractionSemigroup>& family,
                                const std::vector<ContinuousDilation>& dils,
                                const std::vector<int>& indices,
                                const std::vector<double>& times) {
  if (indices.size() != times.size()) {
    throw PreconditionError("continuous word: indices/times length mismatch");
  }
  for (double t : times) {
    if (t < 0.0) throw PreconditionError("continuous word: negative time");
  }
  for (int i : indices) {
    if (i < 0 || i >= static_cast<int>(family.size())) {
      throw std::out_of_range("continuous word: index out of range");
    }
  }
  const int n = family.front().dim();
  Matrix left = identity(n);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    left = left * evaluate(family[indices[k]], times[k]);
  }
  Matrix X = dils.front().r1;
  for (std::size_t k = indices.size(); k-- > 0;) {
    if (times[k] == 0.0) continue;
    X = dils[indices[k]].propagator(times[k]) * X;
  }
  return op_norm(left - dils.front().r1.adjoint() * X);
}

double verify_continuous_word(const std::vector<ContractionSemigroup>& family,
                              const std::vector<int>& indices,
                              const std::vector<double>& times, int M) {
  if (family.empty()) throw PreconditionError("verify_continuous_word: empty family");
  std::vector<ContinuousDilation> dils;
  for (const auto& T : family) dils.push_back(continuous_dilation(T, M));
  return continuous_word_residual(family, dils, indices, times);
}

PolyTransportReport poly_transport(
    const std::vector<ContractionSemigroup>& family,
    const std::vector<int>& indices, const std::vector<double>& times,
    double lambda, int n, int M) {
  if (indices.size() != times.size()) {
    throw PreconditionError("poly_transport: indices/times length mismatch");
  }
  if (family.empty()) throw PreconditionError("poly_transport: empty family");
  const int letters = static_cast<int>(indices.size());
  if (!(M > n * letters + 1)) {
    std::ostringstream msg;
    msg << "poly_transport: depth " << M << " must exceed degree*letters+1 = "
        << n * letters + 1;
    throw PreconditionError(msg.str());
  }
  for (int i : indices) {
    if (i < 0 || i >= static_cast<int>(family.size())) {
      throw std::out_of_range("poly_transport: index out of range");
    }
  }
  const YosidaConstants c = YosidaConstants::from_lambda(lambda);
  const int dim = family.front().dim();
  std::vector<Matrix> cogens;
  std::vector<TruncatedDilation> dils;
  std::vector<Matrix> resolvent_hat;  // (gamma - U_hat)^{-1}
  for (const auto& T : family) {
    cogens.push_back(cogenerator(T));
    dils.push_back(nagy_unitary(cogens.back(), M));
    const auto N = dils.back().U_hat.rows();
    resolvent_hat.push_back(solve(
        c.gamma * identity(static_cast<int>(N)) - dils.back().U_hat,
        identity(static_cast<int>(N))));
  }

  PolyTransportReport rep;
  std::vector<PolyApprox> polys;
  for (double t : times) {
    polys.push_back(poly_coeffs(t, c, n));
    rep.tail_sum += polys.back().tail_bound;
  }

  const Matrix& r1 = dils.front().r1;
  Matrix left = identity(dim);
  Matrix yleft = identity(dim);
  for (int k = 0; k < letters; ++k) {
    left = left * poly_apply(polys[k], cogens[indices[k]]);
    yleft = yleft * yosida_semigroup(family[indices[k]], c, times[k]);
  }
  Matrix X = r1;
  Matrix Y = r1;
  for (int k = letters; k-- > 0;) {
    const auto& d = dils[indices[k]];
    X = poly_apply_to(polys[k], d.U_hat, X);
    const auto N = d.U_hat.rows();
    Matrix gen = c.alpha * identity(static_cast<int>(N)) -
                 c.beta * resolvent_hat[indices[k]];
    Y = expm(gen, times[k]) * Y;
  }
  rep.residual = op_norm(left - r1.adjoint() * X);
  rep.yosida_word_residual = op_norm(yleft - r1.adjoint() * Y);
  return rep;
}

double verify_poly_transport(const std::vector<ContractionSemigroup>& family,
                             const std::vector<int>& indices,
                             const std::vector<double>& times, double lambda,
                             int n, int M) {
  return poly_transport(family, indices, times, lambda, n, M).residual;
}

double intertwine_check(const std::vector<Matrix>& V_samples, const Matrix& r,
                        const std::vector<Matrix>& U_samples) {
  if (V_samples.size() != U_samples.size()) {
    throw PreconditionError("intertwine_check: sample count mismatch");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < V_samples.size(); ++k) {
    const Matrix& V = V_samples[k];
    const int n = static_cast<int>(V.rows());
    if (op_norm(V.adjoint() * V - identity(n)) > 1.0e-10) {
      throw PreconditionError("intertwine_check: sample is not isometric");
    }
    worst = std::max(worst, op_norm(U_samples[k] * r - r * V));
  }
  return worst;
}

PairingReport weak_approx_pairing(const std::vector<WordOperators>& words,
                                  const Matrix& r1, const Vector& xi,
                                  const Vector& eta) {
  if (xi.norm() == 0.0 || eta.norm() == 0.0) {
    throw PreconditionError("weak_approx_pairing: xi and eta must be nonzero");
  }
  const int n = static_cast<int>(r1.cols());
  const int N = static_cast<int>(r1.rows());
  if (xi.size() != n || eta.size() != n || N < 2 * n) {
    throw PreconditionError("weak_approx_pairing: shape mismatch");
  }
  Matrix iota = Matrix::Zero(N, n);
  iota.bottomRows(n) = identity(n);

  // Orthonormal basis of span{xi, eta}; p is the projection onto it.
  Matrix span(n, 2);
  span.col(0) = xi;
  span.col(1) = eta;
  Eigen::ColPivHouseholderQR<Matrix> qr(span);
  qr.setThreshold(1.0e-12);
  const int rank = static_cast<int>(qr.rank());
  Matrix Qfull = qr.householderQ();
  Matrix basis = Qfull.leftCols(rank);
  Matrix p = basis * basis.adjoint();

  // w maps iota(basis) onto r1(basis) and the complements onto each other.
  auto complete = [&](const Matrix& cols) {
    Eigen::HouseholderQR<Matrix> h(cols);
    Matrix Q = h.householderQ();
    // Make the leading block agree with `cols` exactly up to phases.
    for (int k = 0; k < rank; ++k) {
      Complex inner = Q.col(k).dot(cols.col(k));
      Q.col(k) *= inner / std::abs(inner);
    }
    return Q;
  };
  Matrix X = complete(iota * basis);
  Matrix Y = complete(r1 * basis);
  Matrix w = Y * X.adjoint();

  PairingReport rep;
  rep.unitarity_residual = op_norm(w.adjoint() * w - identity(N));
  rep.completion_residual = op_norm(w * iota * p - r1 * p);
  Vector a = w * iota * (p * xi);
  Vector b = w * iota * (p * eta);
  for (const auto& word : words) {
    Complex base = eta.dot(word.T * xi);
    Complex lifted = b.dot(word.U * a);
    rep.residual = std::max(rep.residual, std::abs(base - lifted));
  }
  return rep;
}

}  // namespace dilationlab
