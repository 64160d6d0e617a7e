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

#include "dilationlab/matrixcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace dilationlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// LU pivots this small relative to ||A|| mean the solve carries no digits.
constexpr double kSingularRcond = 64.0 * kEps;

Matrix ginibre(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix G(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) {
      double re = normal(gen);
      double im = normal(gen);
      G(i, j) = Complex(re, im);
    }
  }
  return G;
}

void require_square(const Matrix& A, const char* op) {
  if (A.rows() != A.cols()) {
    throw PreconditionError(std::string(op) + ": matrix is not square");
  }
}

}  // namespace

Matrix identity(int n) { return Matrix::Identity(n, n); }

Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return K;
}

Matrix matrix_unit(int n, int i, int j) {
  Matrix E = Matrix::Zero(n, n);
  E(i, j) = 1.0;
  return E;
}

bool all_finite(const Matrix& A) { return A.allFinite(); }

double op_norm(const Matrix& A) {
  if (A.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(A);
  return svd.singularValues()(0);
}

double hermitian_part_max_eigenvalue(const Matrix& A) {
  require_square(A, "hermitian_part_max_eigenvalue");
  Matrix H = 0.5 * (A + A.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

Matrix expm(const Matrix& A, double t, double cap) {
  require_square(A, "expm");
  if (!A.allFinite() || !std::isfinite(t)) {
    throw NumericalError("expm: non-finite input");
  }
  if (t == 0.0) return identity(static_cast<int>(A.rows()));
  Matrix tA = t * A;
  double norm1 = tA.cwiseAbs().colwise().sum().maxCoeff();
  if (norm1 > cap) {
    std::ostringstream msg;
    msg << "expm: ||tA||_1 = " << norm1 << " exceeds cap " << cap;
    throw OverflowError(msg.str());
  }
  Matrix E = tA.exp();
  if (!E.allFinite()) throw OverflowError("expm: result not finite");
  return E;
}

Matrix psd_sqrt(const Matrix& P, double tol) {
  require_square(P, "psd_sqrt");
  double scale = 1.0 + P.cwiseAbs().maxCoeff();
  if ((P - P.adjoint()).cwiseAbs().maxCoeff() > tol * scale) {
    throw NotPsdError("not PSD: matrix is not Hermitian");
  }
  Matrix H = 0.5 * (P + P.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  const auto& mu = es.eigenvalues();
  if (mu.size() > 0 && mu.minCoeff() < -tol) {
    std::ostringstream msg;
    msg << "not PSD: eigenvalue " << mu.minCoeff();
    throw NotPsdError(msg.str());
  }
  double dust = 64.0 * kEps * scale;
  Eigen::VectorXd root(mu.size());
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    root(k) = mu(k) <= dust ? 0.0 : std::sqrt(mu(k));
  }
  const Matrix& Q = es.eigenvectors();
  Matrix R = Q * root.cast<Complex>().asDiagonal() * Q.adjoint();
  return 0.5 * (R + R.adjoint());
}

double rcond_estimate(const Matrix& A) {
  require_square(A, "rcond_estimate");
  if (A.size() == 0) return 1.0;
  Eigen::PartialPivLU<Matrix> lu(A);
  return lu.rcond();
}

Matrix solve(const Matrix& A, const Matrix& B) {
  require_square(A, "solve");
  if (A.rows() != B.rows()) throw PreconditionError("solve: shape mismatch");
  Eigen::PartialPivLU<Matrix> lu(A);
  double rc = lu.rcond();
  if (!(rc > kSingularRcond)) {
    double cond = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
    std::ostringstream msg;
    msg << "solve: matrix singular to working precision (condition estimate "
        << cond << ")";
    throw SingularMatrixError(msg.str(), cond);
  }
  Matrix X = lu.solve(B);
  if (!X.allFinite()) {
    throw SingularMatrixError("solve: non-finite solution", 1.0 / rc);
  }
  return X;
}

Spectrum point_spectrum(const Matrix& A, double tol) {
  require_square(A, "point_spectrum");
  Spectrum out;
  out.tolerance = tol;
  if (A.size() == 0) return out;
  Eigen::ComplexEigenSolver<Matrix> ces(A);
  if (ces.info() != Eigen::Success) {
    throw NumericalError("point_spectrum: eigen solver did not converge");
  }
  const Eigen::Index n = A.rows();
  std::vector<Eigen::Index> order(n);
  for (Eigen::Index k = 0; k < n; ++k) order[k] = k;
  const auto& ev = ces.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    if (ev(a).real() != ev(b).real()) return ev(a).real() < ev(b).real();
    return ev(a).imag() < ev(b).imag();
  });
  for (Eigen::Index k : order) {
    Vector x = ces.eigenvectors().col(k);
    x.normalize();
    double res = (A * x - ev(k) * x).norm();
    if (res > tol) {
      std::ostringstream msg;
      msg << "point_spectrum: eigenpair residual " << res
          << " exceeds tolerance " << tol;
      throw NumericalError(msg.str());
    }
    out.eigenvalues.push_back(ev(k));
    out.eigenvectors.push_back(x);
    out.residuals.push_back(res);
  }
  return out;
}

Matrix random_contraction(int dim, std::uint64_t seed, double margin) {
  if (dim < 1) throw PreconditionError("random_contraction: dim < 1");
  if (!(margin >= 0.0 && margin < 1.0)) {
    throw PreconditionError("random_contraction: margin outside [0,1)");
  }
  std::mt19937_64 gen(seed);
  Matrix G = ginibre(dim, gen) / std::sqrt(static_cast<double>(dim));
  Eigen::JacobiSVD<Matrix> svd(G, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // Rebuilding from the factors costs a few ulps, so clamp slightly inside.
  double cap = (1.0 - margin) * (1.0 - 1.0e-12);
  Eigen::VectorXd s = svd.singularValues();
  for (Eigen::Index k = 0; k < s.size(); ++k) s(k) = std::min(s(k), cap);
  return svd.matrixU() * s.cast<Complex>().asDiagonal() *
         svd.matrixV().adjoint();
}

Matrix random_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw PreconditionError("random_unitary: dim < 1");
  std::mt19937_64 gen(seed);
  Matrix G = ginibre(dim, gen);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    double mag = std::abs(R(k, k));
    Complex phase = mag > 0.0 ? R(k, k) / mag : Complex(1.0);
    Q.col(k) *= phase;
  }
  return Q;
}

Matrix random_hermitian(int dim, std::uint64_t seed) {
  if (dim < 1) throw PreconditionError("random_hermitian: dim < 1");
  std::mt19937_64 gen(seed);
  Matrix G = ginibre(dim, gen);
  return 0.5 * (G + G.adjoint());
}

Matrix random_dissipative(int dim, std::uint64_t seed, double norm,
                          double margin) {
  if (dim < 1) throw PreconditionError("random_dissipative: dim < 1");
  if (!(margin >= 0.0 && margin < norm)) {
    throw PreconditionError("random_dissipative: need 0 <= margin < norm");
  }
  std::mt19937_64 gen(seed);
  Matrix G = ginibre(dim, gen);
  G -= hermitian_part_max_eigenvalue(G) * identity(dim);
  double g = op_norm(G);
  if (g == 0.0) return -margin * identity(dim);
  return (norm - margin) / g * G - margin * identity(dim);
}

Matrix unitary_with_spectrum(const std::vector<double>& phases,
                             std::uint64_t seed) {
  int dim = static_cast<int>(phases.size());
  Matrix Q = random_unitary(dim, seed);
  Vector d(dim);
  for (int k = 0; k < dim; ++k) d(k) = std::polar(1.0, phases[k]);
  return Q * d.asDiagonal() * Q.adjoint();
}

}  // namespace dilationlab
