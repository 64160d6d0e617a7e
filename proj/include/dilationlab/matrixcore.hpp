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

#ifndef DILATIONLAB_MATRIXCORE_HPP_
#define DILATIONLAB_MATRIXCORE_HPP_

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dilationlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Raised when a computation cannot produce a trustworthy finite result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OverflowError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularMatrixError : public NumericalError {
 public:
  SingularMatrixError(const std::string& what, double condition_estimate)
      : NumericalError(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

class NotPsdError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Caller supplied arguments outside an operation's domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kExpmNormCap = 1.0e4;
inline constexpr double kPsdTol = 1.0e-10;

struct Spectrum {
  std::vector<Complex> eigenvalues;
  std::vector<Vector> eigenvectors;  // unit norm
  std::vector<double> residuals;     // ||A x - lambda x||
  double tolerance = 0.0;
};

// e^{tA}. Throws OverflowError when ||tA||_1 exceeds cap or the result is
// not finite.
Matrix expm(const Matrix& A, double t, double cap = kExpmNormCap);

// Hermitian square root of a positive semidefinite matrix. Eigenvalues in
// [-tol, dust] are treated as zero, dust being a few ulps of ||P||.
Matrix psd_sqrt(const Matrix& P, double tol = kPsdTol);

double op_norm(const Matrix& A);

// Reciprocal condition estimate from the LU factorisation (1-norm).
double rcond_estimate(const Matrix& A);

// Solves AX = B. Throws SingularMatrixError carrying 1/rcond when A is
// singular to working precision.
Matrix solve(const Matrix& A, const Matrix& B);

Spectrum point_spectrum(const Matrix& A, double tol);

Matrix random_contraction(int dim, std::uint64_t seed, double margin);
Matrix random_unitary(int dim, std::uint64_t seed);
Matrix random_hermitian(int dim, std::uint64_t seed);
// Dissipative matrix with operator norm at most `norm` and Hermitian part
// <= -margin. Requires margin < norm.
Matrix random_dissipative(int dim, std::uint64_t seed, double norm,
                          double margin);
Matrix unitary_with_spectrum(const std::vector<double>& phases,
                             std::uint64_t seed);

Matrix identity(int n);
// Kronecker product; kron(E, X) places blocks of X according to E.
Matrix kron(const Matrix& A, const Matrix& B);
Matrix matrix_unit(int n, int i, int j);
bool all_finite(const Matrix& A);
double hermitian_part_max_eigenvalue(const Matrix& A);

}  // namespace dilationlab

#endif  // DILATIONLAB_MATRIXCORE_HPP_
