#include <gtest/gtest.h>

#include <cmath>

#include "dilationlab/semigroup.hpp"
#include "oracles.hpp"

namespace {

using namespace dilationlab;

Matrix scalar(Complex z) { return Matrix::Constant(1, 1, z); }

TEST(Semigroup, RejectsNonDissipative) {
  EXPECT_THROW(ContractionSemigroup(identity(2)), PreconditionError);
  EXPECT_THROW(ContractionSemigroup(Matrix::Zero(2, 3)), PreconditionError);
}

TEST(Semigroup, Evaluate) {
  EXPECT_EQ(evaluate(ContractionSemigroup(Matrix::Zero(2, 2)), 5.0), identity(2));
  Matrix E = evaluate(ContractionSemigroup(-identity(2)), 1.0);
  EXPECT_LE(oracle::max_abs(E - std::exp(-1.0) * identity(2)), 1e-15);
  EXPECT_THROW(evaluate(ContractionSemigroup(-identity(2)), -1.0), PreconditionError);
}

TEST(Semigroup, LawAndContractivity) {
  for (unsigned seed = 1; seed <= 10; ++seed) {
    ContractionSemigroup T(oracle::random_dissipative(3, seed, 2.0));
    Matrix lhs = evaluate(T, 0.3) * evaluate(T, 0.9);
    EXPECT_LE(oracle::max_abs(lhs - evaluate(T, 1.2)), 1e-10);
    EXPECT_LE(contractivity_excess(T, {0.0, 0.5, 1.0, 2.0, 5.0}), 1e-10);
  }
}

TEST(Semigroup, SkewDetection) {
  Matrix H = random_hermitian(3, 2);
  EXPECT_TRUE(ContractionSemigroup(Complex(0, 1) * H).is_skew());
  EXPECT_FALSE(ContractionSemigroup(-identity(3)).is_skew());
}

TEST(Cogenerator, HandValues) {
  EXPECT_LE(oracle::max_abs(cogenerator(ContractionSemigroup(Matrix::Zero(2, 2))) + identity(2)), 1e-15);
  EXPECT_LE(oracle::max_abs(cogenerator(ContractionSemigroup(-identity(2)))), 1e-15);
  // (i + 1) / (i - 1) = -i
  Matrix V = cogenerator(ContractionSemigroup(Complex(0, 1) * identity(2)));
  EXPECT_LE(oracle::max_abs(V - Complex(0, -1) * identity(2)), 1e-15);
}

TEST(Cogenerator, Inverse) {
  EXPECT_LE(oracle::max_abs(generator_from_cogenerator(-identity(2))), 1e-15);
  EXPECT_LE(oracle::max_abs(generator_from_cogenerator(Matrix::Zero(2, 2)) + identity(2)), 1e-15);
  EXPECT_THROW(generator_from_cogenerator(identity(2)), SingularMatrixError);
}

TEST(Cogenerator, RoundTrip) {
  for (unsigned seed = 1; seed <= 20; ++seed) {
    Matrix A = oracle::random_dissipative(3, seed, 2.0);
    Matrix V = cogenerator(ContractionSemigroup(A));
    EXPECT_LE(op_norm(V), 1.0 + 1e-12);
    EXPECT_LE(op_norm(A - generator_from_cogenerator(V)), 1e-10);
  }
}

TEST(Yosida, Constants) {
  auto c = YosidaConstants::from_lambda(2.0);
  EXPECT_DOUBLE_EQ(c.gamma, 3.0);
  EXPECT_DOUBLE_EQ(c.alpha, 2.0);
  EXPECT_DOUBLE_EQ(c.beta, 8.0);
}

TEST(Yosida, MinusIdentityAtLambdaTwo) {
  ContractionSemigroup T(-identity(2));
  auto c = YosidaConstants::from_lambda(2.0);
  EXPECT_LE(oracle::max_abs(yosida_generator(T, c) + (2.0 / 3.0) * identity(2)), 1e-14);
  EXPECT_LE(oracle::max_abs(yosida_semigroup(T, c, 1.0) -
                            std::exp(-2.0 / 3.0) * identity(2)),
            1e-14);
  EXPECT_EQ(yosida_semigroup(T, c, 0.0), identity(2));
}

TEST(Yosida, ZeroGenerator) {
  ContractionSemigroup T(Matrix::Zero(2, 2));
  for (double lambda : {2.0, 10.0, 1e3}) {
    EXPECT_LE(oracle::max_abs(yosida_generator(T, YosidaConstants::from_lambda(lambda))), 1e-12);
  }
}

TEST(Yosida, NeumannBound) {
  for (unsigned seed = 1; seed <= 10; ++seed) {
    Matrix A = oracle::random_dissipative(3, seed, 1.5);
    const double lambda = 1e3;
    Matrix Al = yosida_generator(ContractionSemigroup(A), YosidaConstants::from_lambda(lambda));
    const double a = op_norm(A);
    EXPECT_LE(op_norm(Al - A), 10.0 * a * a / lambda);
  }
  Complex a(-0.3, 1.1);
  Matrix Al = yosida_generator(ContractionSemigroup(scalar(a)), YosidaConstants::from_lambda(50.0));
  EXPECT_LE(std::abs(Al(0, 0) - 50.0 * a / (50.0 - a)), 1e-12);
}

TEST(Yosida, SupErrorDecreases) {
  ContractionSemigroup T(oracle::random_dissipative(3, 7, 2.0));
  double previous = INFINITY;
  for (double lambda : {10.0, 100.0, 1000.0}) {
    auto c = YosidaConstants::from_lambda(lambda);
    double sup = 0.0;
    for (int k = 0; k <= 40; ++k) {
      double t = 0.05 * k;
      sup = std::max(sup, op_norm(yosida_semigroup(T, c, t) - evaluate(T, t)));
    }
    EXPECT_LT(sup, previous);
    previous = sup;
  }
}

TEST(PolyCoeffs, TrivialAndConstantTerm) {
  auto c = YosidaConstants::from_lambda(2.0);
  auto p0 = poly_coeffs(0.0, c, 5);
  EXPECT_EQ(p0.coeffs[0], 1.0);
  for (int k = 1; k <= 5; ++k) EXPECT_EQ(p0.coeffs[k], 0.0);
  EXPECT_EQ(p0.tail_bound, 0.0);
  for (double t : {0.3, 1.0, 2.5}) {
    EXPECT_NEAR(poly_coeffs(t, c, 3).coeffs[0], std::exp(-2.0 * t / 3.0), 1e-15);
  }
}

TEST(PolyCoeffs, MatchesScalarFunction) {
  auto c = YosidaConstants::from_lambda(2.0);
  auto p = poly_coeffs(1.0, c, 20);
  double sum = 0.0;
  for (int k = 20; k >= 0; --k) sum = sum * 0.5 + p.coeffs[k];
  EXPECT_NEAR(sum, oracle::yosida_scalar(1.0, 2.0, 0.5).real(), 1e-8);
  // The tail bound covers the whole unit circle.
  for (int k = 0; k < 16; ++k) {
    Complex z = std::polar(1.0, 0.4 * k);
    Complex s = 0.0;
    for (int j = 20; j >= 0; --j) s = s * z + p.coeffs[j];
    EXPECT_LE(std::abs(s - oracle::yosida_scalar(1.0, 2.0, z)), p.tail_bound);
  }
}

TEST(PolyApply, Basics) {
  auto c = YosidaConstants::from_lambda(2.0);
  auto p = poly_coeffs(1.0, c, 0);
  Matrix V = random_contraction(2, 5, 0.1);
  EXPECT_LE(oracle::max_abs(poly_apply(p, V) - p.coeffs[0] * identity(2)), 1e-15);
  auto q = poly_coeffs(1.0, c, 10);
  EXPECT_LE(oracle::max_abs(poly_apply(q, Matrix::Zero(2, 2)) - q.coeffs[0] * identity(2)), 1e-15);
}

TEST(PolyApply, WithinTailOfYosidaSemigroup) {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    ContractionSemigroup T(oracle::random_dissipative(2, seed, 1.0));
    auto c = YosidaConstants::from_lambda(2.0);
    auto p = poly_coeffs(1.0, c, 40);
    Matrix V = cogenerator(T);
    EXPECT_LE(op_norm(poly_apply(p, V) - yosida_semigroup(T, c, 1.0)), p.tail_bound);
    EXPECT_LE(p.tail_bound, poly_tail_bound(1.0, c, 40) * (1 + 1e-12));
  }
}

TEST(Laplace, ScalarCases) {
  Matrix R = resolvent_via_laplace(ContractionSemigroup(-identity(2)), 1.0);
  EXPECT_LE(oracle::max_abs(R - 0.5 * identity(2)), 1e-9);
  R = resolvent_via_laplace(ContractionSemigroup(Matrix::Zero(2, 2)), 2.0);
  EXPECT_LE(oracle::max_abs(R - 0.5 * identity(2)), 1e-9);
}

TEST(Laplace, MatchesDirectSolve) {
  for (unsigned seed = 1; seed <= 3; ++seed) {
    Matrix A = oracle::random_dissipative(3, seed, 1.0);
    Matrix R = resolvent_via_laplace(ContractionSemigroup(A), 1.0);
    Matrix direct = (identity(3) - A).inverse();
    EXPECT_LE(op_norm(R - direct), 1e-8);
  }
}

TEST(Continuity, ConstantAffineAndJump) {
  std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> ts{0.0, 0.5, 1.0};
  std::vector<Vector> probes{Vector::Unit(2, 0), Vector::Unit(2, 1)};
  Matrix A0 = oracle::random_dissipative(2, 3, 1.0) - 0.5 * identity(2);
  auto constant = continuity_moduli([&](double) { return A0; }, grid, ts, probes);
  for (double v : constant.ksot) EXPECT_EQ(v, 0.0);
  for (double v : constant.sot) EXPECT_EQ(v, 0.0);

  Matrix A1 = 0.4 * oracle::random_matrix(2, 2, 8) / oracle::frob(oracle::random_matrix(2, 2, 8));
  auto affine = continuity_moduli([&](double w) { return Matrix(A0 + w * A1); }, grid, ts, probes);
  // ||T_w(t) - T_w'(t)|| <= t ||A1|| |w - w'| for contraction semigroups.
  for (double v : affine.ksot) EXPECT_LE(v, 1.0 * op_norm(A1) * 0.25 + 1e-12);
  for (double v : affine.sot) EXPECT_GT(v, 0.0);

  Matrix B = -identity(2);
  auto jump = continuity_moduli([&](double w) { return w < 0.5 ? A0 : B; }, grid, ts, probes);
  EXPECT_GT(jump.ksot[1], 0.1);
  EXPECT_GT(jump.sot[1], 0.1);
}

}  // namespace
