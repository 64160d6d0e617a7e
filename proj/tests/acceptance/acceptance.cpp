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

// Acceptance suite. `acceptance` runs every criterion, `acceptance
// --criterion N` runs one. Each prints a single [PASS]/[FAIL] line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dilationlab/dilation.hpp"
#include "dilationlab/evolution.hpp"
#include "dilationlab/freeword.hpp"
#include "dilationlab/partition.hpp"
#include "dilationlab/semigroup.hpp"
#include "oracles.hpp"

namespace {

using namespace dilationlab;
using Clock = std::chrono::steady_clock;

// Pinned tolerances.
constexpr double kDiscreteTol = 1e-10;
constexpr double kDiscreteSeconds = 30.0;
constexpr double kPolyTol = 1e-9;
constexpr double kPolySlack = 1e-9;
constexpr double kContinuousTol = 1e-5;
constexpr double kContinuousSeconds = 120.0;
constexpr double kCogenTol = 1e-10;
constexpr double kYosidaTol = 1e-3;
constexpr double kLaplaceTol = 1e-8;
constexpr double kSpectrumTol = 1e-10;
constexpr double kWordTol = 1e-12;
constexpr double kWordSeconds = 10.0;
constexpr double kConstantFamilyTol = 1e-10;
constexpr double kCommutingTol = 1e-12;
constexpr double kSplittingTol = 1e-4;
constexpr double kPassiveTol = 1e-12;
constexpr double kCocycleTol = 1e-8;
constexpr double kMeasurementTol = 1e-10;
constexpr double kPairingTol = 1e-10;
// Two rounding-level quantities are compared with this much slack.
constexpr double kRoundingFloor = 1e-12;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", x);
  return buf;
}

// --- 1 ---------------------------------------------------------------------

Outcome discrete_exactness() {
  const auto start = Clock::now();
  std::mt19937_64 gen(1001);
  std::uniform_int_distribution<int> dim(1, 4), members(1, 4), length(1, 4), power(0, 3);
  double worst = 0.0;
  int cases = 0;
  for (; cases < 240; ++cases) {
    const int n = dim(gen);
    const int m = members(gen);
    std::vector<Matrix> fam;
    for (int k = 0; k < m; ++k) fam.push_back(random_contraction(n, gen(), 0.0));
    std::uniform_int_distribution<int> index(0, m - 1);
    std::vector<int> idx, pw;
    int degree = 0;
    const int L = length(gen);
    for (int k = 0; k < L; ++k) {
      idx.push_back(index(gen));
      pw.push_back(power(gen));
      degree += pw.back();
    }
    worst = std::max(worst, verify_discrete_word(fam, idx, pw, degree + 2));
  }
  const double secs = seconds_since(start);
  return {worst <= kDiscreteTol && secs <= kDiscreteSeconds,
          std::to_string(cases) + " cases, max residual " + sci(worst) + " (tol " +
              sci(kDiscreteTol) + "), " + sci(secs) + " s"};
}

// --- 2 ---------------------------------------------------------------------

Outcome poly_exactness() {
  std::mt19937_64 gen(2002);
  std::uniform_int_distribution<int> dim(1, 2), members(1, 3), length(1, 3);
  std::uniform_int_distribution<int> tick(0, 32);
  const int degree = 24;
  const double lambda = 2.0;
  double worst = 0.0, worst_gap = -INFINITY;
  int cases = 0, bound_failures = 0;
  for (; cases < 100; ++cases) {
    const int n = dim(gen);
    const int m = members(gen);
    std::vector<ContractionSemigroup> fam;
    for (int k = 0; k < m; ++k) fam.emplace_back(random_dissipative(n, gen(), 1.0, 0.05));
    std::uniform_int_distribution<int> index(0, m - 1);
    std::vector<int> idx;
    std::vector<double> times;
    const int L = length(gen);
    for (int k = 0; k < L; ++k) {
      idx.push_back(index(gen));
      times.push_back(tick(gen) / 64.0);  // t <= 1/2
    }
    auto rep = poly_transport(fam, idx, times, lambda, degree, degree * L + 2);
    worst = std::max(worst, rep.residual);
    const double gap = rep.yosida_word_residual - (2.0 * rep.tail_sum + kPolySlack);
    worst_gap = std::max(worst_gap, gap);
    if (gap > 0.0) ++bound_failures;
  }
  return {worst <= kPolyTol && bound_failures == 0,
          std::to_string(cases) + " cases, max polynomial residual " + sci(worst) +
              " (tol " + sci(kPolyTol) + "), tail-bound violations " +
              std::to_string(bound_failures)};
}

// --- 3 ---------------------------------------------------------------------

Outcome continuous_convergence() {
  const auto start = Clock::now();
  std::mt19937_64 gen(3003);
  std::uniform_int_distribution<int> length(1, 4), tick(0, 64);
  const std::vector<int> depths{8, 16, 24};
  double worst24 = 0.0;
  int cases = 0, increases = 0;
  for (int f = 0; f < 5; ++f) {
    std::vector<ContractionSemigroup> fam{
        ContractionSemigroup(random_dissipative(2, gen(), 1.5, 0.0)),
        ContractionSemigroup(random_dissipative(2, gen(), 1.5, 0.0))};
    std::vector<std::vector<ContinuousDilation>> dils;
    for (int M : depths) {
      dils.push_back({continuous_dilation(fam[0], M), continuous_dilation(fam[1], M)});
    }
    std::uniform_int_distribution<int> index(0, 1);
    for (int w = 0; w < 12; ++w, ++cases) {
      std::vector<int> idx;
      std::vector<double> times;
      const int L = length(gen);
      for (int k = 0; k < L; ++k) {
        idx.push_back(index(gen));
        times.push_back(tick(gen) / 64.0);
      }
      double previous = INFINITY;
      for (std::size_t d = 0; d < depths.size(); ++d) {
        const double r = continuous_word_residual(fam, dils[d], idx, times);
        if (r > previous + kRoundingFloor) ++increases;
        previous = r;
      }
      worst24 = std::max(worst24, previous);
    }
  }
  const double secs = seconds_since(start);
  return {increases == 0 && worst24 <= kContinuousTol && secs <= kContinuousSeconds,
          std::to_string(cases) + " words, residual(24) max " + sci(worst24) + " (tol " +
              sci(kContinuousTol) + "), increases over M " + std::to_string(increases) +
              ", " + sci(secs) + " s"};
}

// --- 4 ---------------------------------------------------------------------

Outcome cogenerator_layer() {
  std::mt19937_64 gen(4004);
  std::uniform_real_distribution<double> norm(0.5, 2.0);
  double round_trip = 0.0, yosida_forms = 0.0, laplace = 0.0, yosida_final = 0.0;
  int non_decreasing = 0;
  const int cases = 20;
  for (int c = 0; c < cases; ++c) {
    const int n = 1 + c % 3;
    ContractionSemigroup T(random_dissipative(n, gen(), norm(gen), 0.0));
    const Matrix& A = T.generator();
    round_trip = std::max(round_trip, op_norm(A - generator_from_cogenerator(cogenerator(T))));

    // Resolvent form against the co-generator form, computed here.
    for (double lambda : {2.0, 10.0, 1e3}) {
      auto k = YosidaConstants::from_lambda(lambda);
      Matrix V = cogenerator(T);
      Matrix I = identity(n);
      Matrix first = lambda * lambda * (lambda * I - A).inverse() - lambda * I;
      Matrix second = k.alpha * I - k.beta * (k.gamma * I - V).inverse();
      yosida_forms = std::max(yosida_forms, op_norm(first - second) / std::max(1.0, op_norm(first)));
    }

    double previous = INFINITY;
    for (double lambda : {10.0, 100.0, 1000.0}) {
      auto k = YosidaConstants::from_lambda(lambda);
      double sup = 0.0;
      for (int j = 0; j <= 80; ++j) {
        const double t = 0.025 * j;
        sup = std::max(sup, op_norm(yosida_semigroup(T, k, t) - evaluate(T, t)));
      }
      if (!(sup < previous)) ++non_decreasing;
      previous = sup;
    }
    yosida_final = std::max(yosida_final, previous);

    if (c < 6) {
      for (Complex lambda : {Complex(1.0, 0.0), Complex(0.5, 2.0)}) {
        Matrix direct = (lambda * identity(n) - A).inverse();
        laplace = std::max(laplace, op_norm(resolvent_via_laplace(T, lambda) - direct));
      }
    }
  }
  const bool pass = round_trip <= kCogenTol && yosida_forms <= kCogenTol &&
                    non_decreasing == 0 && yosida_final <= kYosidaTol && laplace <= kLaplaceTol;
  return {pass, std::to_string(cases) + " generators with norm in [0.5,2]: round trip " +
                    sci(round_trip) + ", resolvent vs co-generator form " + sci(yosida_forms) +
                    ", Yosida sup error at 1e3 " + sci(yosida_final) + " (tol " +
                    sci(kYosidaTol) + "), non-decreasing sweeps " +
                    std::to_string(non_decreasing) + ", Laplace " + sci(laplace)};
}

// --- 5 ---------------------------------------------------------------------

Outcome spectrum_transfer() {
  std::mt19937_64 gen(5005);
  std::uniform_real_distribution<double> phase(-M_PI, M_PI);
  double worst = 0.0;
  int missing = 0, spurious = 0;
  for (int c = 0; c < 20; ++c) {
    const int n = 1 + c % 4;
    std::vector<double> phases(n);
    for (auto& p : phases) p = phase(gen);
    Matrix U = unitary_with_spectrum(phases, gen());
    auto rep = point_spectrum_transfer(U, 8, kSpectrumTol);
    if (static_cast<int>(rep.unimodular.size()) != n) ++missing;
    for (const auto& e : rep.unimodular) {
      worst = std::max(worst, e.dilation_residual);
      if (!e.transferred) ++missing;
    }
  }
  for (int c = 0; c < 20; ++c) {
    Matrix S = random_contraction(1 + c % 4, gen(), 0.1);
    if (!point_spectrum_transfer(S, 8, kSpectrumTol).unimodular.empty()) ++spurious;
  }
  return {worst <= kSpectrumTol && missing == 0 && spurious == 0,
          "20 unitaries: max residual " + sci(worst) + ", untransferred " +
              std::to_string(missing) + "; 20 contractions: spurious " + std::to_string(spurious)};
}

// --- 6 ---------------------------------------------------------------------

Word random_word(std::mt19937_64& gen, WordMode mode, int members) {
  std::uniform_int_distribution<int> len(0, 6), idx(0, members - 1);
  std::uniform_int_distribution<int> tick(mode == WordMode::group ? -64 : 0, 64);
  Word w;
  w.mode = mode;
  const int L = len(gen);
  for (int k = 0; k < L; ++k) w.letters.push_back({idx(gen), tick(gen) / 64.0});
  return w;
}

Outcome word_algebra() {
  const auto start = Clock::now();
  std::mt19937_64 gen(6006);
  int idempotence = 0, confluence = 0, associativity = 0;
  double homomorphism = 0.0;
  std::vector<ContractionSemigroup> skew;
  for (int k = 0; k < 3; ++k) skew.emplace_back(Complex(0, 1) * random_hermitian(2, gen()));
  for (int c = 0; c < 100; ++c) {
    const WordMode mode = c % 2 ? WordMode::group : WordMode::monoid;
    Word w = random_word(gen, mode, 3);
    Word r = reduce(w).word;
    if (!(reduce(r).word == r)) ++idempotence;
    for (int e = 0; e < 20; ++e) {
      Word x = reduce(expand(w, gen(), 10)).word;
      if (x.indices() != r.indices() || x.values() != r.values()) ++confluence;
    }
    Word a = random_word(gen, WordMode::group, 3);
    Word b = random_word(gen, WordMode::group, 3);
    Word d = random_word(gen, WordMode::group, 3);
    homomorphism = std::max(
        homomorphism, op_norm(evaluate(multiply(a, b), skew) - evaluate(a, skew) * evaluate(b, skew)));
    if (!(multiply(multiply(a, b), d) == multiply(a, multiply(b, d)))) ++associativity;
  }
  const double secs = seconds_since(start);
  return {idempotence == 0 && confluence == 0 && associativity == 0 && homomorphism <= kWordTol &&
              secs <= kWordSeconds,
          "100 cases each: idempotence failures " + std::to_string(idempotence) +
              ", confluence mismatches " + std::to_string(confluence) + ", homomorphism " +
              sci(homomorphism) + ", associativity failures " + std::to_string(associativity) +
              ", " + sci(secs) + " s"};
}

// --- 7 ---------------------------------------------------------------------

struct Sweep {
  std::vector<double> errors;
  bool monotone = true;
};

Sweep sweep(const MonitoredProcess& sys, const Matrix& target) {
  Sweep s;
  for (int N : {64, 128, 256, 512}) {
    s.errors.push_back(op_norm(monitoring_product(sys, Partition::uniform(N), 1.0, 0.0) - target));
    if (s.errors.size() > 1 && !(s.errors.back() < s.errors[s.errors.size() - 2])) {
      s.monotone = false;
    }
  }
  return s;
}

Outcome evolution_products() {
  std::mt19937_64 gen(7007);
  // Constant family over random partitions.
  Matrix A = random_dissipative(3, gen(), 1.5, 0.0);
  auto fam = GeneratorFamily::constant(A);
  double constant = 0.0;
  std::uniform_int_distribution<int> num(1, 95);
  for (int c = 0; c < 10; ++c) {
    std::vector<Rational> pts{Rational(0), Rational(1)};
    for (int j = 0; j < 1 + c; ++j) pts.push_back(Rational(num(gen), 96));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    constant = std::max(constant, op_norm(pre_evolution_product(fam, Partition(pts), 1.0, 0.0) -
                                          expm(A, 1.0)));
  }

  // Commuting pair: diagonal generators.
  Matrix D0 = Matrix::Zero(2, 2), D1 = Matrix::Zero(2, 2);
  D0(0, 0) = Complex(-0.4, 0.7);
  D0(1, 1) = -0.2;
  D1(0, 0) = -0.1;
  D1(1, 1) = Complex(-0.3, -1.1);
  auto comm = cycle_monitored_system({ContractionSemigroup(D0), ContractionSemigroup(D1)});
  Sweep commuting = sweep(comm, kron(identity(2), expm(D0 + D1, 1.0)));
  const double commuting_max = *std::max_element(commuting.errors.begin(), commuting.errors.end());

  // Generic non-commuting dissipative pair of norm 0.3.
  Matrix A0 = random_dissipative(2, gen(), 0.3, 0.0);
  Matrix A1 = random_dissipative(2, gen(), 0.3, 0.0);
  auto chern = cycle_monitored_system({ContractionSemigroup(A0), ContractionSemigroup(A1)});
  Sweep chernoff = sweep(chern, kron(identity(2), expm(A0 + A1, 1.0)));

  // Pauli pair.
  Matrix sx(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sz << 1, 0, 0, -1;
  auto feyn = feynman_analog(sx, sz);
  Sweep feynman = sweep(feyn, kron(identity(2), expm(Complex(0, 1) * (sx + sz), 1.0)));

  const bool pass = constant <= kConstantFamilyTol && commuting_max <= kCommutingTol &&
                    chernoff.monotone && chernoff.errors.back() <= kSplittingTol &&
                    feynman.monotone && feynman.errors.back() <= kSplittingTol;
  return {pass, "constant family " + sci(constant) + ", commuting " + sci(commuting_max) +
                    ", Chernoff N=512 " + sci(chernoff.errors.back()) +
                    (chernoff.monotone ? " monotone" : " NOT monotone") + ", Pauli N=512 " +
                    sci(feynman.errors.back()) + (feynman.monotone ? " monotone" : " NOT monotone") +
                    " (tol " + sci(kSplittingTol) + ")"};
}

// --- 8 ---------------------------------------------------------------------

Outcome monitoring_laws() {
  std::mt19937_64 gen(8008);
  // Block upper triangular generator: ran P is invariant.
  const int n = 3;
  Matrix A = Matrix::Zero(n, n);
  A.topLeftCorner(1, 1) = random_dissipative(1, gen(), 1.0, 0.2);
  A.bottomRightCorner(2, 2) = random_dissipative(2, gen(), 1.0, 0.2);
  Matrix C = oracle::random_matrix(1, 2, 8);
  A.topRightCorner(1, 2) = 0.2 * C / op_norm(C);
  Matrix P = Matrix::Zero(n, n);
  P(0, 0) = 1.0;
  auto proc = make_monitored_process(ContractionSemigroup(A), [P](double) { return P; }, 1, {0.0}, true);

  std::vector<Partition> parts;
  std::uniform_int_distribution<int> num(1, 59);
  for (int c = 0; c < 12; ++c) {
    std::vector<Rational> pts{Rational(0), Rational(1)};
    for (int j = 0; j < c % 6; ++j) pts.push_back(Rational(num(gen), 60));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    parts.emplace_back(pts);
  }

  double passive = 0.0, diagonal = 0.0, cocycle = 0.0;
  const double t = 1.0, r = 0.0;
  const Matrix closed = P * expm(A, t - r) * P;
  // Idempotent of order 2: the cycle monitor of a 2-member system.
  auto cycle = cycle_monitored_system({ContractionSemigroup(random_dissipative(2, gen(), 1.0, 0.0)),
                                       ContractionSemigroup(random_dissipative(2, gen(), 1.0, 0.0))});
  const Matrix W = cycle.X(t);
  for (const auto& xi : parts) {
    passive = std::max(passive, op_norm(monitoring_product(proc, xi, t, r) * P - closed));
    diagonal = std::max(diagonal, op_norm(monitoring_product(proc, xi, t, t) - P));
    diagonal = std::max(diagonal, op_norm(monitoring_product(cycle, homogenize(xi, 2), t, t) - W * W));
    for (Rational alpha : {Rational(1, 4), Rational(1, 3), Rational(2, 3)}) {
      auto split = self_similar_split(xi, alpha);
      const double s = r + (t - r) * to_double(alpha);
      auto E = [&](const Partition& g, double a, double b) {
        return Matrix(monitoring_product(proc, g, a, b) * P);
      };
      cocycle = std::max(cocycle, op_norm(E(split.gamma3, t, r) -
                                          E(split.gamma2, t, s) * E(split.gamma1, s, r)));
    }
  }
  return {passive <= kPassiveTol && diagonal == 0.0 && cocycle <= kCocycleTol,
          "12 partitions: passive closed form " + sci(passive) + " (tol " + sci(kPassiveTol) +
              "), diagonal law " + sci(diagonal) + ", cocycle " + sci(cocycle) + " (tol " +
              sci(kCocycleTol) + ")"};
}

// --- 9 ---------------------------------------------------------------------

Outcome reduction_lemma() {
  std::mt19937_64 gen(9009);
  Matrix A0 = random_dissipative(2, gen(), 1.0, 0.3);
  Matrix G = oracle::random_matrix(2, 2, 9);
  Matrix A1 = 0.3 * G / op_norm(G);
  auto fam = GeneratorFamily::affine(A0, A1);
  auto red = reduce_pre_evolution(fam, {0.0, 0.5, 1.0}, 24);
  double worst_gap = -INFINITY, worst = 0.0;
  for (const char* lit : {"0,1", "0,1/2,1", "0,1/4,1", "0,1/3,1/2,1", "0,1/4,1/2,3/4,1"}) {
    auto wi = red.word_identity(Partition::parse(lit), 1.0, 0.0);
    worst = std::max(worst, wi.residual);
    worst_gap = std::max(worst_gap, wi.residual - (wi.truncation + kRoundingFloor));
  }
  const auto& d = red.diagnostics;
  return {d.j_r == 0.0 && d.measurement <= kMeasurementTol && worst_gap <= 0.0,
          "j r - 1 " + sci(d.j_r) + ", measurement law " + sci(d.measurement) +
              ", word identity max " + sci(worst) + " against truncation residual, excess " +
              sci(worst_gap)};
}

// --- 10 --------------------------------------------------------------------

Outcome weak_pairing() {
  std::mt19937_64 gen(10010);
  std::uniform_int_distribution<int> length(1, 3), power(0, 2), index(0, 1), tick(0, 32);
  double discrete = 0.0, excess = -INFINITY;
  for (int c = 0; c < 10; ++c) {
    const int n = 1 + c % 3;
    std::vector<Matrix> fam{random_contraction(n, gen(), 0.0), random_contraction(n, gen(), 0.0)};
    const int M = 10;
    std::vector<TruncatedDilation> dils{nagy_unitary(fam[0], M), nagy_unitary(fam[1], M)};
    std::vector<WordOperators> words;
    for (int w = 0; w < 5; ++w) {
      Matrix T = identity(n);
      Matrix U = identity(2 * n * M);
      const int L = length(gen);
      for (int k = 0; k < L; ++k) {
        const int i = index(gen);
        for (int p = power(gen); p > 0; --p) {
          T = T * fam[i];
          U = U * dils[i].U_hat;
        }
      }
      words.push_back({T, U});
    }
    Vector xi = oracle::random_matrix(n, 1, 100 + c).col(0);
    Vector eta = oracle::random_matrix(n, 1, 200 + c).col(0);
    discrete = std::max(discrete, weak_approx_pairing(words, dils[0].r1, xi, eta).residual);
  }
  for (int c = 0; c < 5; ++c) {
    const int n = 1 + c % 2;
    std::vector<ContractionSemigroup> fam{ContractionSemigroup(random_dissipative(n, gen(), 1.0, 0.0)),
                                          ContractionSemigroup(random_dissipative(n, gen(), 1.0, 0.0))};
    std::vector<ContinuousDilation> dils{continuous_dilation(fam[0], 12),
                                         continuous_dilation(fam[1], 12)};
    Vector xi = oracle::random_matrix(n, 1, 300 + c).col(0);
    Vector eta = oracle::random_matrix(n, 1, 400 + c).col(0);
    for (int w = 0; w < 4; ++w) {
      std::vector<int> idx;
      std::vector<double> times;
      Matrix T = identity(n);
      Matrix U = identity(static_cast<int>(dils[0].B.rows()));
      const int L = length(gen);
      for (int k = 0; k < L; ++k) {
        idx.push_back(index(gen));
        times.push_back(tick(gen) / 32.0);
        T = T * evaluate(fam[idx.back()], times.back());
        U = U * dils[idx.back()].propagator(times.back());
      }
      const double word = continuous_word_residual(fam, dils, idx, times);
      const double pairing = weak_approx_pairing({{T, U}}, dils[0].r1, xi, eta).residual;
      excess = std::max(excess, pairing - (word * xi.norm() * eta.norm() + kRoundingFloor));
    }
  }
  return {discrete <= kPairingTol && excess <= 0.0,
          "discrete suites max " + sci(discrete) + " (tol " + sci(kPairingTol) +
              "), continuous suites excess over word residual bound " + sci(excess)};
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"discrete free dilation exactness", discrete_exactness},
      {"polynomial transport exactness and tail bound", poly_exactness},
      {"continuous free dilation convergence", continuous_convergence},
      {"co-generator layer", cogenerator_layer},
      {"point-spectrum transfer", spectrum_transfer},
      {"free-word algebra", word_algebra},
      {"evolution products", evolution_products},
      {"monitoring laws", monitoring_laws},
      {"reduction to a monitored unitary", reduction_lemma},
      {"weak-approximation pairing", weak_pairing},
  };
  return all;
}

bool run_one(int k) {
  const auto& c = criteria()[k - 1];
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("[%s] criterion %d: %s: %s\n", o.pass ? "PASS" : "FAIL", k, c.title,
              o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  const int count = static_cast<int>(criteria().size());
  if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
    const int k = std::atoi(argv[2]);
    if (k < 1 || k > count) {
      std::fprintf(stderr, "criterion must be in 1..%d\n", count);
      return 2;
    }
    return run_one(k) ? 0 : 1;
  }
  if (argc != 1) {
    std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
    return 2;
  }
  bool all = true;
  for (int k = 1; k <= count; ++k) all = run_one(k) && all;
  return all ? 0 : 1;
}
