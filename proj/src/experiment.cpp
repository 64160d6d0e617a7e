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

#include "dilationlab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dilationlab/dilation.hpp"
#include "dilationlab/evolution.hpp"
#include "dilationlab/freeword.hpp"
#include "dilationlab/partition.hpp"
#include "dilationlab/semigroup.hpp"

namespace dilationlab {

namespace {

using Clock = std::chrono::steady_clock;
using CellFn = std::function<std::vector<Row>(int cell, std::uint64_t seed)>;

// Floor for comparisons between two quantities that are both rounding-level.
constexpr double kRoundingFloor = 1.0e-12;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9e", x);
  return buf;
}

// RFC 4180 quoting for fields such as partition literals.
std::string csv_field(const std::string& f) {
  if (f.find_first_of(",\"\n") == std::string::npos) return f;
  std::string out = "\"";
  for (char ch : f) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string complex_text(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

std::uint64_t member_seed(std::uint64_t seed, int k) {
  return seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(k + 1));
}

// Word literals in configs and reports use 1-based indices.
Word shift_indices(Word w, int by) {
  for (auto& l : w.letters) l.index += by;
  return w;
}

std::string display(const Word& zero_based) {
  return format_word(shift_indices(zero_based, 1));
}

int family_size(const ExperimentConfig& c) {
  return c.family.matrices.empty() ? c.family.count
                                   : static_cast<int>(c.family.matrices.size());
}

std::vector<Matrix> contraction_family(const ExperimentConfig& c) {
  if (!c.family.matrices.empty()) return c.family.matrices;
  std::vector<Matrix> out;
  for (int k = 0; k < c.family.count; ++k) {
    out.push_back(random_contraction(c.dim, member_seed(*c.seed, k), c.family.margin));
  }
  return out;
}

std::vector<ContractionSemigroup> generator_family(const ExperimentConfig& c,
                                                   bool skew = false) {
  std::vector<ContractionSemigroup> out;
  if (!c.family.matrices.empty()) {
    for (const auto& A : c.family.matrices) out.emplace_back(A);
    return out;
  }
  for (int k = 0; k < c.family.count; ++k) {
    const std::uint64_t s = member_seed(*c.seed, k);
    if (skew) {
      Matrix H = random_hermitian(c.dim, s);
      out.emplace_back(Complex(0.0, c.family.norm / op_norm(H)) * H);
    } else {
      out.emplace_back(random_dissipative(c.dim, s, c.family.norm, c.family.margin));
    }
  }
  return out;
}

// Words from literals, or random words drawn from the cell seed.
Word cell_word(const ExperimentConfig& c, int cell, std::uint64_t seed,
               bool integral, WordMode mode = WordMode::monoid) {
  if (!c.words.literals.empty()) {
    return shift_indices(parse_word(c.words.literals[cell], mode), -1);
  }
  std::mt19937_64 gen(seed);
  const int members = std::max(1, family_size(c));
  std::uniform_int_distribution<int> length(1, c.words.max_length);
  std::uniform_int_distribution<int> index(0, members - 1);
  std::uniform_int_distribution<int> power(0, c.words.max_power);
  const int ticks = static_cast<int>(std::floor(c.words.max_time * 64.0));
  std::uniform_int_distribution<int> tick(mode == WordMode::group ? -ticks : 0,
                                          ticks);
  Word w;
  w.mode = mode;
  const int L = length(gen);
  for (int k = 0; k < L; ++k) {
    const int i = index(gen);
    const double v = integral ? power(gen) : tick(gen) / 64.0;
    w.letters.push_back({i, v});
  }
  return w;
}

int word_count(const ExperimentConfig& c) {
  return c.words.literals.empty() ? c.words.count
                                  : static_cast<int>(c.words.literals.size());
}

std::vector<Partition> partitions_of(const ExperimentConfig& c) {
  std::vector<Partition> out;
  for (const auto& lit : c.partitions) out.push_back(Partition::parse(lit));
  for (int N : c.uniform) out.push_back(Partition::uniform(N));
  return out;
}

struct Plan {
  int cells = 0;
  CellFn fn;
  // Runs after every cell finished, e.g. for cross-cell monotonicity.
  std::function<void(std::vector<Row>&)> finish;
};

Plan plan_dilate_discrete(const ExperimentConfig& c, double tol) {
  auto family = std::make_shared<std::vector<Matrix>>(contraction_family(c));
  Plan p;
  p.cells = word_count(c);
  p.fn = [c, family, tol](int cell, std::uint64_t seed) {
    Word w = cell_word(c, cell, seed, true);
    std::vector<int> powers;
    int degree = 0;
    for (double v : w.values()) {
      powers.push_back(static_cast<int>(v));
      degree += static_cast<int>(v);
    }
    std::vector<int> depths = c.depths;
    if (c.auto_depth) depths.push_back(degree + 2);
    std::vector<Row> rows;
    for (int M : depths) {
      double res = verify_discrete_word(*family, w.indices(), powers, M);
      rows.push_back({cell, {display(w), std::to_string(M)}, res, res <= tol, 0, ""});
    }
    return rows;
  };
  return p;
}

Plan plan_dilate_continuous(const ExperimentConfig& c, double tol) {
  auto family = std::make_shared<std::vector<ContractionSemigroup>>(generator_family(c));
  auto dils = std::make_shared<std::vector<std::vector<ContinuousDilation>>>();
  for (int M : c.depths) {
    std::vector<ContinuousDilation> level;
    for (const auto& T : *family) level.push_back(continuous_dilation(T, M));
    dils->push_back(std::move(level));
  }
  Plan p;
  p.cells = word_count(c);
  p.fn = [c, family, dils, tol](int cell, std::uint64_t seed) {
    Word w = cell_word(c, cell, seed, false);
    std::vector<Row> rows;
    double previous = -1.0;
    for (std::size_t d = 0; d < c.depths.size(); ++d) {
      double res = continuous_word_residual(*family, (*dils)[d], w.indices(),
                                            w.values());
      bool monotone = previous < 0.0 || res <= previous + kRoundingFloor;
      rows.push_back({cell,
                      {display(w), std::to_string(c.depths[d])},
                      res,
                      res <= tol && monotone,
                      0,
                      monotone ? "" : "residual increased with depth"});
      previous = res;
    }
    return rows;
  };
  return p;
}

Plan plan_poly_transport(const ExperimentConfig& c, double tol) {
  auto family = std::make_shared<std::vector<ContractionSemigroup>>(generator_family(c));
  Plan p;
  p.cells = word_count(c);
  p.fn = [c, family, tol](int cell, std::uint64_t seed) {
    Word w = cell_word(c, cell, seed, false);
    std::vector<int> depths = c.depths;
    if (depths.empty()) depths.push_back(c.degree * w.size() + 2);
    std::vector<Row> rows;
    for (int M : depths) {
      auto rep = poly_transport(*family, w.indices(), w.values(), c.lambda,
                                c.degree, M);
      bool bound_ok = rep.yosida_word_residual <= 2.0 * rep.tail_sum + 1.0e-9;
      rows.push_back({cell,
                      {display(w), std::to_string(M), std::to_string(c.degree),
                       num(rep.residual), num(rep.tail_sum),
                       num(rep.yosida_word_residual)},
                      rep.residual,
                      rep.residual <= tol && bound_ok,
                      0,
                      bound_ok ? "" : "yosida word residual above 2*tail+1e-9"});
    }
    return rows;
  };
  return p;
}

// Per-row rule for refinement sweeps: errors strictly decrease and the
// finest partition meets the tolerance.
void finish_refinement(std::vector<Row>& rows, double tol) {
  for (std::size_t k = 0; k < rows.size(); ++k) {
    bool ok = true;
    std::string note;
    if (k > 0 && !(rows[k].residual < rows[k - 1].residual)) {
      ok = false;
      note = "error did not decrease";
    }
    if (k + 1 == rows.size() && rows[k].residual > tol) {
      ok = false;
      note = note.empty() ? "finest error above tolerance" : note + "; finest error above tolerance";
    }
    rows[k].pass = ok;
    rows[k].note = note;
  }
}

Plan plan_cycle(const ExperimentConfig& c, double tol, bool feynman) {
  std::vector<ContractionSemigroup> sgs;
  Matrix target_generator;
  if (feynman) {
    Matrix H0, H1;
    if (c.family.h0 && c.family.h1) {
      H0 = *c.family.h0;
      H1 = *c.family.h1;
    } else {
      H0 = random_hermitian(c.dim, member_seed(*c.seed, 0));
      H1 = random_hermitian(c.dim, member_seed(*c.seed, 1));
    }
    const Complex i(0.0, 1.0);
    sgs = {ContractionSemigroup(i * H0), ContractionSemigroup(i * H1)};
    target_generator = i * (H0 + H1);
  } else {
    sgs = generator_family(c);
    target_generator = Matrix::Zero(c.dim, c.dim);
    for (const auto& T : sgs) target_generator += T.generator();
  }
  const int m = static_cast<int>(sgs.size());
  auto proc = std::make_shared<MonitoredProcess>(
      feynman ? feynman_analog(-Complex(0, 1) * sgs[0].generator(),
                               -Complex(0, 1) * sgs[1].generator())
              : cycle_monitored_system(sgs));
  auto target = std::make_shared<Matrix>(
      kron(identity(m), expm(target_generator, c.t - c.s)));
  Plan p;
  p.cells = static_cast<int>(c.uniform.size());
  p.fn = [c, proc, target](int cell, std::uint64_t) {
    const int N = c.uniform[cell];
    Matrix prod = monitoring_product(*proc, Partition::uniform(N), c.t, c.s);
    double err = op_norm(prod - *target);
    return std::vector<Row>{{cell, {std::to_string(N)}, err, true, 0, ""}};
  };
  p.finish = [tol](std::vector<Row>& rows) { finish_refinement(rows, tol); };
  return p;
}

struct MonitorSetup {
  MonitoredProcess passive;
  MonitoredProcess commuting;
  MonitoredProcess cycle;
  Matrix P;
};

Plan plan_monitor(const ExperimentConfig& c, double tol) {
  const int n = c.dim;
  const int k = c.rank;
  Matrix A;
  Matrix A_comm;
  if (!c.family.matrices.empty()) {
    A = c.family.matrices[0];
    A_comm = A;
    A_comm.topRightCorner(k, n - k).setZero();
    A_comm.bottomLeftCorner(n - k, k).setZero();
  } else {
    const double margin = std::max(c.family.margin, 0.05);
    const double norm = std::max(c.family.norm, 2.0 * margin);
    A = Matrix::Zero(n, n);
    A.topLeftCorner(k, k) = random_dissipative(k, member_seed(*c.seed, 0), norm, margin);
    A.bottomRightCorner(n - k, n - k) =
        random_dissipative(n - k, member_seed(*c.seed, 1), norm, margin);
    A_comm = A;
    // Off-diagonal coupling of norm `margin` keeps the Hermitian part <= 0.
    Matrix G = random_contraction(std::max(k, n - k), member_seed(*c.seed, 2), 0.0);
    Matrix C = G.topLeftCorner(k, n - k);
    double cn = op_norm(C);
    if (cn > 0.0) A.topRightCorner(k, n - k) = margin / cn * C;
  }
  Matrix P = Matrix::Zero(n, n);
  P.topLeftCorner(k, k) = identity(k);
  auto setup = std::make_shared<MonitorSetup>(MonitorSetup{
      make_monitored_process(ContractionSemigroup(A), [P](double) { return P; }, 1,
                             {0.0}, true),
      make_monitored_process(ContractionSemigroup(A_comm),
                             [P](double) { return P; }, 1, {0.0}, true),
      cycle_monitored_system({ContractionSemigroup(A), ContractionSemigroup(A_comm)}),
      P});
  auto parts = std::make_shared<std::vector<Partition>>(partitions_of(c));
  Plan p;
  p.cells = static_cast<int>(parts->size());
  p.fn = [c, setup, parts, tol](int cell, std::uint64_t) {
    const Partition& xi = (*parts)[cell];
    const std::string lit = xi.to_string();
    const Matrix& P = setup->P;
    std::vector<Row> rows;
    auto add = [&](const std::string& check, double res) {
      rows.push_back({cell, {lit, check}, res, res <= tol, 0, ""});
    };
    Matrix closed = P * evaluate(setup->passive.T, c.t - c.s) * P;
    add("passive", op_norm(monitoring_product(setup->passive, xi, c.t, c.s) * P - closed));
    Matrix closed_comm = P * evaluate(setup->commuting.T, c.t - c.s) * P;
    add("passive_commuting",
        op_norm(monitoring_product(setup->commuting, xi, c.t, c.s) - closed_comm));
    // On F_2 the cycle monitor's diagonal is W^N = W^2 = I.
    Partition xi2 = homogenize(xi, 2);
    Matrix diag = monitoring_product(setup->cycle, xi2, c.t, c.t);
    Matrix W = setup->cycle.X(c.t);
    add("idempotent_diagonal", op_norm(diag - W * W));
    double cocycle = 0.0;
    for (Rational q : {Rational(1, 3), Rational(1, 2)}) {
      auto split = self_similar_split(xi, q, 1);
      const double mid = c.s + (c.t - c.s) * to_double(q);
      auto E = [&](const Partition& g, double a, double b) {
        return Matrix(monitoring_product(setup->passive, g, a, b) * P);
      };
      cocycle = std::max(cocycle,
                         op_norm(E(split.gamma3, c.t, c.s) -
                                 E(split.gamma2, c.t, mid) * E(split.gamma1, mid, c.s)));
    }
    add("cocycle", cocycle);
    return rows;
  };
  return p;
}

Plan plan_reduce(const ExperimentConfig& c, double tol) {
  Matrix A0, A1;
  if (!c.family.matrices.empty()) {
    A0 = c.family.matrices[0];
    A1 = c.family.matrices[1];
  } else {
    const double margin = std::max(c.family.margin, 0.05);
    A0 = random_dissipative(c.dim, member_seed(*c.seed, 0),
                            std::max(c.family.norm, 2.0 * margin), margin);
    Matrix G = random_contraction(c.dim, member_seed(*c.seed, 1), 0.0);
    A1 = margin / op_norm(G) * G;
  }
  const double lo = std::min(0.0, c.grid.front());
  const double hi = std::max(1.0, c.grid.back());
  GeneratorFamily fam = GeneratorFamily::affine(A0, A1, lo, hi);
  const int M = c.depths.empty() ? 24 : c.depths.front();
  auto red = std::make_shared<PreEvolutionReduction>(reduce_pre_evolution(fam, c.grid, M));
  auto parts = std::make_shared<std::vector<Partition>>(partitions_of(c));
  Plan p;
  p.cells = 1 + static_cast<int>(parts->size());
  p.fn = [c, red, parts, tol](int cell, std::uint64_t) {
    std::vector<Row> rows;
    if (cell == 0) {
      const auto& d = red->diagnostics;
      rows.push_back({0, {"-", "j_r", num(tol)}, d.j_r, d.j_r <= tol, 0, ""});
      rows.push_back({0, {"-", "measurement", num(tol)}, d.measurement,
                      d.measurement <= tol, 0, ""});
      rows.push_back({0, {"-", "passivity", num(tol)}, d.passivity,
                      d.passivity <= tol, 0, ""});
      rows.push_back({0, {"-", "isometry_deficit", "-"}, d.isometry_deficit, true,
                      0, "informational: r is not isometric", false});
      return rows;
    }
    const Partition& xi = (*parts)[cell - 1];
    auto wi = red->word_identity(xi, c.t, c.s);
    const double bound = wi.truncation + kRoundingFloor;
    rows.push_back({cell, {xi.to_string(), "word_identity", num(bound)},
                    wi.residual, wi.residual <= bound, 0, ""});
    return rows;
  };
  return p;
}

Plan plan_wordcheck(const ExperimentConfig& c, double tol) {
  const bool group = c.words.mode == WordMode::group;
  auto family = std::make_shared<std::vector<ContractionSemigroup>>(generator_family(c, group));
  Plan p;
  p.cells = word_count(c);
  p.fn = [c, family, tol](int cell, std::uint64_t seed) {
    const WordMode mode = c.words.mode;
    Word w = cell_word(c, cell, seed, false, mode);
    Word other = cell_word(c, (cell + 1) % std::max(1, word_count(c)),
                           seed ^ 0xA5A5A5A5ULL, false, mode);
    Reduction red = reduce(w);
    int mismatches = 0;
    if (!(reduce(red.word).word == red.word)) ++mismatches;
    double residual = 0.0;
    const Matrix ew = evaluate(w, *family);
    for (int e = 0; e < c.words.expansions; ++e) {
      Word x = expand(w, seed ^ (0x51ED270B27ULL * (e + 1)), c.words.steps);
      Word rx = reduce(x).word;
      bool same = rx.indices() == red.word.indices();
      if (same) {
        for (int k = 0; k < rx.size(); ++k) {
          if (std::abs(rx.letters[k].value - red.word.letters[k].value) > 1.0e-14) {
            same = false;
          }
        }
      }
      if (!same) ++mismatches;
      residual = std::max(residual, op_norm(evaluate(x, *family) - ew));
    }
    residual = std::max(residual, op_norm(evaluate(red.word, *family) - ew));
    residual = std::max(residual,
                        op_norm(evaluate(multiply(w, other), *family) -
                                ew * evaluate(other, *family)));
    return std::vector<Row>{{cell,
                             {display(w), std::to_string(c.words.expansions),
                              std::to_string(mismatches)},
                             residual,
                             mismatches == 0 && residual <= tol,
                             0,
                             ""}};
  };
  return p;
}

Plan plan_spectrum(const ExperimentConfig& c, double tol) {
  Plan p;
  p.cells = family_size(c);
  const int M = c.depths.empty() ? 8 : c.depths.front();
  p.fn = [c, tol, M](int cell, std::uint64_t seed) {
    Matrix S;
    if (!c.family.matrices.empty()) {
      S = c.family.matrices[cell];
    } else if (c.family.kind == "unitary") {
      std::mt19937_64 gen(seed);
      std::uniform_real_distribution<double> phase(-M_PI, M_PI);
      std::vector<double> phases(c.dim);
      for (auto& ph : phases) ph = phase(gen);
      S = unitary_with_spectrum(phases, seed);
    } else {
      S = random_contraction(c.dim, seed, c.family.margin);
    }
    auto rep = point_spectrum_transfer(S, M, tol);
    std::vector<Row> rows;
    for (const auto& e : rep.unimodular) {
      rows.push_back({cell,
                      {complex_text(e.lambda), num(e.dilation_residual),
                       num(e.defect_residual)},
                      std::max(e.dilation_residual, e.defect_residual),
                      e.transferred,
                      0,
                      ""});
    }
    if (rows.empty()) {
      rows.push_back({cell, {"none", num(0.0), num(0.0)}, 0.0, true, 0,
                      "no unimodular eigenvalue"});
    }
    return rows;
  };
  return p;
}

Plan make_plan(const ExperimentConfig& c, double tol) {
  const std::string& e = c.experiment;
  if (e == "dilate-discrete") return plan_dilate_discrete(c, tol);
  if (e == "dilate-continuous") return plan_dilate_continuous(c, tol);
  if (e == "poly-transport") return plan_poly_transport(c, tol);
  if (e == "chernoff") return plan_cycle(c, tol, false);
  if (e == "feynman") return plan_cycle(c, tol, true);
  if (e == "monitor") return plan_monitor(c, tol);
  if (e == "reduce") return plan_reduce(c, tol);
  if (e == "wordcheck") return plan_wordcheck(c, tol);
  if (e == "spectrum") return plan_spectrum(c, tol);
  throw PreconditionError("unknown experiment '" + e + "'");
}

}  // namespace

std::vector<std::string> csv_columns(const std::string& e) {
  if (e == "dilate-discrete" || e == "dilate-continuous") {
    return {"cell", "word", "M", "residual", "runtime_ms"};
  }
  if (e == "poly-transport") {
    return {"cell", "word", "M", "degree", "residual", "tail_bound",
            "yosida_residual", "runtime_ms"};
  }
  if (e == "chernoff" || e == "feynman") return {"cell", "N", "error", "runtime_ms"};
  if (e == "monitor") return {"cell", "partition", "check", "residual", "runtime_ms"};
  if (e == "reduce") {
    return {"cell", "partition", "check", "bound", "residual", "runtime_ms"};
  }
  if (e == "wordcheck") {
    return {"cell", "word", "expansions", "mismatches", "residual", "runtime_ms"};
  }
  if (e == "spectrum") {
    return {"cell", "eigenvalue", "dilation_residual", "defect_residual",
            "runtime_ms"};
  }
  return {};
}

int thread_budget(int requested) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  int budget = requested > 0 ? requested : std::max(1, hw);
  if (const char* env = std::getenv("DILATIONLAB_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) budget = std::min(budget, cap);
  }
  return std::max(1, budget);
}

Report run(const ExperimentConfig& config, const std::filesystem::path& out_dir,
           const RunOptions& options) {
  auto diags = validate(config);
  if (!diags.empty()) {
    throw PreconditionError("invalid configuration: " + diags.front().to_string());
  }
  Report rep;
  rep.experiment = config.experiment;
  rep.seed = config.seed.value_or(0);
  rep.tol = config.tol.value_or(default_tolerance(config.experiment));
  rep.columns = csv_columns(config.experiment);

  Plan plan = make_plan(config, rep.tol);
  std::vector<std::vector<Row>> results(plan.cells);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int cell = next.fetch_add(1);
      if (cell >= plan.cells) return;
      const std::uint64_t seed = rep.seed ^ static_cast<std::uint64_t>(cell);
      const auto start = Clock::now();
      std::vector<Row> rows;
      try {
        rows = plan.fn(cell, seed);
      } catch (const std::exception& ex) {
        std::vector<std::string> fields(rep.columns.size() - 3, "-");
        rows = {{cell, fields, std::numeric_limits<double>::infinity(), false, 0,
                 std::string("error: ") + ex.what()}};
      }
      const double ms =
          std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      for (auto& r : rows) r.runtime_ms = ms;
      results[cell] = std::move(rows);
    }
  };
  const int threads = std::min(thread_budget(options.threads), std::max(1, plan.cells));
  std::vector<std::thread> pool;
  for (int k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (auto& cell_rows : results) {
    for (auto& r : cell_rows) rep.rows.push_back(std::move(r));
  }
  if (plan.finish) plan.finish(rep.rows);
  for (const auto& r : rep.rows) {
    if (!r.scored) continue;
    rep.max_residual = std::max(rep.max_residual, r.residual);
    if (!r.pass) {
      rep.pass = false;
      if (rep.failed_cells.empty() || rep.failed_cells.back() != r.cell) {
        rep.failed_cells.push_back(r.cell);
      }
    }
  }

  std::filesystem::create_directories(out_dir);
  std::ofstream(out_dir / (config.experiment + ".csv")) << csv_text(rep, options.timing);
  std::ofstream(out_dir / (config.experiment + ".json")) << json_text(rep, options.timing);
  return rep;
}

std::string csv_text(const Report& report, bool timing) {
  std::ostringstream out;
  for (std::size_t k = 0; k < report.columns.size(); ++k) {
    out << (k ? "," : "") << report.columns[k];
  }
  out << '\n';
  // Residual-like value sits right before runtime_ms unless a field holds it.
  const std::size_t value_slots = report.columns.size() - 2;
  for (const auto& r : report.rows) {
    out << r.cell;
    for (const auto& f : r.fields) out << ',' << csv_field(f);
    if (r.fields.size() < value_slots) out << ',' << num(r.residual);
    out << ',' << (timing ? num(r.runtime_ms) : std::string("0")) << '\n';
  }
  return out.str();
}

std::string json_text(const Report& report, bool timing) {
  nlohmann::ordered_json j;
  j["experiment"] = report.experiment;
  j["seed"] = report.seed;
  j["tolerance"] = report.tol;
  j["columns"] = report.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json row;
    row["cell"] = r.cell;
    row["fields"] = r.fields;
    row["residual"] = std::isfinite(r.residual) ? nlohmann::ordered_json(r.residual)
                                                : nlohmann::ordered_json(nullptr);
    row["pass"] = r.pass;
    if (timing) row["runtime_ms"] = r.runtime_ms;
    if (!r.note.empty()) row["note"] = r.note;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  nlohmann::ordered_json summary;
  summary["max_residual"] = std::isfinite(report.max_residual)
                                ? nlohmann::ordered_json(report.max_residual)
                                : nlohmann::ordered_json(nullptr);
  summary["pass"] = report.pass;
  summary["failed_cells"] = report.failed_cells;
  j["summary"] = std::move(summary);
  return j.dump(2) + "\n";
}

}  // namespace dilationlab
