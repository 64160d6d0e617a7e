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

#include "dilationlab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "dilationlab/partition.hpp"

namespace dilationlab {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& raw) {
  std::string text = trim(raw);
  const char* b = text.data();
  const char* e = text.data() + text.size();
  if (b < e && *b == '+') ++b;
  double v = 0.0;
  auto r = std::from_chars(b, e, v);
  if (b == e || r.ec != std::errc() || r.ptr != e || !std::isfinite(v)) {
    throw PreconditionError("not a number: '" + text + "'");
  }
  return v;
}

long long parse_integer(const std::string& raw) {
  std::string text = trim(raw);
  const char* b = text.data();
  const char* e = text.data() + text.size();
  if (b < e && *b == '+') ++b;
  long long v = 0;
  auto r = std::from_chars(b, e, v);
  if (b == e || r.ec != std::errc() || r.ptr != e) {
    throw PreconditionError("not an integer: '" + text + "'");
  }
  return v;
}

// Decimal or p/q.
double parse_time(const std::string& raw) {
  if (raw.find('/') != std::string::npos) return to_double(parse_rational(raw));
  return parse_double(raw);
}

// "name.3" -> 3, or nullopt when the key has another shape.
std::optional<int> numbered(const std::string& key, const std::string& stem) {
  const std::string prefix = stem + ".";
  if (key.rfind(prefix, 0) != 0) return std::nullopt;
  try {
    long long v = parse_integer(key.substr(prefix.size()));
    if (v < 1 || v > 1000000) return std::nullopt;
    return static_cast<int>(v);
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"", {"experiment", "dim", "seed", "depth", "tol", "t", "s"}},
      {"family", {"count", "margin", "norm", "kind", "h0", "h1"}},
      {"words",
       {"count", "max_length", "max_power", "max_time", "mode", "expansions",
        "steps"}},
      {"partition", {"uniform"}},
      {"poly", {"lambda", "degree"}},
      {"monitor", {"rank"}},
      {"reduce", {"grid"}},
  };
  return keys;
}

bool is_known(const ConfigEntry& e) {
  const auto& keys = known_keys();
  auto it = keys.find(e.section);
  if (it == keys.end()) return false;
  if (it->second.count(e.key)) return true;
  if (e.section == "family" && numbered(e.key, "matrix")) return true;
  if (e.section == "words" && numbered(e.key, "word")) return true;
  if (e.section == "partition" && numbered(e.key, "explicit")) return true;
  return false;
}

}  // namespace

const ConfigEntry* RawConfig::find(const std::string& section,
                                   const std::string& key) const {
  for (const auto& e : entries) {
    if (e.section == section && e.key == key) return &e;
  }
  return nullptr;
}

RawConfig parse_config_text(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int number = 0;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++number;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        raw.syntax.push_back({"line " + std::to_string(number),
                              "unterminated section header"});
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      raw.syntax.push_back(
          {"line " + std::to_string(number), "expected 'key = value'"});
      continue;
    }
    ConfigEntry e{section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
                  number};
    if (e.key.empty()) {
      raw.syntax.push_back({"line " + std::to_string(number), "empty key"});
      continue;
    }
    if (!seen.insert(e.path()).second) {
      raw.syntax.push_back({e.path(), "duplicate key (line " +
                                          std::to_string(number) + ")"});
      continue;
    }
    raw.entries.push_back(std::move(e));
  }
  return raw;
}

RawConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    RawConfig raw;
    raw.syntax.push_back({"config", "cannot read file " + path.string()});
    return raw;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

Complex parse_complex(const std::string& raw) {
  std::string text = trim(raw);
  text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
  if (text.empty()) throw PreconditionError("empty complex literal");
  if (text.back() != 'i') return Complex(parse_double(text), 0.0);
  std::string body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not an exponent sign or the leading sign.
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' &&
        body[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  auto imag_of = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s);
  };
  if (cut == std::string::npos) return Complex(0.0, imag_of(body));
  return Complex(parse_double(body.substr(0, cut)), imag_of(body.substr(cut)));
}

Matrix parse_matrix(const std::string& text) {
  auto rows = split(text, ';');
  if (rows.empty()) throw PreconditionError("empty matrix literal");
  const int n = static_cast<int>(rows.size());
  Matrix A(n, n);
  for (int i = 0; i < n; ++i) {
    auto cells = split(rows[i], ',');
    if (static_cast<int>(cells.size()) != n) {
      throw PreconditionError("matrix literal: row " + std::to_string(i + 1) +
                              " has " + std::to_string(cells.size()) +
                              " entries, expected " + std::to_string(n));
    }
    for (int j = 0; j < n; ++j) A(i, j) = parse_complex(cells[j]);
  }
  return A;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text, ',')) {
    long long v = parse_integer(item);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      throw PreconditionError("integer out of range: '" + item + "'");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

bool ExperimentConfig::randomized() const {
  if (experiment == "feynman") return !(family.h0 && family.h1);
  if (experiment == "monitor") return family.matrices.empty();
  if (experiment == "reduce") return family.matrices.empty();
  if (family.random()) return true;
  return words.literals.empty() && words.count > 0;
}

double default_tolerance(const std::string& experiment) {
  if (experiment == "dilate-discrete") return 1.0e-10;
  if (experiment == "dilate-continuous") return 1.0e-5;
  if (experiment == "poly-transport") return 1.0e-9;
  if (experiment == "chernoff" || experiment == "feynman") return 1.0e-4;
  if (experiment == "wordcheck") return 1.0e-12;
  return 1.0e-10;
}

ExperimentConfig interpret(const RawConfig& raw) {
  ExperimentConfig c;
  c.parse_diagnostics = raw.syntax;
  std::map<int, Matrix> matrices;
  std::map<int, std::string> words;
  std::map<int, std::string> partitions;
  for (const auto& e : raw.entries) {
    if (!is_known(e)) {
      c.parse_diagnostics.push_back({e.path(), "unknown key"});
      continue;
    }
    try {
      const std::string& v = e.value;
      if (e.section.empty()) {
        if (e.key == "experiment") c.experiment = v;
        if (e.key == "dim") c.dim = static_cast<int>(parse_integer(v));
        if (e.key == "seed") {
          long long s = parse_integer(v);
          if (s < 0) throw PreconditionError("seed must be nonnegative");
          c.seed = static_cast<std::uint64_t>(s);
        }
        if (e.key == "depth") {
          if (v == "auto") {
            c.auto_depth = true;
          } else {
            c.depths = parse_int_list(v);
          }
        }
        if (e.key == "tol") c.tol = parse_double(v);
        if (e.key == "t") c.t = parse_time(v);
        if (e.key == "s") c.s = parse_time(v);
      } else if (e.section == "family") {
        if (auto k = numbered(e.key, "matrix")) {
          matrices[*k] = parse_matrix(v);
        } else if (e.key == "count") {
          c.family.count = static_cast<int>(parse_integer(v));
        } else if (e.key == "margin") {
          c.family.margin = parse_double(v);
        } else if (e.key == "norm") {
          c.family.norm = parse_double(v);
        } else if (e.key == "kind") {
          c.family.kind = v;
        } else if (e.key == "h0") {
          c.family.h0 = parse_matrix(v);
        } else if (e.key == "h1") {
          c.family.h1 = parse_matrix(v);
        }
      } else if (e.section == "words") {
        if (auto k = numbered(e.key, "word")) {
          words[*k] = v;
        } else if (e.key == "count") {
          c.words.count = static_cast<int>(parse_integer(v));
        } else if (e.key == "max_length") {
          c.words.max_length = static_cast<int>(parse_integer(v));
        } else if (e.key == "max_power") {
          c.words.max_power = static_cast<int>(parse_integer(v));
        } else if (e.key == "max_time") {
          c.words.max_time = parse_double(v);
        } else if (e.key == "mode") {
          if (v == "monoid") {
            c.words.mode = WordMode::monoid;
          } else if (v == "group") {
            c.words.mode = WordMode::group;
          } else {
            throw PreconditionError("mode must be 'monoid' or 'group'");
          }
        } else if (e.key == "expansions") {
          c.words.expansions = static_cast<int>(parse_integer(v));
        } else if (e.key == "steps") {
          c.words.steps = static_cast<int>(parse_integer(v));
        }
      } else if (e.section == "partition") {
        if (auto k = numbered(e.key, "explicit")) {
          Partition::parse(v);
          partitions[*k] = v;
        } else if (e.key == "uniform") {
          c.uniform = parse_int_list(v);
        }
      } else if (e.section == "poly") {
        if (e.key == "lambda") c.lambda = parse_double(v);
        if (e.key == "degree") c.degree = static_cast<int>(parse_integer(v));
      } else if (e.section == "monitor") {
        if (e.key == "rank") c.rank = static_cast<int>(parse_integer(v));
      } else if (e.section == "reduce") {
        if (e.key == "grid") {
          c.grid.clear();
          for (const auto& item : split(v, ',')) {
            c.grid.push_back(parse_time(item));
          }
        }
      }
    } catch (const std::exception& ex) {
      c.parse_diagnostics.push_back({e.path(), ex.what()});
    }
  }
  for (auto& [k, m] : matrices) c.family.matrices.push_back(std::move(m));
  for (auto& [k, w] : words) c.words.literals.push_back(std::move(w));
  for (auto& [k, p] : partitions) c.partitions.push_back(std::move(p));
  return c;
}

namespace {

// Words as parsed for validation, with the literal kept for messages.
struct ParsedWord {
  std::string field;
  std::string literal;
  Word word;
};

bool is_integral(double x) { return std::floor(x) == x; }

}  // namespace

std::vector<Diagnostic> validate(const ExperimentConfig& c) {
  std::vector<Diagnostic> out = c.parse_diagnostics;
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), c.experiment) == names.end()) {
    out.push_back({"experiment", "unknown experiment '" + c.experiment + "'"});
    return out;
  }
  if (c.dim < 1 || c.dim > 8) out.push_back({"dim", "must be in 1..8"});
  if (c.randomized() && !c.seed) {
    out.push_back({"seed", "required because the configuration draws random "
                           "family members or words"});
  }
  if (c.tol && !(*c.tol > 0.0)) out.push_back({"tol", "must be positive"});
  if (c.t < c.s) out.push_back({"t", "need t >= s"});
  for (int M : c.depths) {
    if (M < 2) out.push_back({"depth", "every depth must be >= 2"});
  }
  for (std::size_t k = 0; k < c.family.matrices.size(); ++k) {
    if (c.family.matrices[k].rows() != c.dim) {
      out.push_back({"family.matrix." + std::to_string(k + 1),
                     "dimension differs from dim = " + std::to_string(c.dim)});
    }
  }
  if (c.family.count < 0) out.push_back({"family.count", "must be >= 0"});
  if (!(c.family.margin >= 0.0 && c.family.margin < 1.0)) {
    out.push_back({"family.margin", "must lie in [0,1)"});
  }
  if (!(c.family.norm > c.family.margin)) {
    out.push_back({"family.norm", "must exceed family.margin"});
  }

  const bool word_based = c.experiment == "dilate-discrete" ||
                          c.experiment == "dilate-continuous" ||
                          c.experiment == "poly-transport" ||
                          c.experiment == "wordcheck";
  const int family_size = c.family.matrices.empty()
                              ? c.family.count
                              : static_cast<int>(c.family.matrices.size());
  std::vector<ParsedWord> words;
  if (word_based) {
    if (family_size < 1) {
      out.push_back({"family", "no family members (set count or matrix.N)"});
    }
    if (c.words.literals.empty() && c.words.count < 1) {
      out.push_back({"words", "no words (set count or word.N)"});
    }
    if (c.words.max_length < 1) out.push_back({"words.max_length", "must be >= 1"});
    if (c.words.max_power < 0) out.push_back({"words.max_power", "must be >= 0"});
    if (!(c.words.max_time >= 0.0)) out.push_back({"words.max_time", "must be >= 0"});
    const WordMode mode =
        c.experiment == "wordcheck" ? c.words.mode : WordMode::monoid;
    for (std::size_t k = 0; k < c.words.literals.size(); ++k) {
      const std::string field = "words.word." + std::to_string(k + 1);
      const std::string& lit = c.words.literals[k];
      try {
        Word w = parse_word(lit, mode);
        for (const auto& l : w.letters) {
          if (l.index < 1 || (family_size > 0 && l.index > family_size)) {
            throw PreconditionError("index " + std::to_string(l.index) +
                                    " in word '" + lit +
                                    "' has no family member");
          }
        }
        words.push_back({field, lit, std::move(w)});
      } catch (const std::exception& ex) {
        out.push_back({field, ex.what()});
      }
    }
  }

  if (c.experiment == "dilate-discrete") {
    int worst_degree = -1;
    std::string worst_word;
    for (const auto& pw : words) {
      int degree = 0;
      bool ok = true;
      for (const auto& l : pw.word.letters) {
        if (!is_integral(l.value)) {
          out.push_back({pw.field, "powers must be nonnegative integers in '" +
                                       pw.literal + "'"});
          ok = false;
          break;
        }
        degree += static_cast<int>(l.value);
      }
      if (ok && degree > worst_degree) {
        worst_degree = degree;
        worst_word = "word '" + pw.literal + "'";
      }
    }
    if (c.words.literals.empty() && c.words.count > 0) {
      int degree = c.words.max_length * c.words.max_power;
      if (degree > worst_degree) {
        worst_degree = degree;
        worst_word = "random words (max_length * max_power)";
      }
    }
    if (!c.auto_depth && c.depths.empty()) {
      out.push_back({"depth", "set depth = M,... or depth = auto"});
    }
    for (int M : c.depths) {
      if (worst_degree >= 0 && M < worst_degree + 2) {
        out.push_back({"depth", "M = " + std::to_string(M) + " too small for " +
                                    worst_word + " of degree " +
                                    std::to_string(worst_degree) +
                                    ": need M > sum of powers + 1"});
      }
    }
  }
  if (c.experiment == "dilate-continuous" && c.depths.empty()) {
    out.push_back({"depth", "set depth = M,..."});
  }
  if (c.experiment == "poly-transport") {
    if (!(c.lambda > 1.0)) out.push_back({"poly.lambda", "must exceed 1"});
    if (c.degree < 0) out.push_back({"poly.degree", "must be >= 0"});
    int letters = c.words.literals.empty() ? c.words.max_length : 0;
    for (const auto& pw : words) letters = std::max(letters, pw.word.size());
    for (int M : c.depths) {
      if (!(M > c.degree * letters + 1)) {
        out.push_back({"depth", "M = " + std::to_string(M) +
                                    " must exceed degree * letters + 1 = " +
                                    std::to_string(c.degree * letters + 1)});
      }
    }
  }
  if (c.experiment == "wordcheck") {
    if (c.words.expansions < 1) out.push_back({"words.expansions", "must be >= 1"});
    if (c.words.steps < 0) out.push_back({"words.steps", "must be >= 0"});
  }
  if (c.experiment == "chernoff" || c.experiment == "feynman") {
    int m = 2;
    if (c.experiment == "chernoff") {
      m = family_size;
      if (m < 2) out.push_back({"family", "chernoff needs at least 2 members"});
    } else if (!c.family.h0 != !c.family.h1) {
      out.push_back({"family", "set both h0 and h1, or neither"});
    }
    if (c.uniform.empty()) out.push_back({"partition.uniform", "required"});
    for (int N : c.uniform) {
      if (N < 1 || (m >= 1 && N % m != 0)) {
        out.push_back({"partition.uniform",
                       "N = " + std::to_string(N) +
                           " must be a positive multiple of " + std::to_string(m)});
      }
    }
  }
  if (c.experiment == "monitor") {
    if (c.rank < 1 || c.rank >= c.dim) {
      out.push_back({"monitor.rank", "must lie in 1..dim-1"});
    }
    if (c.partitions.empty() && c.uniform.empty()) {
      out.push_back({"partition", "set uniform or explicit.N"});
    }
  }
  if (c.experiment == "reduce") {
    if (c.grid.empty() || !std::is_sorted(c.grid.begin(), c.grid.end())) {
      out.push_back({"reduce.grid", "must be a nonempty increasing list"});
    }
    if (c.depths.size() > 1) out.push_back({"depth", "reduce takes one depth"});
    if (c.partitions.empty() && c.uniform.empty()) {
      out.push_back({"partition", "set uniform or explicit.N"});
    }
    if (!c.family.matrices.empty() && c.family.matrices.size() != 2) {
      out.push_back({"family", "reduce takes matrix.1 = A0 and matrix.2 = A1"});
    }
  }
  if (c.experiment == "spectrum") {
    if (family_size < 1) out.push_back({"family", "no family members"});
    if (c.family.matrices.empty() && c.family.kind != "unitary" &&
        c.family.kind != "contraction") {
      out.push_back({"family.kind", "must be 'unitary' or 'contraction'"});
    }
    if (c.depths.size() > 1) out.push_back({"depth", "spectrum takes one depth"});
  }
  return out;
}

}  // namespace dilationlab
