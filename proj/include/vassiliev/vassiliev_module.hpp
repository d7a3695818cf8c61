#pragma once

// Expansions K = sum_i v_i(K) K_i in the degree-n Vassiliev module, checked
// numerically by evaluating probe invariants on both sides.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "vassiliev/error.hpp"
#include "vassiliev/invariants.hpp"
#include "vassiliev/knot_table.hpp"
#include "vassiliev/rational.hpp"

namespace vassiliev {

struct InvariantProbe {
  std::string name;
  int degree = 0;
  std::function<Rational(const KnotRecord&)> evaluate;
};

class InvariantRegistry {
 public:
  void add(InvariantProbe probe) {
    auto name = probe.name;
    probes_.insert_or_assign(std::move(name), std::move(probe));
  }

  /// A user-supplied invariant whose values come from each record's
  /// `expected` map, e.g. degree-4 invariants with no formula here.
  void add_table_invariant(const std::string& name, int degree) {
    add({name, degree, [name](const KnotRecord& k) {
           if (auto v = k.expected_value(name)) return *v;
           throw Error(ErrorKind::kMissingValue, "knot " + k.name + " has no value for " + name);
         }});
  }

  bool contains(const std::string& name) const { return probes_.count(name) != 0; }

  const InvariantProbe& at(const std::string& name) const {
    auto it = probes_.find(name);
    if (it == probes_.end()) throw Error(ErrorKind::kUnknownInvariant, "no invariant named '" + name + "'");
    return it->second;
  }

  /// v2 and v3 by every implemented method; "v2" and "v3" are the
  /// Polyak-Viro and five-pattern values.
  static InvariantRegistry builtin(const FormulaSet& f = FormulaSet::bundled()) {
    InvariantRegistry r;
    auto code_probe = [](std::string name, int degree, std::function<Rational(const GaussCode&)> fn) {
      return InvariantProbe{std::move(name), degree, [fn = std::move(fn)](const KnotRecord& k) { return fn(k.code); }};
    };
    r.add(code_probe("v2", 2, [&f](const GaussCode& c) { return v2_polyak_viro_value(c, f); }));
    r.add(code_probe("v3", 3, [&f](const GaussCode& c) { return v3_theorem_value(c, f); }));
    r.add(code_probe("v2_lannes", 2, [](const GaussCode& c) { return v2_lannes_value(c); }));
    r.add(code_probe("v2_pv", 2, [&f](const GaussCode& c) { return v2_polyak_viro_value(c, f); }));
    r.add(code_probe("v3_lannes", 3, [](const GaussCode& c) { return v3_lannes_value(c); }));
    r.add(code_probe("v3_pv", 3, [&f](const GaussCode& c) { return v3_polyak_viro_value(c, f); }));
    r.add(code_probe("v3_thm", 3, [&f](const GaussCode& c) { return v3_theorem_value(c, f); }));
    return r;
  }

 private:
  std::map<std::string, InvariantProbe> probes_;
};

/// Rational combination of named invariants.
using LinearForm = std::map<std::string, Rational>;

inline Rational evaluate(const LinearForm& form, const InvariantRegistry& registry, const KnotRecord& knot) {
  Rational total = 0;
  for (const auto& [name, weight] : form) total += weight * registry.at(name).evaluate(knot);
  return total;
}

struct ExpansionTerm {
  LinearForm coefficient;
  std::string basis;  // knot name; may be symbolic (absent from any table)
};

struct Expansion {
  int degree = 0;
  std::vector<ExpansionTerm> terms;

  /// Distinct basis names in order of appearance.
  std::vector<std::string> basis_names() const {
    std::vector<std::string> out;
    for (const auto& t : terms) {
      if (std::find(out.begin(), out.end(), t.basis) == out.end()) out.push_back(t.basis);
    }
    return out;
  }
};

inline Expansion parse_expansion(const nlohmann::json& j) {
  try {
    Expansion e;
    e.degree = j.at("degree").get<int>();
    for (const auto& term : j.at("terms")) {
      ExpansionTerm t;
      t.basis = term.at("knot").get<std::string>();
      for (const auto& [name, weight] : term.at("coeff").items()) {
        t.coefficient[name] = parse_rational(weight.get<std::string>());
      }
      e.terms.push_back(std::move(t));
    }
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::kParseError, std::string("expansion: ") + ex.what());
  }
}

inline Expansion load_expansion(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path.string());
  try {
    return parse_expansion(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& ex) {
    throw Error(ErrorKind::kParseError, path.string() + ": " + ex.what());
  }
}

inline nlohmann::json to_json(const Expansion& e) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : e.terms) {
    nlohmann::json coeff = nlohmann::json::object();
    for (const auto& [name, weight] : t.coefficient) coeff[name] = format_rational(weight);
    terms.push_back({{"coeff", coeff}, {"knot", t.basis}});
  }
  return {{"degree", e.degree}, {"terms", terms}};
}

/// probe name -> basis name -> value.
using BasisValues = std::map<std::string, std::map<std::string, Rational>>;

struct Residual {
  std::string probe;
  std::string knot;
  Rational value;
};

struct ResidualReport {
  std::vector<Residual> residuals;

  bool all_zero() const {
    return std::all_of(residuals.begin(), residuals.end(), [](const Residual& r) { return r.value == 0; });
  }
};

namespace detail {

inline void check_probes(const Expansion& e, std::span<const std::string> probes, const InvariantRegistry& registry) {
  for (const auto& name : probes) {
    const auto& probe = registry.at(name);
    if (probe.degree > e.degree) {
      throw Error(ErrorKind::kDegreeTooHigh, name + " has degree " + std::to_string(probe.degree) +
                                                 " above the expansion degree " + std::to_string(e.degree));
    }
  }
  for (const auto& t : e.terms) {
    for (const auto& [name, weight] : t.coefficient) registry.at(name);
  }
}

}  // namespace detail

/// r(p, K) = p(K) - sum_i coeff_i(K) * p(K_i) for every probe p and corpus
/// knot K. Basis values come from `known` when given, otherwise from the
/// record of that name in `basis_table`.
inline ResidualReport check_expansion(const Expansion& e, std::span<const std::string> probes,
                                      const InvariantRegistry& registry, std::span<const KnotRecord> corpus,
                                      std::span<const KnotRecord> basis_table, const BasisValues& known = {}) {
  detail::check_probes(e, probes, registry);
  ResidualReport report;
  for (const auto& name : probes) {
    const auto& probe = registry.at(name);
    std::map<std::string, Rational> basis_value;
    for (const auto& basis : e.basis_names()) {
      if (auto p = known.find(name); p != known.end()) {
        if (auto v = p->second.find(basis); v != p->second.end()) {
          basis_value[basis] = v->second;
          continue;
        }
      }
      auto it = std::find_if(basis_table.begin(), basis_table.end(), [&](const KnotRecord& k) { return k.name == basis; });
      if (it == basis_table.end()) {
        throw Error(ErrorKind::kMissingValue, "no value of " + name + " for basis knot " + basis);
      }
      basis_value[basis] = probe.evaluate(*it);
    }
    for (const auto& knot : corpus) {
      Rational rhs = 0;
      for (const auto& t : e.terms) rhs += evaluate(t.coefficient, registry, knot) * basis_value.at(t.basis);
      report.residuals.push_back({name, knot.name, probe.evaluate(knot) - rhs});
    }
  }
  return report;
}

/// A combination of corpus rows whose left sides cancel but right sides do
/// not: proof that no basis values satisfy the expansion for this probe.
struct InconsistencyCertificate {
  std::string probe;
  std::vector<std::pair<std::string, Rational>> multipliers;  // corpus knot -> row weight
  Rational residual;                                          // the "0 = residual" it derives
};

struct BasisSolution {
  BasisValues values;
  std::vector<InconsistencyCertificate> inconsistencies;

  bool consistent() const noexcept { return inconsistencies.empty(); }
};

/// Treats every p(K_i) as unknown and solves the corpus equations
/// sum_i coeff_i(K) x_i = p(K) exactly, one system per probe.
inline BasisSolution solve_basis_values(const Expansion& e, std::span<const std::string> probes,
                                        const InvariantRegistry& registry, std::span<const KnotRecord> corpus) {
  detail::check_probes(e, probes, registry);
  const auto unknowns = e.basis_names();
  const std::size_t n = unknowns.size();
  if (corpus.size() <= e.terms.size()) {
    throw Error(ErrorKind::kUnderdeterminedSystem, "corpus of " + std::to_string(corpus.size()) +
                                                       " knots does not exceed " + std::to_string(e.terms.size()) +
                                                       " terms");
  }
  BasisSolution solution;
  for (const auto& name : probes) {
    const auto& probe = registry.at(name);
    const std::size_t rows = corpus.size();
    // Each row: n coefficients, right side, then the row's provenance.
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(n + 1 + rows, 0));
    for (std::size_t r = 0; r < rows; ++r) {
      for (const auto& t : e.terms) {
        const auto col = static_cast<std::size_t>(std::find(unknowns.begin(), unknowns.end(), t.basis) - unknowns.begin());
        a[r][col] += evaluate(t.coefficient, registry, corpus[r]);
      }
      a[r][n] = probe.evaluate(corpus[r]);
      a[r][n + 1 + r] = 1;
    }
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows; ++col) {
      std::size_t pivot = rank;
      while (pivot < rows && a[pivot][col] == 0) ++pivot;
      if (pivot == rows) continue;
      std::swap(a[rank], a[pivot]);
      const Rational lead = a[rank][col];
      for (auto& x : a[rank]) x /= lead;
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == rank || a[r][col] == 0) continue;
        const Rational factor = a[r][col];
        for (std::size_t c = 0; c < a[r].size(); ++c) a[r][c] -= factor * a[rank][c];
      }
      pivot_col.push_back(col);
      ++rank;
    }
    bool consistent = true;
    for (std::size_t r = rank; r < rows && consistent; ++r) {
      if (a[r][n] == 0) continue;
      InconsistencyCertificate cert{name, {}, a[r][n]};
      for (std::size_t k = 0; k < rows; ++k) {
        if (a[r][n + 1 + k] != 0) cert.multipliers.emplace_back(corpus[k].name, a[r][n + 1 + k]);
      }
      solution.inconsistencies.push_back(std::move(cert));
      consistent = false;
    }
    if (!consistent) continue;
    if (rank < n) {
      throw Error(ErrorKind::kUnderdeterminedSystem,
                  "probe " + name + " determines only " + std::to_string(rank) + " of " + std::to_string(n) +
                      " basis values");
    }
    for (std::size_t i = 0; i < rank; ++i) solution.values[name][unknowns[pivot_col[i]]] = a[i][n];
  }
  return solution;
}

/// Corpus knots whose probe values match the solved values of `basis`.
inline std::vector<std::string> identify_basis(const BasisSolution& solution, const std::string& basis,
                                               const InvariantRegistry& registry, std::span<const KnotRecord> corpus) {
  std::vector<std::string> out;
  for (const auto& knot : corpus) {
    bool match = !solution.values.empty();
    for (const auto& [probe, values] : solution.values) {
      auto it = values.find(basis);
      if (it == values.end() || registry.at(probe).evaluate(knot) != it->second) {
        match = false;
        break;
      }
    }
    if (match) out.push_back(knot.name);
  }
  return out;
}

}  // namespace vassiliev
