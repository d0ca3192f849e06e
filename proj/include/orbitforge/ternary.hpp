#pragma once

// Stratifying sets for GL_n on forms of degree d and the classification of
// critical points on the strata of ternary forms.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orbitforge/lattice.hpp"
#include "orbitforge/nicecrit.hpp"
#include "orbitforge/parallel.hpp"
#include "orbitforge/ratgeom.hpp"
#include "orbitforge/reps.hpp"

namespace orbitforge {

/// Stratum labels are kept with internal (negative) signs, permuted so that
/// -beta is ascending; -beta is then the closed-chamber "type" of the label.
inline RatVec normalize_label(const RatVec& beta) { return -chamber_canonical(-beta); }

inline RatVec label_type(const RatVec& beta) { return chamber_canonical(-beta); }

/// Orders labels by |beta|^2 descending, then by type.
inline bool label_order(const RatVec& a, const RatVec& b) {
  const Rational na = norm2(a);
  const Rational nb = norm2(b);
  if (na != nb) return na > nb;
  return label_type(a) < label_type(b);
}

/// mcc of every pair of weights (a weight paired with itself included) whose
/// difference is not a root, normalized and deduplicated.
inline std::vector<RatVec> stratifying_set(std::size_t n, std::size_t d) {
  if (n == 0 || d == 0) throw std::invalid_argument("stratifying_set needs n >= 1 and d >= 1");
  const RepSpace space = RepSpace::poly(n, d);
  const PointSet weights = all_weights(space);
  const RootSystem roots = gl_roots(n);
  const auto per_row = parallel_map<std::set<RatVec>>(weights.size(), [&](std::size_t i) {
    std::set<RatVec> found;
    for (std::size_t j = i; j < weights.size(); ++j) {
      if (j != i && is_root_difference(weights[i], weights[j], roots)) continue;
      const PointSet pair = i == j ? PointSet({weights[i]}) : PointSet({weights[i], weights[j]});
      found.insert(normalize_label(mcc(pair)));
    }
    return found;
  });
  std::set<RatVec> merged;
  for (const auto& s : per_row) merged.insert(s.begin(), s.end());
  std::vector<RatVec> out(merged.begin(), merged.end());
  std::sort(out.begin(), out.end(), label_order);
  return out;
}

/// Basis monomials whose weight lies on Omega(beta) = {<., beta> = |beta|^2}.
inline std::vector<Index> omega_monomials(const RatVec& beta, std::size_t d) {
  const RepSpace space = RepSpace::poly(beta.size(), d);
  const Rational target = norm2(beta);
  std::vector<Index> out;
  for (const auto& idx : space.basis())
    if (dot(weight(space, idx), beta) == target) out.push_back(idx);
  return out;
}

inline PointSet omega_weights(const RatVec& beta, std::size_t d) {
  const RepSpace space = RepSpace::poly(beta.size(), d);
  std::vector<RatVec> w;
  for (const auto& idx : omega_monomials(beta, d)) w.push_back(weight(space, idx));
  return PointSet::deduplicated(w);
}

struct StratumSolution {
  std::vector<Index> monomials;  // a maximal nice subset of the Omega monomials
  CriticalFamily family;
};

struct Stratum {
  RatVec beta;
  std::vector<Index> omega;
  std::vector<StratumSolution> solutions;  // subsets admitting a nonnegative solution
  bool in_stratifying_set = true;

  RatVec type() const { return label_type(beta); }
  bool empty() const { return solutions.empty(); }

  /// Largest dimension of a solution family with every coefficient nonzero.
  std::optional<std::size_t> family_dimension() const {
    std::optional<std::size_t> best;
    for (const auto& s : solutions)
      if (s.family.strictly_positive && (!best || s.family.dimension() > *best)) best = s.family.dimension();
    return best;
  }
};

inline Stratum classify_stratum(const RatVec& beta, std::size_t d) {
  const std::size_t n = beta.size();
  const RepSpace space = RepSpace::poly(n, d);
  const Group gl(Subgroup::gl, n);
  Stratum s;
  s.beta = beta;
  s.omega = omega_monomials(beta, d);
  if (s.omega.empty()) return s;
  for (auto& subset : maximal_nice_subsets(space, s.omega, gl)) {
    std::vector<RatVec> w;
    std::vector<Rational> norms;
    for (const auto& idx : subset) {
      w.push_back(weight(space, idx));
      norms.push_back(basis_norm2(space, idx));
    }
    CriticalFamily fam = critical_coefficients(w, norms, beta);
    if (fam.feasible) s.solutions.push_back({std::move(subset), std::move(fam)});
  }
  return s;
}

/// Every label of the stratifying set, plus any extra labels (such as a pair
/// excluded because its weights are root-related) so that their emptiness is reported.
inline std::vector<Stratum> classify(std::size_t d, const std::vector<RatVec>& extra = {}, std::size_t n = 3) {
  std::vector<RatVec> labels = stratifying_set(n, d);
  const std::size_t regular = labels.size();
  for (const auto& e : extra) {
    const RatVec b = normalize_label(e);
    if (std::find(labels.begin(), labels.end(), b) == labels.end()) labels.push_back(b);
  }
  auto strata = parallel_map<Stratum>(labels.size(), [&](std::size_t i) { return classify_stratum(labels[i], d); });
  for (std::size_t i = regular; i < strata.size(); ++i) strata[i].in_stratifying_set = false;
  return strata;
}

/// Labels of pairs that are skipped because their weights differ by a root,
/// and that no admissible pair produces.
inline std::vector<RatVec> excluded_pair_labels(std::size_t n, std::size_t d) {
  const std::vector<RatVec> admitted = stratifying_set(n, d);
  const RepSpace space = RepSpace::poly(n, d);
  const PointSet weights = all_weights(space);
  const RootSystem roots = gl_roots(n);
  std::set<RatVec> out;
  for (std::size_t i = 0; i < weights.size(); ++i)
    for (std::size_t j = i + 1; j < weights.size(); ++j) {
      if (!is_root_difference(weights[i], weights[j], roots)) continue;
      const RatVec b = normalize_label(mcc(PointSet({weights[i], weights[j]})));
      if (std::find(admitted.begin(), admitted.end(), b) == admitted.end()) out.insert(b);
    }
  std::vector<RatVec> v(out.begin(), out.end());
  std::sort(v.begin(), v.end(), label_order);
  return v;
}


/// One row of a printed classification table of quartic critical points.
struct TableRow {
  enum class Kind { minimal, unique, family, empty };
  struct Representative {
    std::vector<Index> monomials;
    std::vector<Rational> coefficients;
  };

  std::string label;
  RatVec type;  // positive convention: -beta sorted ascending
  Kind kind = Kind::unique;
  std::vector<Index> monomials;
  std::vector<Rational> squared_coefficients;
  std::size_t family_dimension = 0;
  std::vector<Representative> representatives;
};

struct RowCheck {
  std::string label;
  bool passed = false;
  std::string detail;
};

inline const Stratum* find_stratum(const std::vector<Stratum>& strata, const RatVec& type) {
  const RatVec t = chamber_canonical(type);
  for (const auto& s : strata)
    if (s.type() == t) return &s;
  return nullptr;
}

namespace detail {

inline bool same_monomials(std::vector<Index> a, std::vector<Index> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace detail

/// Compares one printed row against the computed strata.
inline RowCheck check_row(const TableRow& row, const std::vector<Stratum>& strata, std::size_t d) {
  RowCheck out{row.label, false, ""};
  const Stratum* s = find_stratum(strata, row.type);
  if (!s) {
    out.detail = "type " + row.type.str() + " not produced";
    return out;
  }
  switch (row.kind) {
    case TableRow::Kind::empty:
      out.passed = s->empty();
      out.detail = out.passed ? "empty" : "expected no critical point, found " + std::to_string(s->solutions.size());
      return out;
    case TableRow::Kind::minimal: {
      const RatVec all = mcc(all_weights(RepSpace::poly(row.type.size(), d)));
      out.passed = all == s->beta && s->family_dimension().has_value();
      out.detail = out.passed ? "minimal stratum" : "type is not the minimum of the full weight set";
      return out;
    }
    case TableRow::Kind::unique: {
      for (const auto& sol : s->solutions) {
        if (!detail::same_monomials(sol.monomials, row.monomials)) continue;
        if (!sol.family.strictly_positive || !sol.family.unique()) {
          out.detail = "solution on the printed monomials is not a unique positive point";
          return out;
        }
        const auto sq = sol.family.squared_coefficients();
        for (std::size_t i = 0; i < row.monomials.size(); ++i) {
          const auto it = std::find(sol.monomials.begin(), sol.monomials.end(), row.monomials[i]);
          const Rational got = sq[static_cast<std::size_t>(it - sol.monomials.begin())];
          if (got != row.squared_coefficients[i]) {
            out.detail = "squared coefficient " + to_string(got) + " != " + to_string(row.squared_coefficients[i]);
            return out;
          }
        }
        out.passed = true;
        out.detail = "coefficients match";
        return out;
      }
      out.detail = "printed monomials are not a maximal nice subset with a solution";
      return out;
    }
    case TableRow::Kind::family: {
      const auto dim = s->family_dimension();
      if (!dim || *dim != row.family_dimension) {
        out.detail = "family dimension " + (dim ? std::to_string(*dim) : std::string("none")) + " != " +
                     std::to_string(row.family_dimension);
        return out;
      }
      const RepSpace space = RepSpace::poly(row.type.size(), d);
      const Group gl(Subgroup::gl, row.type.size());
      for (const auto& rep : row.representatives) {
        RepVector v(space);
        for (std::size_t i = 0; i < rep.monomials.size(); ++i) v.set(rep.monomials[i], Surd(rep.coefficients[i]));
        const Verdict verdict = is_distinguished(v, gl);
        if (verdict.outcome != Outcome::distinguished || label_type(verdict.beta) != s->type()) {
          out.detail = "representative is not distinguished in this stratum";
          return out;
        }
      }
      out.passed = true;
      out.detail = "family dimension " + std::to_string(*dim);
      return out;
    }
  }
  return out;
}

}  // namespace orbitforge
