#pragma once

// Nice spaces, Gram matrices, the positive-solution criterion and exact
// critical coefficients on nice spans.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitforge/lattice.hpp"
#include "orbitforge/ratgeom.hpp"
#include "orbitforge/reps.hpp"
#include "orbitforge/simplex.hpp"

namespace orbitforge {

/// A basis vector of W whose image under a root vector has a component on W.
struct NiceWitness {
  Index source;
  Index target;
  RatVec alpha_i;  // projected weight of source
  RatVec alpha_j;  // projected weight of target
  RatVec gamma;    // alpha_j - alpha_i
};

struct NiceResult {
  bool nice = true;
  bool by_fast_path = false;
  std::optional<NiceWitness> witness;
};

/// Projected weights of the given basis vectors, in order (duplicates kept).
inline std::vector<RatVec> projected_weights(const RepSpace& space, const std::vector<Index>& basis, const Group& g) {
  std::vector<RatVec> out;
  for (const auto& idx : basis) out.push_back(g.project(weight(space, idx)));
  return out;
}

/// No two projected weights differ by a root: sufficient for niceness.
inline bool nice_by_fast_path(const std::vector<RatVec>& weights, const RootSystem& roots) {
  for (std::size_t a = 0; a < weights.size(); ++a)
    for (std::size_t b = a + 1; b < weights.size(); ++b)
      if (is_root_difference(weights[a], weights[b], roots)) return false;
  return true;
}

/// Full check on span{basis}: for each basis vector b of weight alpha and each
/// root gamma with alpha + gamma a weight of W, pi(g_gamma) b must have no
/// component along W. Both backends map basis vectors to combinations of
/// basis vectors, so the test is exact and combinatorial.
inline NiceResult is_nice_full(const RepSpace& space, const std::vector<Index>& basis, const Group& g) {
  const std::vector<RatVec> w = projected_weights(space, basis, g);
  const std::set<Index> members(basis.begin(), basis.end());
  for (std::size_t a = 0; a < basis.size(); ++a) {
    std::set<RatVec> tried;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const RatVec gamma = w[b] - w[a];
      if (!g.roots().contains(gamma) || !tried.insert(gamma).second) continue;
      RepVector source(space);
      source.set(basis[a], Surd(1));
      for (const RatMatrix& y : g.root_space(gamma)) {
        const RepVector image = apply_matrix(y, source);
        for (const auto& [k, c] : image.terms())
          if (members.count(k)) return {false, false, NiceWitness{basis[a], k, w[a], g.project(weight(space, k)), gamma}};
      }
    }
  }
  return {true, false, std::nullopt};
}

inline NiceResult is_nice(const RepSpace& space, const std::vector<Index>& basis, const Group& g) {
  if (nice_by_fast_path(projected_weights(space, basis, g), g.roots())) return {true, true, std::nullopt};
  return is_nice_full(space, basis, g);
}

/// Niceness of the span of every basis vector whose (unprojected) weight lies in `weights`.
inline NiceResult is_nice(const RepSpace& space, const PointSet& weights, const Group& g) {
  std::vector<Index> basis;
  std::set<RatVec> hit;
  for (const auto& idx : space.basis()) {
    const RatVec wt = weight(space, idx);
    if (weights.contains(wt)) {
      basis.push_back(idx);
      hit.insert(wt);
    }
  }
  for (const auto& wt : weights)
    if (!hit.count(wt)) throw std::invalid_argument("not a weight of the representation: " + wt.str());
  return is_nice(space, basis, g);
}

/// Niceness of the span of the basis vectors in the support of v.
template <class S>
NiceResult is_nice(const BasicRepVector<S>& v, const Group& g) {
  std::vector<Index> basis;
  for (const auto& [k, c] : v.terms()) basis.push_back(k);
  return is_nice(v.space(), basis, g);
}

/// Support of v seen by the group: projected weights, deduplicated.
template <class S>
PointSet group_support(const BasicRepVector<S>& v, const Group& g) {
  if (v.is_zero()) throw std::invalid_argument("empty support");
  std::vector<RatVec> w;
  for (const auto& [k, c] : v.terms()) w.push_back(g.project(weight(v.space(), k)));
  return PointSet::deduplicated(w);
}

inline RatMatrix gram(const PointSet& weights) {
  RatMatrix u(weights.size(), weights.size());
  for (std::size_t p = 0; p < weights.size(); ++p)
    for (std::size_t q = 0; q < weights.size(); ++q) u(p, q) = dot(weights[p], weights[q]);
  return u;
}

struct PositiveSolution {
  RatVec x;  // strictly positive, sums to 1
  Rational lambda;
};

/// Strictly positive x with U x = lambda 1 and sum x = 1, found by an exact LP
/// that maximizes min x_i directly on the Gram system. Singular U is fine.
inline std::optional<PositiveSolution> positive_solution(const RatMatrix& u) {
  const std::size_t s = u.rows();
  if (s == 0) return std::nullopt;
  // Variables d_1..d_s, t, lambda+, lambda-; x = d + t.
  const std::size_t cols = s + 3;
  RatMatrix a(s + 1, cols);
  RatVec b(s + 1);
  for (std::size_t p = 0; p < s; ++p) {
    Rational row_sum = 0;
    for (std::size_t q = 0; q < s; ++q) {
      a(p, q) = u(p, q);
      row_sum += u(p, q);
    }
    a(p, s) = row_sum;
    a(p, s + 1) = -1;
    a(p, s + 2) = 1;
  }
  for (std::size_t q = 0; q < s; ++q) a(s, q) = 1;
  a(s, s) = static_cast<long>(s);
  b[s] = 1;
  RatVec cost(cols);
  cost[s] = 1;
  const LpResult lp = maximize(a, b, cost);
  if (lp.status == LpStatus::infeasible) return std::nullopt;
  if (lp.status == LpStatus::unbounded) throw std::logic_error("positive_solution: bounded program reported unbounded");
  if (lp.x[s] <= 0) return std::nullopt;
  PositiveSolution sol{RatVec(s), lp.x[s + 1] - lp.x[s + 2]};
  for (std::size_t q = 0; q < s; ++q) sol.x[q] = lp.x[q] + lp.x[s];
  return sol;
}

/// beta_v = mcc of the group support of v.
template <class S>
RatVec stratum_label(const BasicRepVector<S>& v, const Group& g) {
  return mcc(group_support(v, g));
}

enum class Outcome { distinguished, not_distinguished, not_nice };

inline std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::distinguished: return "distinguished";
    case Outcome::not_distinguished: return "not_distinguished";
    case Outcome::not_nice: return "not_nice";
  }
  return "?";
}

struct Verdict {
  Outcome outcome = Outcome::not_nice;
  PointSet weights;       // group support
  RatVec beta;            // mcc(weights), set unless not_nice
  RatVec certificate;     // strictly positive convex coefficients over weights
  std::optional<NiceWitness> witness;
  bool nice_by_fast_path = false;
};

/// Distinguished-orbit test for an element of a nice span, decided by whether
/// mcc of its weights lies in the relative interior of their hull.
inline Verdict verdict_for_weights(const PointSet& weights) {
  Verdict v;
  v.weights = weights;
  v.beta = mcc(weights);
  const InteriorCertificate cert = relative_interior_certificate(weights, v.beta);
  if (cert.interior) {
    v.outcome = Outcome::distinguished;
    v.certificate = cert.coefficients;
  } else {
    v.outcome = Outcome::not_distinguished;
  }
  return v;
}

template <class S>
Verdict is_distinguished(const BasicRepVector<S>& w, const Group& g) {
  const NiceResult nice = is_nice(w, g);
  if (!nice.nice) {
    Verdict v;
    v.outcome = Outcome::not_nice;
    v.weights = group_support(w, g);
    v.witness = nice.witness;
    return v;
  }
  Verdict v = verdict_for_weights(group_support(w, g));
  v.nice_by_fast_path = nice.by_fast_path;
  return v;
}

/// Solutions c of sum c_i alpha_i = beta, sum c_i = 1 (c_i are the squared
/// masses coeff_i^2 |b_i|^2 of a unit vector), as particular + kernel.
struct CriticalFamily {
  bool feasible = false;            // some c >= 0
  bool strictly_positive = false;   // some c > 0
  RatVec particular;                // maximizes min c_i over the nonnegative solutions
  std::vector<RatVec> kernel;       // directions of the affine solution set
  std::vector<Rational> norms;      // basis norms |b_i|^2

  std::size_t dimension() const { return kernel.size(); }
  bool unique() const { return kernel.empty(); }

  /// Squared coefficient magnitudes c_i / |b_i|^2 of the particular solution.
  std::vector<Rational> squared_coefficients() const {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < particular.size(); ++i) out.push_back(particular[i] / norms[i]);
    return out;
  }
};

inline CriticalFamily critical_coefficients(const std::vector<RatVec>& weights, const std::vector<Rational>& norms,
                                            const RatVec& beta) {
  if (weights.empty() || weights.size() != norms.size()) throw std::invalid_argument("critical_coefficients: bad input sizes");
  const std::size_t k = weights.size();
  const std::size_t n = beta.size();
  RatMatrix a(n + 1, k);
  RatVec b(n + 1);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t r = 0; r < n; ++r) a(r, i) = weights[i][r];
    a(n, i) = 1;
  }
  for (std::size_t r = 0; r < n; ++r) b[r] = beta[r];
  b[n] = 1;
  CriticalFamily fam;
  fam.norms = norms;
  fam.kernel = nullspace(a);
  // max t s.t. a (d + t 1) = b, d >= 0, t >= 0
  RatMatrix lp_a(n + 1, k + 1);
  for (std::size_t r = 0; r <= n; ++r) {
    Rational row = 0;
    for (std::size_t i = 0; i < k; ++i) {
      lp_a(r, i) = a(r, i);
      row += a(r, i);
    }
    lp_a(r, k) = row;
  }
  RatVec cost(k + 1);
  cost[k] = 1;
  const LpResult lp = maximize(lp_a, b, cost);
  if (lp.status != LpStatus::optimal) return fam;
  fam.feasible = true;
  fam.strictly_positive = lp.x[k] > 0;
  fam.particular = RatVec(k);
  for (std::size_t i = 0; i < k; ++i) fam.particular[i] = lp.x[i] + lp.x[k];
  return fam;
}

/// Unit vector with squared masses c on the given basis indices; signs default to +.
inline RepVector assemble_from_masses(const RepSpace& space, const std::vector<Index>& basis, const RatVec& masses,
                                      const std::vector<int>& signs = {}) {
  RepVector v(space);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const int sg = signs.empty() ? 1 : signs[i];
    v.set(basis[i], Surd::signed_sqrt(masses[i] / basis_norm2(space, basis[i]), sg));
  }
  return v;
}

/// Maximal subsets of `basis` whose span is nice. Candidates are the maximal
/// cliques of the graph joining basis vectors whose projected weights do not
/// differ by a root (Bron-Kerbosch); each candidate is confirmed by the full
/// check, and root-related additions are then tried greedily.
inline std::vector<std::vector<Index>> maximal_nice_subsets(const RepSpace& space, const std::vector<Index>& basis,
                                                            const Group& g) {
  const std::size_t n = basis.size();
  const std::vector<RatVec> w = projected_weights(space, basis, g);
  std::vector<std::vector<bool>> compatible(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      compatible[a][b] = a != b && !is_root_difference(w[a], w[b], g.roots());

  std::vector<std::vector<std::size_t>> cliques;
  auto bron_kerbosch = [&](auto&& self, std::vector<std::size_t> r, std::vector<std::size_t> p,
                           std::vector<std::size_t> x) -> void {
    if (p.empty() && x.empty()) {
      cliques.push_back(r);
      return;
    }
    while (!p.empty()) {
      const std::size_t v = p.front();
      std::vector<std::size_t> r2 = r, p2, x2;
      r2.push_back(v);
      for (auto u : p)
        if (compatible[v][u]) p2.push_back(u);
      for (auto u : x)
        if (compatible[v][u]) x2.push_back(u);
      self(self, r2, p2, x2);
      p.erase(p.begin());
      x.push_back(v);
    }
  };
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  bron_kerbosch(bron_kerbosch, {}, all, {});

  std::set<std::vector<std::size_t>> found;
  for (auto clique : cliques) {
    for (std::size_t extra = 0; extra < n; ++extra) {
      if (std::find(clique.begin(), clique.end(), extra) != clique.end()) continue;
      std::vector<std::size_t> trial = clique;
      trial.push_back(extra);
      std::vector<Index> span;
      for (auto i : trial) span.push_back(basis[i]);
      if (is_nice_full(space, span, g).nice) clique = trial;
    }
    std::sort(clique.begin(), clique.end());
    found.insert(clique);
  }
  // Drop sets contained in another.
  std::vector<std::vector<Index>> out;
  for (const auto& s : found) {
    bool contained = false;
    for (const auto& t : found)
      if (t != s && std::includes(t.begin(), t.end(), s.begin(), s.end())) contained = true;
    if (contained) continue;
    std::vector<Index> span;
    for (auto i : s) span.push_back(basis[i]);
    if (!is_nice_full(space, span, g).nice) throw std::logic_error("maximal_nice_subsets: candidate failed the full check");
    out.push_back(std::move(span));
  }
  return out;
}

}  // namespace orbitforge
