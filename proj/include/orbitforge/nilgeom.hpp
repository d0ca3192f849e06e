#pragma once

// Nilpotent Lie brackets on R^n: validation, Ricci operator, symplectic
// derivations and minimal compatible metrics for the form omega_cn.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitforge/flow.hpp"
#include "orbitforge/lattice.hpp"
#include "orbitforge/linalg.hpp"
#include "orbitforge/nicecrit.hpp"
#include "orbitforge/reps.hpp"

namespace orbitforge {

/// Brackets are bracket-backend vectors: term (i, j, k) with i < j is <mu(e_i, e_j), e_k>.
using LieBracket = RepVector;

struct Violation {
  enum class Kind { jacobi, not_nilpotent, not_two_step, not_closed };
  Kind kind;
  std::array<int, 3> triple{};  // 0-based basis triple witnessing the failure
  std::string detail;
};

inline std::string to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::jacobi: return "jacobi";
    case Violation::Kind::not_nilpotent: return "not_nilpotent";
    case Violation::Kind::not_two_step: return "not_two_step";
    case Violation::Kind::not_closed: return "not_closed";
  }
  return "?";
}

struct ValidationReport {
  bool ok = true;
  bool nilpotent = true;
  bool two_step = true;
  std::vector<std::size_t> central_series;  // dimensions of the lower central series
  std::vector<Violation> violations;
};

namespace detail {

class Structure {
 public:
  explicit Structure(const LieBracket& mu) : n_(mu.space().n), t_(bracket_tensor(mu)) {}

  std::size_t n() const { return n_; }
  const Surd& operator()(std::size_t p, std::size_t q, std::size_t k) const { return t_[(p * n_ + q) * n_ + k]; }

  /// mu(u, v) for coordinate vectors.
  std::vector<Surd> apply(const std::vector<Surd>& u, const std::vector<Surd>& v) const {
    std::vector<Surd> out(n_, Surd(0));
    for (std::size_t p = 0; p < n_; ++p) {
      if (u[p].is_zero()) continue;
      for (std::size_t q = 0; q < n_; ++q) {
        if (v[q].is_zero()) continue;
        const Surd uv = u[p] * v[q];
        for (std::size_t k = 0; k < n_; ++k)
          if (!(*this)(p, q, k).is_zero()) out[k] += uv * (*this)(p, q, k);
      }
    }
    return out;
  }

  std::vector<Surd> basis(std::size_t i) const {
    std::vector<Surd> e(n_, Surd(0));
    e[i] = Surd(1);
    return e;
  }

 private:
  std::size_t n_;
  std::vector<Surd> t_;
};

inline bool all_zero(const std::vector<Surd>& v) {
  return std::all_of(v.begin(), v.end(), [](const Surd& s) { return s.is_zero(); });
}

inline std::size_t span_rank(const std::vector<std::vector<Surd>>& vectors, std::size_t n) {
  if (vectors.empty()) return 0;
  Matrix<Surd> m(vectors.size(), n);
  for (std::size_t r = 0; r < vectors.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = vectors[r][c];
  return rank_over_field(m);
}

}  // namespace detail

inline ValidationReport validate(const LieBracket& mu, bool require_two_step = false) {
  if (mu.space().backend != Backend::bracket) throw std::invalid_argument("validate: not a bracket");
  const detail::Structure s(mu);
  const std::size_t n = s.n();
  ValidationReport rep;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const auto ei = s.basis(i), ej = s.basis(j), ek = s.basis(k);
        std::vector<Surd> sum = s.apply(s.apply(ei, ej), ek);
        const auto b = s.apply(s.apply(ej, ek), ei);
        const auto c = s.apply(s.apply(ek, ei), ej);
        for (std::size_t r = 0; r < n; ++r) sum[r] += b[r] + c[r];
        if (!detail::all_zero(sum))
          rep.violations.push_back({Violation::Kind::jacobi, {int(i), int(j), int(k)}, "Jacobi identity fails"});
      }

  // Lower central series C^1 = n, C^{k+1} = [n, C^k], tracked by spanning sets.
  std::vector<std::vector<Surd>> current;
  for (std::size_t i = 0; i < n; ++i) current.push_back(s.basis(i));
  rep.central_series.push_back(n);
  for (std::size_t step = 0; step < n && rep.central_series.back() > 0; ++step) {
    std::vector<std::vector<Surd>> next;
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& v : current) {
        auto w = s.apply(s.basis(i), v);
        if (detail::all_zero(w)) continue;
        next.push_back(std::move(w));
        const std::size_t grown = detail::span_rank(next, n);
        if (grown == r) next.pop_back();
        else r = grown;
      }
    current = std::move(next);
    rep.central_series.push_back(r);
    if (r == rep.central_series[rep.central_series.size() - 2]) break;
  }
  rep.nilpotent = rep.central_series.back() == 0;
  if (!rep.nilpotent)
    rep.violations.push_back({Violation::Kind::not_nilpotent, {-1, -1, -1},
                              "lower central series stabilizes at dimension " +
                                  std::to_string(rep.central_series.back())});

  for (std::size_t i = 0; i < n && rep.two_step; ++i)
    for (std::size_t j = i + 1; j < n && rep.two_step; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!detail::all_zero(s.apply(s.apply(s.basis(i), s.basis(j)), s.basis(k)))) {
          rep.two_step = false;
          if (require_two_step)
            rep.violations.push_back({Violation::Kind::not_two_step, {int(i), int(j), int(k)}, "mu(mu(x, y), z) != 0"});
          break;
        }
  rep.ok = rep.violations.empty();
  return rep;
}

/// Checks d omega = 0: omega(mu(x, y), z) + omega(mu(y, z), x) + omega(mu(z, x), y) = 0.
inline std::vector<Violation> check_closed(const LieBracket& mu, const RatMatrix& omega) {
  const detail::Structure s(mu);
  const std::size_t n = s.n();
  auto w = [&](const std::vector<Surd>& u, std::size_t k) {
    Surd acc(0);
    for (std::size_t p = 0; p < n; ++p)
      if (!u[p].is_zero() && omega(p, k) != 0) acc += u[p] * omega(p, k);
    return acc;
  };
  std::vector<Violation> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Surd total = w(s.apply(s.basis(i), s.basis(j)), k) + w(s.apply(s.basis(j), s.basis(k)), i) +
                           w(s.apply(s.basis(k), s.basis(i)), j);
        if (!total.is_zero()) out.push_back({Violation::Kind::not_closed, {int(i), int(j), int(k)}, "d omega != 0"});
      }
  return out;
}

/// Ricci operator of the left-invariant metric making e_1..e_n orthonormal:
/// <Ric X, Y> = -1/2 sum <mu(X, e_i), e_j><mu(Y, e_i), e_j> + 1/4 sum <mu(e_i, e_j), X><mu(e_i, e_j), Y>.
inline Matrix<Surd> ricci(const LieBracket& mu) {
  const detail::Structure s(mu);
  const std::size_t n = s.n();
  Matrix<Surd> ric(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Surd acc(0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (!s(a, i, j).is_zero() && !s(b, i, j).is_zero()) acc -= s(a, i, j) * s(b, i, j) * Rational(1, 2);
          if (!s(i, j, a).is_zero() && !s(i, j, b).is_zero()) acc += s(i, j, a) * s(i, j, b) * Rational(1, 4);
        }
      ric(a, b) = acc;
    }
  return ric;
}

/// dim(Der(mu) ∩ sp(n)) for the form omega_cn.
inline std::size_t sym_derivation_dim(const LieBracket& mu) {
  const std::size_t n = mu.space().n;
  if (n % 2 != 0) throw std::invalid_argument("sym_derivation_dim: odd dimension");
  const RatMatrix omega = symplectic_form_cn(n / 2);
  const std::vector<Index> coords = mu.space().basis();
  std::vector<std::vector<Surd>> columns;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const RatMatrix e = elementary(n, i, j);
      const LieBracket image = apply_matrix(e, mu);
      std::vector<Surd> col;
      for (const auto& idx : coords) col.push_back(image.coefficient(idx));
      const RatMatrix c = e.transpose() * omega + omega * e;
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) col.push_back(Surd(c(p, q)));
      columns.push_back(std::move(col));
    }
  Matrix<Surd> system(columns.front().size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t r = 0; r < columns[c].size(); ++r) system(r, c) = columns[c][r];
  return n * n - rank_over_field(system);
}

struct MinimalReport {
  bool nice = false;              // the span of the basis vectors in the support is nice
  bool diagonal = false;          // mm_sp has no off-diagonal entries
  bool critical = false;          // mm_sp equals beta exactly
  bool is_derivation = false;     // pi(D) mu = 0
  Matrix<Surd> mm;                // mm_sp(mu)
  RatVec beta;                    // mcc of the sp-projected support
  Rational beta_norm2 = 0;
  RatVec derivation;              // diagonal of D = beta + |beta|^2 Id
  std::optional<Rational> multiple;  // D = multiple * reference, when a positive multiple
  std::optional<NiceWitness> witness;
  std::string message;

  bool verified() const { return diagonal && critical && is_derivation; }
};

/// Positive rational r with a = r b, if any.
inline std::optional<Rational> positive_multiple(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::optional<Rational> r;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] == 0) {
      if (a[i] != 0) return std::nullopt;
      continue;
    }
    const Rational q = a[i] / b[i];
    if (r && *r != q) return std::nullopt;
    r = q;
  }
  if (!r || *r <= 0) return std::nullopt;
  return r;
}

/// Checks that mu is a critical point of |mm_sp|^2 and reports the associated derivation.
inline MinimalReport verify_minimal(const LieBracket& mu, const std::optional<RatVec>& reference = std::nullopt) {
  const std::size_t n = mu.space().n;
  const Group sp(Subgroup::sp, n);
  MinimalReport rep;
  const NiceResult nice = is_nice(mu, sp);
  rep.nice = nice.nice;
  rep.witness = nice.witness;
  rep.mm = moment_map_restricted(mu, sp);
  rep.diagonal = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !rep.mm(i, j).is_zero()) rep.diagonal = false;
  rep.beta = stratum_label(mu, sp);
  rep.beta_norm2 = norm2(rep.beta);
  rep.derivation = RatVec(n);
  for (std::size_t i = 0; i < n; ++i) rep.derivation[i] = rep.beta[i] + rep.beta_norm2;
  if (rep.diagonal) {
    rep.critical = true;
    for (std::size_t i = 0; i < n; ++i)
      if (rep.mm(i, i) != Surd(rep.beta[i])) rep.critical = false;
  }
  rep.is_derivation = apply_diag(rep.derivation, mu).is_zero();
  if (reference) rep.multiple = positive_multiple(rep.derivation, *reference);
  if (!rep.diagonal) rep.message = rep.nice ? "mm_sp is not diagonal" : "not nice in the given basis: mm_sp is not diagonal";
  else if (!rep.critical) rep.message = "mm_sp differs from the minimal convex combination";
  else if (!rep.is_derivation) rep.message = "D is not a derivation";
  else rep.message = "critical";
  return rep;
}

class MinimalMetricError : public std::runtime_error {
 public:
  MinimalMetricError(const std::string& what, Verdict verdict) : std::runtime_error(what), verdict_(std::move(verdict)) {}
  const Verdict& verdict() const { return verdict_; }

 private:
  Verdict verdict_;
};

struct MinimalMetric {
  MomentSolution solution;           // X in a_omega and solver diagnostics
  FloatVector critical;              // exp(X) mu scaled to unit norm
  std::optional<LieBracket> exact;   // exact critical point of the torus orbit, when its masses are unique
  Verdict verdict;
};

/// Moves mu along exp(a_omega) to a critical point of |mm_sp|^2.
inline MinimalMetric find_minimal_metric(const LieBracket& mu, const NewtonOptions& opt = {}) {
  const std::size_t n = mu.space().n;
  const Group sp(Subgroup::sp, n);
  MinimalMetric out;
  out.verdict = is_distinguished(mu, sp);
  if (out.verdict.outcome == Outcome::not_nice) throw MinimalMetricError("bracket is not nice for sp", out.verdict);
  if (out.verdict.outcome != Outcome::distinguished)
    throw MinimalMetricError("orbit is not distinguished", out.verdict);
  out.solution = solve_moment_equation(mu, sp, opt);
  FloatVector moved = group_scale(out.solution.x, to_float(mu));
  out.critical = moved.scaled(1.0 / std::sqrt(norm2(moved)));

  // Terms sharing a projected weight are scaled together by the torus.
  std::map<RatVec, Rational> mass;
  for (const auto& [idx, c] : mu.terms()) {
    if (!c.is_signed_square()) return out;
    mass[sp.project(weight(mu.space(), idx))] += c.signed_square().first * basis_norm2(mu.space(), idx);
  }
  std::vector<RatVec> weights;
  for (const auto& [w, m] : mass) weights.push_back(w);
  const CriticalFamily fam =
      critical_coefficients(weights, std::vector<Rational>(weights.size(), Rational(1)), out.verdict.beta);
  if (fam.feasible && fam.unique()) {
    LieBracket exact(mu.space());
    for (const auto& [idx, c] : mu.terms()) {
      const RatVec w = sp.project(weight(mu.space(), idx));
      const auto at = static_cast<std::size_t>(std::find(weights.begin(), weights.end(), w) - weights.begin());
      exact.set(idx, c * Surd::signed_sqrt(fam.particular[at] / mass[w]));
    }
    out.exact = std::move(exact);
  }
  return out;
}

/// One row of a printed table of minimal compatible metrics for omega_cn.
struct BracketTableRow {
  std::string id;
  std::string label;
  std::optional<std::string> parameter;
  LieBracket bracket{RepSpace::bracket(6)};
  RatVec derivation;  // printed matrix, scale already applied
  Rational beta_norm2 = 0;
  std::size_t dim_aut = 0;
  bool externally_sourced = false;
};

struct BracketRowCheck {
  std::string id;
  bool valid = false;   // Lie, nilpotent, two-step
  bool closed = false;  // d omega = 0
  MinimalReport report;
  std::size_t dim_aut = 0;
  std::vector<std::string> diffs;

  bool passed() const { return diffs.empty(); }
};

inline BracketRowCheck check_bracket_row(const BracketTableRow& row) {
  BracketRowCheck out;
  out.id = row.id;
  const ValidationReport v = validate(row.bracket, true);
  out.valid = v.ok;
  out.closed = check_closed(row.bracket, symplectic_form_cn(row.bracket.space().n / 2)).empty();
  out.report = verify_minimal(row.bracket, row.derivation);
  out.dim_aut = sym_derivation_dim(row.bracket);
  if (!out.valid) out.diffs.push_back("bracket is not a two-step nilpotent Lie bracket");
  if (!out.closed) out.diffs.push_back("omega is not closed");
  if (!out.report.verified()) out.diffs.push_back(out.report.message);
  if (out.report.beta_norm2 != row.beta_norm2)
    out.diffs.push_back("|beta|^2 " + to_string(out.report.beta_norm2) + " != printed " + to_string(row.beta_norm2));
  if (!out.report.multiple)
    out.diffs.push_back("D = " + out.report.derivation.str() + " is not a positive multiple of " + row.derivation.str());
  if (out.dim_aut != row.dim_aut)
    out.diffs.push_back("symplectic derivation dimension " + std::to_string(out.dim_aut) + " != printed " + std::to_string(row.dim_aut));
  return out;
}

}  // namespace orbitforge
