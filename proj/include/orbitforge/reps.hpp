#pragma once

// GL_n on n-ary forms of degree d and on brackets in Lambda^2(R^n)* (x) R^n:
// weights, inner products, the Lie algebra action and the moment map.

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <type_traits>
#include <vector>

#include "orbitforge/lattice.hpp"
#include "orbitforge/linalg.hpp"
#include "orbitforge/ratgeom.hpp"
#include "orbitforge/surd.hpp"

namespace orbitforge {

enum class Backend { poly, bracket };

/// Poly index: exponent tuple (d_1..d_n). Bracket index: (a, b, c) with
/// a < b, 0-based, standing for mu(e_a, e_b) = e_c = -mu(e_b, e_a).
using Index = std::vector<int>;

struct RepSpace {
  Backend backend = Backend::poly;
  std::size_t n = 0;
  std::size_t d = 0;

  static RepSpace poly(std::size_t n, std::size_t d) { return {Backend::poly, n, d}; }
  static RepSpace bracket(std::size_t n) { return {Backend::bracket, n, 0}; }

  friend bool operator==(const RepSpace& a, const RepSpace& b) {
    return a.backend == b.backend && a.n == b.n && a.d == b.d;
  }
  friend bool operator!=(const RepSpace& a, const RepSpace& b) { return !(a == b); }

  void validate(const Index& idx) const {
    if (backend == Backend::poly) {
      if (idx.size() != n) throw std::invalid_argument("monomial exponent tuple has wrong length");
      long total = 0;
      for (int e : idx) {
        if (e < 0) throw std::invalid_argument("negative exponent");
        total += e;
      }
      if (total != static_cast<long>(d)) throw std::invalid_argument("monomial degree does not match the space");
    } else {
      if (idx.size() != 3) throw std::invalid_argument("bracket index needs three entries");
      for (int e : idx)
        if (e < 0 || e >= static_cast<int>(n)) throw std::invalid_argument("bracket index out of range");
      if (idx[0] >= idx[1]) throw std::invalid_argument("bracket index needs i < j");
    }
  }

  /// Every basis index, in lexicographic order.
  std::vector<Index> basis() const {
    std::vector<Index> out;
    if (backend == Backend::bracket) {
      for (int a = 0; a < static_cast<int>(n); ++a)
        for (int b = a + 1; b < static_cast<int>(n); ++b)
          for (int c = 0; c < static_cast<int>(n); ++c) out.push_back({a, b, c});
      return out;
    }
    Index cur(n, 0);
    auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
      if (pos + 1 == n) {
        cur[pos] = left;
        out.push_back(cur);
        return;
      }
      for (int e = left; e >= 0; --e) {
        cur[pos] = e;
        self(self, pos + 1, left - e);
      }
    };
    if (n > 0) rec(rec, 0, static_cast<int>(d));
    std::sort(out.begin(), out.end());
    return out;
  }
};

/// Weight of a basis vector: -(d_1..d_n) for monomials, e_c - e_a - e_b for brackets.
inline RatVec weight(const RepSpace& space, const Index& idx) {
  RatVec w(space.n);
  if (space.backend == Backend::poly) {
    for (std::size_t i = 0; i < space.n; ++i) w[i] = -idx[i];
  } else {
    w[static_cast<std::size_t>(idx[2])] += 1;
    w[static_cast<std::size_t>(idx[0])] -= 1;
    w[static_cast<std::size_t>(idx[1])] -= 1;
  }
  return w;
}

/// Squared norm of a basis vector: prod d_i! for monomials, 2 for brackets.
inline Rational basis_norm2(const RepSpace& space, const Index& idx) {
  if (space.backend == Backend::bracket) return 2;
  Integer acc = 1;
  for (int e : idx)
    for (int k = 2; k <= e; ++k) acc *= k;
  return Rational(acc);
}

/// Distinct weights of the whole space, in basis order.
inline PointSet all_weights(const RepSpace& space) {
  std::vector<RatVec> w;
  for (const auto& idx : space.basis()) w.push_back(weight(space, idx));
  return PointSet::deduplicated(w);
}

/// Sparse vector of a representation space. Exact work uses Surd coefficients
/// (signed square roots of rationals stay exact), numeric work uses double.
template <class S>
class BasicRepVector {
 public:
  using Scalar = S;
  using Terms = std::map<Index, S>;

  BasicRepVector() = default;
  explicit BasicRepVector(RepSpace space) : space_(space) {}

  const RepSpace& space() const { return space_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  S coefficient(const Index& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? S(0) : it->second;
  }

  void set(const Index& idx, const S& value) {
    space_.validate(idx);
    if (ScalarTraits<S>::is_zero(value)) {
      terms_.erase(idx);
    } else {
      terms_[idx] = value;
    }
  }

  void add(const Index& idx, const S& value) {
    space_.validate(idx);
    auto [it, inserted] = terms_.emplace(idx, value);
    if (!inserted) it->second = it->second + value;
    if (ScalarTraits<S>::is_zero(it->second)) terms_.erase(it);
  }

  BasicRepVector& operator+=(const BasicRepVector& o) {
    check_space(o);
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  BasicRepVector& operator-=(const BasicRepVector& o) {
    check_space(o);
    for (const auto& [k, c] : o.terms_) add(k, S(0) - c);
    return *this;
  }
  friend BasicRepVector operator+(BasicRepVector a, const BasicRepVector& b) { return a += b; }
  friend BasicRepVector operator-(BasicRepVector a, const BasicRepVector& b) { return a -= b; }

  template <class F>
  BasicRepVector scaled(const F& factor) const {
    BasicRepVector out(space_);
    for (const auto& [k, c] : terms_) out.set(k, c * factor);
    return out;
  }

  friend bool operator==(const BasicRepVector& a, const BasicRepVector& b) {
    return a.space_ == b.space_ && a.terms_ == b.terms_;
  }

  void check_space(const BasicRepVector& o) const {
    if (o.space_ != space_) throw std::invalid_argument("vectors live in different spaces");
  }

 private:
  RepSpace space_;
  Terms terms_;
};

using RepVector = BasicRepVector<Surd>;
using FloatVector = BasicRepVector<double>;

inline FloatVector to_float(const RepVector& v) {
  FloatVector f(v.space());
  for (const auto& [k, c] : v.terms()) f.set(k, c.to_double());
  return f;
}

template <class S>
S inner(const BasicRepVector<S>& a, const BasicRepVector<S>& b) {
  a.check_space(b);
  S acc(0);
  for (const auto& [k, c] : a.terms()) {
    auto it = b.terms().find(k);
    if (it != b.terms().end())
      acc = acc + c * it->second * ScalarTraits<S>::from_rational(basis_norm2(a.space(), k));
  }
  return acc;
}

template <class S>
S norm2(const BasicRepVector<S>& v) {
  return inner(v, v);
}

/// Exact squared norm; rational whenever every coefficient is a signed square root.
inline Rational norm2_exact(const RepVector& v) { return norm2(v).rational_value(); }

/// R(v): distinct weights of the nonzero terms, in index order.
template <class S>
PointSet support(const BasicRepVector<S>& v) {
  if (v.is_zero()) throw std::invalid_argument("empty support");
  std::vector<RatVec> w;
  for (const auto& [k, c] : v.terms()) w.push_back(weight(v.space(), k));
  return PointSet::deduplicated(w);
}

/// pi(X) v for diagonal X: each term scaled by <weight, X>.
template <class S>
BasicRepVector<S> apply_diag(const RatVec& x, const BasicRepVector<S>& v) {
  if (x.size() != v.space().n) throw std::invalid_argument("apply_diag: dimension mismatch");
  BasicRepVector<S> out(v.space());
  for (const auto& [k, c] : v.terms()) out.set(k, c * ScalarTraits<S>::from_rational(dot(weight(v.space(), k), x)));
  return out;
}

namespace detail {

/// Dense antisymmetric structure constants t[(p*n + q)*n + k] = <mu(e_p, e_q), e_k>.
template <class S>
std::vector<S> bracket_tensor(const BasicRepVector<S>& v) {
  const std::size_t n = v.space().n;
  std::vector<S> t(n * n * n, S(0));
  for (const auto& [idx, c] : v.terms()) {
    const auto a = static_cast<std::size_t>(idx[0]);
    const auto b = static_cast<std::size_t>(idx[1]);
    const auto k = static_cast<std::size_t>(idx[2]);
    t[(a * n + b) * n + k] = c;
    t[(b * n + a) * n + k] = S(0) - c;
  }
  return t;
}

/// (A . mu)(X, Y) = A mu(X, Y) - mu(AX, Y) - mu(X, AY) for the sparse matrix
/// given as entries (row, col, value).
template <class S>
BasicRepVector<S> bracket_action(const std::vector<std::tuple<std::size_t, std::size_t, S>>& a,
                                 const BasicRepVector<S>& v) {
  const std::size_t n = v.space().n;
  const std::vector<S> t = bracket_tensor(v);
  auto mu = [&](std::size_t p, std::size_t q, std::size_t k) -> const S& { return t[(p * n + q) * n + k]; };
  std::vector<S> out(n * n * n, S(0));
  auto acc = [&](std::size_t p, std::size_t q, std::size_t k, const S& value) {
    if (p < q) out[(p * n + q) * n + k] = out[(p * n + q) * n + k] + value;
  };
  for (const auto& [r, c, x] : a) {
    // A mu: e_k component of A mu(e_p, e_q) picks up x * mu_pq^c at k = r.
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (!ScalarTraits<S>::is_zero(mu(p, q, c))) acc(p, q, r, x * mu(p, q, c));
    // -mu(A e_p, e_q): A e_c = x e_r, so p = c contributes -x mu(e_r, e_q).
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t k = 0; k < n; ++k)
        if (!ScalarTraits<S>::is_zero(mu(r, q, k))) acc(c, q, k, S(0) - x * mu(r, q, k));
    // -mu(e_p, A e_q): q = c contributes -x mu(e_p, e_r).
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t k = 0; k < n; ++k)
        if (!ScalarTraits<S>::is_zero(mu(p, r, k))) acc(p, c, k, S(0) - x * mu(p, r, k));
  }
  BasicRepVector<S> result(v.space());
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q)
      for (std::size_t k = 0; k < n; ++k) {
        const S& value = out[(p * n + q) * n + k];
        if (!ScalarTraits<S>::is_zero(value))
          result.set({static_cast<int>(p), static_cast<int>(q), static_cast<int>(k)}, value);
      }
  return result;
}

template <class S>
BasicRepVector<S> poly_action(const std::vector<std::tuple<std::size_t, std::size_t, S>>& a,
                              const BasicRepVector<S>& v) {
  BasicRepVector<S> result(v.space());
  for (const auto& [i, j, x] : a)
    for (const auto& [idx, c] : v.terms()) {
      // pi(E_ij) x^d = -x_j d/dx_i x^d = -d_i x^(d - e_i + e_j)
      if (idx[i] == 0) continue;
      Index image = idx;
      const long di = image[i];
      --image[i];
      ++image[j];
      result.add(image, S(0) - x * c * ScalarTraits<S>::from_rational(Rational(di)));
    }
  return result;
}

}  // namespace detail

/// pi(E_ij) v, 0-based indices.
template <class S>
BasicRepVector<S> apply_elementary(std::size_t i, std::size_t j, const BasicRepVector<S>& v) {
  if (i >= v.space().n || j >= v.space().n) throw std::invalid_argument("apply_elementary: index out of range");
  const std::vector<std::tuple<std::size_t, std::size_t, S>> a{{i, j, S(1)}};
  return v.space().backend == Backend::poly ? detail::poly_action(a, v) : detail::bracket_action(a, v);
}

/// pi(A) v for a matrix A over the same scalar type (or rationals).
template <class S, class M>
BasicRepVector<S> apply_matrix(const Matrix<M>& m, const BasicRepVector<S>& v) {
  std::vector<std::tuple<std::size_t, std::size_t, S>> a;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (ScalarTraits<M>::is_zero(m(i, j))) continue;
      if constexpr (std::is_same_v<M, S>) {
        a.emplace_back(i, j, m(i, j));
      } else {
        a.emplace_back(i, j, ScalarTraits<S>::from_rational(m(i, j)));
      }
    }
  return v.space().backend == Backend::poly ? detail::poly_action(a, v) : detail::bracket_action(a, v);
}

/// exp(X) . v with X = diag(log t_i), exactly: each term scaled by prod t_i^alpha_i.
inline RepVector group_scale(const RatVec& multipliers, const RepVector& v) {
  if (multipliers.size() != v.space().n) throw std::invalid_argument("group_scale: dimension mismatch");
  for (const auto& t : multipliers)
    if (t <= 0) throw std::invalid_argument("group_scale: multipliers must be positive");
  RepVector out(v.space());
  for (const auto& [k, c] : v.terms()) {
    const RatVec w = weight(v.space(), k);
    Rational factor = 1;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!is_integer(w[i])) throw std::invalid_argument("group_scale: non-integer weight entry");
      factor *= ipow(multipliers[i], numerator(w[i]).convert_to<long>());
    }
    out.set(k, c * factor);
  }
  return out;
}

/// mm(v) with <mm(v), X> = <pi(X) v, v> / |v|^2 for symmetric X, entries
/// mm_ij = (<pi(E_ij) v, v> + <pi(E_ji) v, v>) / (2 |v|^2).
template <class S>
Matrix<S> moment_map(const BasicRepVector<S>& v) {
  if (v.is_zero()) throw std::invalid_argument("moment map of the zero vector");
  const std::size_t n = v.space().n;
  const S nv = norm2(v);
  Matrix<S> m(n, n);
  std::vector<S> raw(n * n, S(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) raw[i * n + j] = inner(apply_elementary(i, j, v), v);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const S sum = raw[i * n + j] + raw[j * n + i];
      if constexpr (std::is_same_v<S, Surd>) {
        m(i, j) = sum / (nv.rational_value() * 2);
      } else {
        m(i, j) = sum / (nv * 2);
      }
    }
  return m;
}

/// Orthogonal basis (trace form) of the symmetric matrices in the Lie algebra
/// of the group, i.e. its p-part.
inline std::vector<RatMatrix> p_part_basis(const Group& g) {
  const std::size_t n = g.n();
  std::vector<RatMatrix> sym;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      RatMatrix e(n, n);
      e(i, j) = 1;
      e(j, i) = 1;
      sym.push_back(std::move(e));
    }
  std::vector<RatMatrix> span;
  if (g.kind() == Subgroup::gl) {
    span = sym;
  } else {
    // Linear conditions: trace zero (sl) or A^T Omega + Omega A = 0 (sp).
    std::vector<RatVec> conditions;
    if (g.kind() == Subgroup::sl) {
      RatVec row(sym.size());
      for (std::size_t s = 0; s < sym.size(); ++s) {
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += sym[s](i, i);
        row[s] = tr;
      }
      conditions.push_back(row);
    } else {
      const RatMatrix omega = symplectic_form_cn(n / 2);
      std::vector<RatMatrix> images;
      for (const auto& s : sym) images.push_back(s.transpose() * omega + omega * s);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          RatVec row(sym.size());
          for (std::size_t s = 0; s < sym.size(); ++s) row[s] = images[s](i, j);
          conditions.push_back(row);
        }
    }
    for (const RatVec& k : nullspace(rows_matrix(conditions, sym.size()))) {
      RatMatrix a(n, n);
      for (std::size_t s = 0; s < sym.size(); ++s)
        if (k[s] != 0) a = a + sym[s] * k[s];
      span.push_back(std::move(a));
    }
  }
  std::vector<RatMatrix> orth;
  for (RatMatrix a : span) {
    for (const auto& b : orth) a = a - b * (trace_inner(a, b) / trace_inner(b, b));
    orth.push_back(std::move(a));
  }
  return orth;
}

/// Orthogonal projection onto span(basis) for a trace-orthogonal basis.
template <class S>
Matrix<S> project_onto(const Matrix<S>& m, const std::vector<RatMatrix>& basis) {
  const std::size_t n = m.rows();
  Matrix<S> out(n, n);
  for (const auto& b : basis) {
    S coeff(0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (b(i, j) != 0) coeff = coeff + m(i, j) * ScalarTraits<S>::from_rational(b(i, j));
    const S scaled = coeff * ScalarTraits<S>::from_rational(Rational(1) / trace_inner(b, b));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (b(i, j) != 0) out(i, j) = out(i, j) + scaled * ScalarTraits<S>::from_rational(b(i, j));
  }
  return out;
}

/// Orthogonal projection of a symmetric matrix onto the group's p-part.
template <class S>
Matrix<S> project_to_p(const Matrix<S>& m, const Group& g) {
  if (g.kind() == Subgroup::gl) return m;
  const std::size_t n = g.n();
  if (g.kind() == Subgroup::sl) {
    S tr(0);
    for (std::size_t i = 0; i < n; ++i) tr = tr + m(i, i);
    const S shift = tr * ScalarTraits<S>::from_rational(Rational(1, static_cast<long>(n)));
    Matrix<S> out = m;
    for (std::size_t i = 0; i < n; ++i) out(i, i) = out(i, i) - shift;
    return out;
  }
  return project_onto(m, p_part_basis(g));
}

template <class S>
Matrix<S> moment_map_restricted(const BasicRepVector<S>& v, const Group& g) {
  if (g.n() != v.space().n) throw std::invalid_argument("group and representation dimensions differ");
  return project_to_p(moment_map(v), g);
}

/// Sum over terms of coefficient^2 * |basis|^2, grouped by weight.
inline std::map<RatVec, Rational> weight_masses(const RepVector& v) {
  std::map<RatVec, Rational> out;
  for (const auto& [k, c] : v.terms()) {
    auto [sq, sg] = c.signed_square();
    out[weight(v.space(), k)] += sq * basis_norm2(v.space(), k);
  }
  return out;
}

/// Matrix with exact diagonal entries and everything else zero.
inline SymMatrix diagonal_sym(const RatVec& d) { return SymMatrix::diagonal(d); }

}  // namespace orbitforge
