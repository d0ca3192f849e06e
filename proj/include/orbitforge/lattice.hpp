#pragma once

// Restricted roots, Weyl chambers and diagonal subalgebras for GL_n, SL_n and
// Sp(2m) with the antidiagonal symplectic form.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitforge/linalg.hpp"
#include "orbitforge/ratgeom.hpp"

namespace orbitforge {

enum class Subgroup { gl, sl, sp };

inline std::string to_string(Subgroup g) {
  switch (g) {
    case Subgroup::gl: return "gl";
    case Subgroup::sl: return "sl";
    case Subgroup::sp: return "sp";
  }
  return "?";
}

inline Subgroup parse_subgroup(const std::string& s) {
  if (s == "gl") return Subgroup::gl;
  if (s == "sl") return Subgroup::sl;
  if (s == "sp") return Subgroup::sp;
  throw std::invalid_argument("unknown group '" + s + "'");
}

struct RootSystem {
  std::size_t n = 0;
  Subgroup subgroup = Subgroup::gl;
  PointSet roots;

  bool contains(const RatVec& v) const { return roots.contains(v); }
};

inline RatVec unit_vector(std::size_t n, std::size_t i) {
  RatVec e(n);
  e[i] = 1;
  return e;
}

/// gamma_ij = e_i - e_j for i != j.
inline RootSystem gl_roots(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gl_roots: n must be positive");
  std::vector<RatVec> roots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) roots.push_back(unit_vector(n, i) - unit_vector(n, j));
  return {n, Subgroup::gl, PointSet(std::move(roots))};
}

/// Same root vectors as gl_n; they already lie in the traceless diagonal.
inline RootSystem sl_roots(std::size_t n) {
  RootSystem r = gl_roots(n);
  r.subgroup = Subgroup::sl;
  return r;
}

/// Orthogonal projection onto a_omega = {diag(a_1..a_m, -a_m..-a_1)}.
inline RatVec project_to_sp_diag(const RatVec& w, std::size_t m) {
  if (w.size() != 2 * m) throw std::invalid_argument("project_to_sp_diag: expected dimension 2m");
  RatVec p(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    p[i] = (w[i] - w[2 * m - 1 - i]) / 2;
    p[2 * m - 1 - i] = -p[i];
  }
  return p;
}

/// Orthogonal projection onto the traceless diagonal.
inline RatVec project_to_sl_diag(const RatVec& w) {
  Rational mean = 0;
  for (const auto& x : w) mean += x;
  mean /= static_cast<long>(w.size());
  RatVec p = w;
  for (std::size_t i = 0; i < p.size(); ++i) p[i] -= mean;
  return p;
}

/// Restricted roots of sp(2m) on a_omega, written as diagonal matrices dual
/// to the root functionals under the trace form: 2e_i becomes
/// diag(..1..,..-1..), e_i +- e_j becomes half-entries at i, j and mirrors.
inline RootSystem sp_diag_roots(std::size_t m) {
  if (m == 0) throw std::invalid_argument("sp_diag_roots: m must be positive");
  const std::size_t n = 2 * m;
  auto functional = [&](const std::vector<std::pair<std::size_t, int>>& coeffs) {
    RatVec h(n);
    for (auto [i, c] : coeffs) {
      h[i] += Rational(c, 2);
      h[n - 1 - i] -= Rational(c, 2);
    }
    return h;
  };
  std::vector<RatVec> roots;
  for (int s : {1, -1}) {
    for (std::size_t i = 0; i < m; ++i) roots.push_back(functional({{i, 2 * s}}));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        roots.push_back(functional({{i, s}, {j, s}}));
        roots.push_back(functional({{i, s}, {j, -s}}));
      }
  }
  return {n, Subgroup::sp, PointSet(std::move(roots))};
}

/// Ascending sort: the representative in the closed chamber a1 <= ... <= an.
inline RatVec chamber_canonical(const RatVec& w) {
  std::vector<Rational> e = w.entries();
  std::sort(e.begin(), e.end());
  return RatVec(std::move(e));
}

/// For a vector of the (a, ..., -a) pattern: sort the first half ascending and mirror.
inline RatVec sp_chamber_canonical(const RatVec& w) {
  const std::size_t n = w.size();
  if (n % 2 != 0) throw std::invalid_argument("sp_chamber_canonical: odd dimension");
  const std::size_t m = n / 2;
  std::vector<Rational> head(w.begin(), w.begin() + static_cast<long>(m));
  std::sort(head.begin(), head.end());
  RatVec out(n);
  for (std::size_t i = 0; i < m; ++i) {
    out[i] = head[i];
    out[n - 1 - i] = -head[i];
  }
  return out;
}

inline bool in_open_chamber(const RatVec& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (!(w[i - 1] < w[i])) return false;
  return true;
}

inline bool in_closed_chamber(const RatVec& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i - 1] > w[i]) return false;
  return true;
}

inline bool is_root_difference(const RatVec& a, const RatVec& b, const RootSystem& r) {
  return r.contains(a - b);
}

/// Matrix of omega_cn = sum_i e_i* ^ e_{n+1-i}*: Omega(i, n-1-i) = 1 for i < m, -1 mirrored.
inline RatMatrix symplectic_form_cn(std::size_t m) {
  const std::size_t n = 2 * m;
  RatMatrix omega(n, n);
  for (std::size_t i = 0; i < m; ++i) {
    omega(i, n - 1 - i) = 1;
    omega(n - 1 - i, i) = -1;
  }
  return omega;
}

inline bool is_symplectic_algebra_element(const RatMatrix& a, const RatMatrix& omega) {
  const RatMatrix c = a.transpose() * omega + omega * a;
  return c == RatMatrix(c.rows(), c.cols());
}

inline RatMatrix elementary(std::size_t n, std::size_t i, std::size_t j) {
  RatMatrix e(n, n);
  e(i, j) = 1;
  return e;
}

/// One of the concrete groups acting on R^n, with its diagonal subalgebra
/// and the restricted root spaces needed by the niceness test.
class Group {
 public:
  Group(Subgroup kind, std::size_t n) : kind_(kind), n_(n) {
    switch (kind) {
      case Subgroup::gl: roots_ = gl_roots(n); break;
      case Subgroup::sl: roots_ = sl_roots(n); break;
      case Subgroup::sp:
        if (n % 2 != 0 || n == 0) throw std::invalid_argument("sp needs an even positive dimension");
        roots_ = sp_diag_roots(n / 2);
        break;
    }
  }

  Subgroup kind() const { return kind_; }
  std::size_t n() const { return n_; }
  const RootSystem& roots() const { return roots_; }

  /// Orthogonal projection of a gl-diagonal vector onto this group's diagonal subalgebra.
  RatVec project(const RatVec& w) const {
    switch (kind_) {
      case Subgroup::gl: return w;
      case Subgroup::sl: return project_to_sl_diag(w);
      case Subgroup::sp: return project_to_sp_diag(w, n_ / 2);
    }
    return w;
  }

  RatVec chamber(const RatVec& w) const {
    return kind_ == Subgroup::sp ? sp_chamber_canonical(w) : chamber_canonical(w);
  }

  /// Basis of the root space g_gamma as matrices; empty when gamma is not a root.
  std::vector<RatMatrix> root_space(const RatVec& gamma) const {
    if (!roots_.contains(gamma)) return {};
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t l = 0; l < n_; ++l)
        if (k != l && project(unit_vector(n_, k) - unit_vector(n_, l)) == gamma) slots.emplace_back(k, l);
    if (kind_ != Subgroup::sp) {
      std::vector<RatMatrix> basis;
      for (auto [k, l] : slots) basis.push_back(elementary(n_, k, l));
      return basis;
    }
    // Kernel of A -> A^T Omega + Omega A on span{E_kl : slots}.
    const RatMatrix omega = symplectic_form_cn(n_ / 2);
    RatMatrix system(n_ * n_, slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const RatMatrix e = elementary(n_, slots[s].first, slots[s].second);
      const RatMatrix c = e.transpose() * omega + omega * e;
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) system(i * n_ + j, s) = c(i, j);
    }
    std::vector<RatMatrix> basis;
    for (const RatVec& k : nullspace(system)) {
      RatMatrix a(n_, n_);
      for (std::size_t s = 0; s < slots.size(); ++s) a(slots[s].first, slots[s].second) = k[s];
      basis.push_back(std::move(a));
    }
    return basis;
  }

 private:
  Subgroup kind_;
  std::size_t n_;
  RootSystem roots_;
};

}  // namespace orbitforge
