#pragma once

// Exact convex geometry on finite point sets in Q^n.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "orbitforge/linalg.hpp"
#include "orbitforge/simplex.hpp"

namespace orbitforge {

/// Ordered set of distinct points of equal dimension. The order indexes Gram
/// rows and coefficient certificates, so duplicates are rejected.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<RatVec> points) : points_(std::move(points)) {
    std::set<RatVec> seen;
    for (const auto& p : points_) {
      if (p.size() != points_.front().size()) throw std::invalid_argument("PointSet: dimension mismatch");
      if (!seen.insert(p).second) throw std::invalid_argument("PointSet: duplicate point " + p.str());
    }
  }

  /// Keeps the first occurrence of each point.
  static PointSet deduplicated(const std::vector<RatVec>& points) {
    std::set<RatVec> seen;
    std::vector<RatVec> kept;
    for (const auto& p : points)
      if (seen.insert(p).second) kept.push_back(p);
    return PointSet(std::move(kept));
  }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  std::size_t dim() const { return points_.empty() ? 0 : points_.front().size(); }
  const RatVec& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<RatVec>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  bool contains(const RatVec& p) const { return std::find(points_.begin(), points_.end(), p) != points_.end(); }

  std::optional<std::size_t> index_of(const RatVec& p) const {
    auto it = std::find(points_.begin(), points_.end(), p);
    if (it == points_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - points_.begin());
  }

  friend bool operator==(const PointSet& a, const PointSet& b) { return a.points_ == b.points_; }

 private:
  std::vector<RatVec> points_;
};

/// Dimension of the affine hull.
inline std::size_t affine_dimension(const PointSet& s) {
  if (s.size() <= 1) return 0;
  std::vector<RatVec> diffs;
  for (std::size_t i = 1; i < s.size(); ++i) diffs.push_back(s[i] - s[0]);
  return rank(rows_matrix(diffs, s.dim()));
}

inline RatVec combine(const PointSet& s, const RatVec& coefficients) {
  RatVec x(s.dim());
  for (std::size_t i = 0; i < s.size(); ++i) x += s[i] * coefficients[i];
  return x;
}

/// True when <x, p> >= <x, x> for every p in s: x is then the minimum-norm
/// point of CH(s) provided x lies in CH(s).
inline bool satisfies_min_norm_certificate(const PointSet& s, const RatVec& x) {
  const Rational xx = norm2(x);
  return std::all_of(s.begin(), s.end(), [&](const RatVec& p) { return dot(x, p) >= xx; });
}

namespace detail {

/// Minimum-norm point of aff(points[idx]) when those points are affinely
/// independent and the point lies in their convex hull.
inline std::optional<RatVec> face_min_norm(const PointSet& s, const std::vector<std::size_t>& idx) {
  const std::size_t k = idx.size();
  // [G 1; 1^T 0] [lambda; nu] = [0; 1]
  RatMatrix kkt(k + 1, k + 1);
  RatVec rhs(k + 1);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) kkt(a, b) = dot(s[idx[a]], s[idx[b]]);
    kkt(a, k) = 1;
    kkt(k, a) = 1;
  }
  rhs[k] = 1;
  const RowEchelon e = rref([&] {
    RatMatrix aug(k + 1, k + 2);
    for (std::size_t i = 0; i <= k; ++i) {
      for (std::size_t j = 0; j <= k; ++j) aug(i, j) = kkt(i, j);
      aug(i, k + 1) = rhs[i];
    }
    return aug;
  }());
  if (e.pivot_cols.size() != k + 1 || e.pivot_cols.back() != k) return std::nullopt;
  RatVec x(s.dim());
  for (std::size_t a = 0; a < k; ++a) {
    const Rational lambda = e.reduced(a, k + 1);
    if (lambda < 0) return std::nullopt;
    x += s[idx[a]] * lambda;
  }
  return x;
}

template <class Visit>
bool for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (visit(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Minimal convex combination: the unique point of CH(s) closest to the origin.
/// Faces are scanned by increasing size; the first face whose affine
/// minimum-norm point lies in the face and passes the optimality certificate
/// is the answer.
inline RatVec mcc(const PointSet& s) {
  if (s.empty()) throw std::invalid_argument("mcc of an empty point set");
  const std::size_t max_face = affine_dimension(s) + 1;
  std::optional<RatVec> found;
  for (std::size_t k = 1; k <= max_face && !found; ++k) {
    detail::for_each_subset(s.size(), k, [&](const std::vector<std::size_t>& idx) {
      auto x = detail::face_min_norm(s, idx);
      if (x && satisfies_min_norm_certificate(s, *x)) {
        found = std::move(x);
        return true;
      }
      return false;
    });
  }
  if (!found) throw std::logic_error("mcc: face enumeration found no certified point");
  return *found;
}

/// Convex coefficients c >= 0, sum c = 1, sum c_i s_i = p; nullopt if p is outside CH(s).
inline std::optional<RatVec> barycentric(const PointSet& s, const RatVec& p) {
  if (s.empty()) return std::nullopt;
  if (p.size() != s.dim()) throw std::invalid_argument("barycentric: dimension mismatch");
  const std::size_t k = s.size();
  const std::size_t n = s.dim();
  RatMatrix a(n + 1, k);
  RatVec b(n + 1);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t r = 0; r < n; ++r) a(r, i) = s[i][r];
    a(n, i) = 1;
  }
  for (std::size_t r = 0; r < n; ++r) b[r] = p[r];
  b[n] = 1;
  LpResult lp = maximize(a, b, RatVec(k));
  if (lp.status != LpStatus::optimal) return std::nullopt;
  return lp.x;
}

struct InteriorCertificate {
  bool in_hull = false;
  bool interior = false;
  /// Coefficients maximizing the smallest one; strictly positive when interior.
  RatVec coefficients;
  Rational min_coefficient = 0;
};

/// Relative-interior test by the exact LP max t s.t. c_i >= t, sum c = 1, sum c_i s_i = p.
inline InteriorCertificate relative_interior_certificate(const PointSet& s, const RatVec& p) {
  if (s.empty()) return {};
  if (p.size() != s.dim()) throw std::invalid_argument("in_relative_interior: dimension mismatch");
  const std::size_t k = s.size();
  const std::size_t n = s.dim();
  // Variables d_1..d_k, t with c_i = d_i + t.
  RatMatrix a(n + 1, k + 1);
  RatVec b(n + 1);
  RatVec sum(n);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t r = 0; r < n; ++r) a(r, i) = s[i][r];
    a(n, i) = 1;
    sum += s[i];
  }
  for (std::size_t r = 0; r < n; ++r) {
    a(r, k) = sum[r];
    b[r] = p[r];
  }
  a(n, k) = Rational(static_cast<long>(k));
  b[n] = 1;
  RatVec cost(k + 1);
  cost[k] = 1;
  const LpResult lp = maximize(a, b, cost);
  if (lp.status != LpStatus::optimal) return {};
  InteriorCertificate cert;
  cert.in_hull = true;
  cert.min_coefficient = lp.x[k];
  cert.interior = lp.x[k] > 0;
  cert.coefficients = RatVec(k);
  for (std::size_t i = 0; i < k; ++i) cert.coefficients[i] = lp.x[i] + lp.x[k];
  return cert;
}

inline bool in_relative_interior(const PointSet& s, const RatVec& p) {
  return relative_interior_certificate(s, p).interior;
}

/// A functional h with <h, s_i - s_j> >= 1 for every j != i, exposing s_i as the
/// unique maximizer over s; nullopt when s_i is not a vertex.
inline std::optional<RatVec> exposing_functional(const PointSet& s, std::size_t i) {
  const std::size_t n = s.dim();
  const std::size_t others = s.size() - 1;
  if (others == 0) return RatVec(n);
  // h = h+ - h-, slack u_j >= 0: <h, s_i - s_j> - u_j = 1
  RatMatrix a(others, 2 * n + others);
  RatVec b(others);
  for (std::size_t j = 0, r = 0; j < s.size(); ++j) {
    if (j == i) continue;
    const RatVec diff = s[i] - s[j];
    for (std::size_t k = 0; k < n; ++k) {
      a(r, k) = diff[k];
      a(r, n + k) = -diff[k];
    }
    a(r, 2 * n + r) = -1;
    b[r] = 1;
    ++r;
  }
  const LpResult lp = maximize(a, b, RatVec(2 * n + others));
  if (lp.status != LpStatus::optimal) return std::nullopt;
  RatVec h(n);
  for (std::size_t k = 0; k < n; ++k) h[k] = lp.x[k] - lp.x[n + k];
  return h;
}

/// Extreme points of CH(s), in input order.
inline PointSet vertices(const PointSet& s) {
  if (s.empty()) throw std::invalid_argument("vertices of an empty point set");
  if (s.size() == 1) return s;
  std::vector<RatVec> kept;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<RatVec> others;
    for (std::size_t j = 0; j < s.size(); ++j)
      if (j != i) others.push_back(s[j]);
    if (!barycentric(PointSet(std::move(others)), s[i])) kept.push_back(s[i]);
  }
  return PointSet(std::move(kept));
}

}  // namespace orbitforge
