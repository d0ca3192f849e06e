#pragma once

// Independent reference computations used to cross-check the library.

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "orbitforge/ratgeom.hpp"
#include "orbitforge/reps.hpp"

namespace oracle {

using orbitforge::PointSet;
using orbitforge::RatVec;
using orbitforge::Rational;

inline PointSet random_point_set(std::mt19937_64& rng, std::size_t count, std::size_t dim, long range) {
  std::uniform_int_distribution<long> coord(-range, range);
  std::uniform_int_distribution<long> den(1, 3);
  std::set<RatVec> seen;
  std::vector<RatVec> pts;
  while (pts.size() < count) {
    RatVec p(dim);
    for (std::size_t i = 0; i < dim; ++i) p[i] = Rational(coord(rng), den(rng));
    if (seen.insert(p).second) pts.push_back(p);
  }
  return PointSet(pts);
}

/// Gaussian elimination with partial search for a nonzero pivot; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc = b[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= a[i][k] * x[k];
    x[i] = acc / a[i][i];
  }
  return x;
}

/// Minimum-norm point of CH(s) by exhaustive enumeration: for every subset
/// whose points are affinely independent, minimize over its affine hull via
/// the normal equations in difference coordinates, keep candidates with
/// nonnegative barycentric weights, return the global minimum.
inline RatVec brute_force_mcc(const PointSet& s) {
  const std::size_t n = s.size();
  std::optional<RatVec> best;
  for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
    std::vector<RatVec> pts;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ul << i)) pts.push_back(s[i]);
    const std::size_t k = pts.size() - 1;
    std::vector<RatVec> d;
    for (std::size_t i = 1; i <= k; ++i) d.push_back(pts[i] - pts[0]);
    // (D^T D) mu = -D^T p0
    std::vector<std::vector<Rational>> g(k, std::vector<Rational>(k));
    std::vector<Rational> rhs(k);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) g[a][b] = dot(d[a], d[b]);
      rhs[a] = -dot(d[a], pts[0]);
    }
    auto mu = solve_square(g, rhs);
    if (!mu) continue;  // affinely dependent
    Rational first = 1;
    bool ok = true;
    RatVec x = pts[0];
    for (std::size_t a = 0; a < k; ++a) {
      if ((*mu)[a] < 0) ok = false;
      first -= (*mu)[a];
      x += d[a] * (*mu)[a];
    }
    if (!ok || first < 0) continue;
    if (!best || norm2(x) < norm2(*best)) best = x;
  }
  return *best;
}


/// Random nilpotent Lie bracket on Q^n: a two-step, filiform or Heisenberg
/// model transported by a random rational change of basis g, so that
/// mu'(x, y) = g mu(g^-1 x, g^-1 y).
inline orbitforge::RepVector random_nilpotent_bracket(std::mt19937_64& rng, std::size_t n) {
  using Tensor = std::vector<std::vector<std::vector<Rational>>>;
  Tensor c(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
  auto set = [&](std::size_t p, std::size_t q, std::size_t k, const Rational& v) {
    c[p][q][k] += v;
    c[q][p][k] -= v;
  };
  std::uniform_int_distribution<int> small(-2, 2);
  const int model = std::uniform_int_distribution<int>(0, 2)(rng);
  if (model == 0) {
    const std::size_t centre = std::uniform_int_distribution<std::size_t>(1, n - 2)(rng);
    bool any = false;
    for (std::size_t i = 0; i + centre < n; ++i)
      for (std::size_t j = i + 1; j + centre < n; ++j)
        for (std::size_t k = n - centre; k < n; ++k) {
          const int v = small(rng);
          if (v != 0) {
            set(i, j, k, v);
            any = true;
          }
        }
    if (!any) set(0, 1, n - 1, 1);
  } else if (model == 1) {
    for (std::size_t i = 1; i + 1 < n; ++i) set(0, i, i + 1, 1);
  } else {
    for (std::size_t i = 0; 2 * i + 2 < n; ++i) set(2 * i, 2 * i + 1, n - 1, 1);
  }

  // g = P U with U unit upper triangular; g^-1 column by column.
  std::vector<std::vector<Rational>> u(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    u[i][i] = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : 2;
    for (std::size_t j = i + 1; j < n; ++j) u[i][j] = small(rng);
  }
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) g[perm[i]] = u[i];
  std::vector<std::vector<Rational>> ginv(n, std::vector<Rational>(n));
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<Rational> e(n);
    e[col] = 1;
    const auto x = solve_square(g, e);
    for (std::size_t r = 0; r < n; ++r) ginv[r][col] = (*x)[r];
  }

  orbitforge::RepVector out(orbitforge::RepSpace::bracket(n));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) {
      std::vector<Rational> image(n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          const Rational w = ginv[a][p] * ginv[b][q];
          if (w == 0) continue;
          for (std::size_t k = 0; k < n; ++k) image[k] += w * c[a][b][k];
        }
      for (std::size_t r = 0; r < n; ++r) {
        Rational v = 0;
        for (std::size_t k = 0; k < n; ++k) v += g[r][k] * image[k];
        if (v != 0) out.set({static_cast<int>(p), static_cast<int>(q), static_cast<int>(r)}, orbitforge::Surd(v));
      }
    }
  return out;
}

}  // namespace oracle
