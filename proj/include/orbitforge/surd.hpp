#pragma once

#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "orbitforge/rational.hpp"

namespace orbitforge {

/// Returns (s, f) with n = s^2 * f and f squarefree. Trial division is exact for
/// n whose cofactor above the trial bound is a square or below the bound cubed;
/// anything else throws rather than guessing.
inline std::pair<Integer, Integer> squarefree_split(Integer n) {
  if (n <= 0) throw std::domain_error("squarefree_split needs a positive integer");
  constexpr long kTrialBound = 100000;
  Integer square_root = 1;
  Integer free_part = 1;
  for (long p = 2; p <= kTrialBound && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    int multiplicity = 0;
    while (n % p == 0) {
      n /= p;
      ++multiplicity;
    }
    for (int k = 0; k + 1 < multiplicity; k += 2) square_root *= p;
    if (multiplicity % 2 == 1) free_part *= p;
  }
  if (n > 1) {
    Integer r;
    if (is_perfect_square(n, &r)) {
      square_root *= r;
    } else {
      const Integer bound = Integer(kTrialBound);
      if (n >= bound * bound * bound)
        throw std::domain_error("cannot certify squarefree part of " + n.str());
      free_part *= n;
    }
  }
  return {square_root, free_part};
}

/// Exact element of Q(sqrt 2, sqrt 3, ...): a finite sum r_k * sqrt(k) over
/// distinct squarefree k. Square roots of distinct squarefree integers are
/// linearly independent over Q, so the representation is canonical and
/// equality is exact.
class Surd {
 public:
  using Terms = std::map<Integer, Rational>;

  Surd() = default;
  Surd(const Rational& r) {  // NOLINT(google-explicit-constructor)
    if (r != 0) terms_.emplace(Integer(1), r);
  }
  Surd(long v) : Surd(Rational(v)) {}  // NOLINT(google-explicit-constructor)

  /// sign * sqrt(square) for a rational square >= 0.
  static Surd signed_sqrt(const Rational& square, int sgn = 1) {
    if (square < 0) throw std::domain_error("signed_sqrt of a negative square");
    if (sgn != 1 && sgn != -1) throw std::domain_error("sign must be +1 or -1");
    if (square == 0) return {};
    const Integer p = numerator(square);
    const Integer q = denominator(square);
    auto [s, f] = squarefree_split(p * q);
    Surd out;
    out.terms_.emplace(f, Rational(s, q) * sgn);
    return out;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1); }

  Rational rational_value() const {
    if (!is_rational()) throw std::domain_error("surd is irrational");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
  }

  /// True when the value is sign * sqrt(square) for a rational square.
  bool is_signed_square() const { return terms_.size() <= 1; }

  std::pair<Rational, int> signed_square() const {
    if (!is_signed_square()) throw std::domain_error("surd is not a single signed square root");
    if (terms_.empty()) return {Rational(0), 1};
    const auto& [k, r] = *terms_.begin();
    return {r * r * Rational(k), r.sign() < 0 ? -1 : 1};
  }

  double to_double() const {
    double acc = 0.0;
    for (const auto& [k, r] : terms_) acc += orbitforge::to_double(r) * std::sqrt(k.convert_to<double>());
    return acc;
  }

  Surd operator-() const {
    Surd out = *this;
    for (auto& [k, r] : out.terms_) r = -r;
    return out;
  }

  Surd& operator+=(const Surd& other) {
    for (const auto& [k, r] : other.terms_) add_term(k, r);
    return *this;
  }
  Surd& operator-=(const Surd& other) {
    for (const auto& [k, r] : other.terms_) add_term(k, -r);
    return *this;
  }
  Surd& operator*=(const Surd& other) {
    *this = *this * other;
    return *this;
  }

  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
  friend Surd operator*(const Surd& a, const Surd& b) {
    Surd out;
    for (const auto& [ka, ra] : a.terms_) {
      for (const auto& [kb, rb] : b.terms_) {
        const Integer g = boost::multiprecision::gcd(ka, kb);
        out.add_term((ka / g) * (kb / g), ra * rb * Rational(g));
      }
    }
    return out;
  }
  friend Surd operator*(Surd a, const Rational& s) {
    if (s == 0) return {};
    for (auto& [k, r] : a.terms_) r *= s;
    return a;
  }
  friend Surd operator*(const Rational& s, Surd a) { return std::move(a) * s; }
  friend Surd operator/(Surd a, const Rational& s) {
    if (s == 0) throw std::domain_error("surd division by zero");
    for (auto& [k, r] : a.terms_) r /= s;
    return a;
  }

  friend bool operator==(const Surd& a, const Surd& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Surd& a, const Surd& b) { return !(a == b); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, r] : terms_) {
      if (!first) out += " + ";
      first = false;
      out += orbitforge::to_string(r);
      if (k != 1) out += "*sqrt(" + k.str() + ")";
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Surd& s) { return os << s.str(); }

 private:
  void add_term(const Integer& key, const Rational& value) {
    if (value == 0) return;
    auto [it, inserted] = terms_.emplace(key, value);
    if (!inserted) {
      it->second += value;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Terms terms_;
};

/// Uniform access for the scalar fields the templates run over.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static Rational from_rational(const Rational& r) { return r; }
  static bool is_zero(const Rational& x) { return x == 0; }
  static double to_double(const Rational& x) { return orbitforge::to_double(x); }
};

template <>
struct ScalarTraits<Surd> {
  static Surd from_rational(const Rational& r) { return Surd(r); }
  static bool is_zero(const Surd& x) { return x.is_zero(); }
  static double to_double(const Surd& x) { return x.to_double(); }
};

template <>
struct ScalarTraits<double> {
  static double from_rational(const Rational& r) { return orbitforge::to_double(r); }
  static bool is_zero(double x) { return x == 0.0; }
  static double to_double(double x) { return x; }
};

}  // namespace orbitforge
