#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitforge/rational.hpp"
#include "orbitforge/surd.hpp"

namespace orbitforge {

/// Exact rational vector. Houses weights, roots, stratum labels and diagonal
/// group parameters; the dimension is fixed by context.
class RatVec {
 public:
  RatVec() = default;
  explicit RatVec(std::size_t n) : entries_(n) {}
  explicit RatVec(std::vector<Rational> entries) : entries_(std::move(entries)) {}
  RatVec(std::initializer_list<Rational> entries) : entries_(entries) {}

  static RatVec from_ints(std::initializer_list<long> values) {
    RatVec v(values.size());
    std::size_t i = 0;
    for (long x : values) v[i++] = x;
    return v;
  }

  std::size_t size() const { return entries_.size(); }
  Rational& operator[](std::size_t i) { return entries_[i]; }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Rational>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& r) { return r == 0; });
  }

  RatVec& operator+=(const RatVec& o) {
    check_dim(o);
    for (std::size_t i = 0; i < size(); ++i) entries_[i] += o[i];
    return *this;
  }
  RatVec& operator-=(const RatVec& o) {
    check_dim(o);
    for (std::size_t i = 0; i < size(); ++i) entries_[i] -= o[i];
    return *this;
  }
  RatVec& operator*=(const Rational& s) {
    for (auto& e : entries_) e *= s;
    return *this;
  }

  friend RatVec operator+(RatVec a, const RatVec& b) { return a += b; }
  friend RatVec operator-(RatVec a, const RatVec& b) { return a -= b; }
  friend RatVec operator-(RatVec a) {
    for (auto& e : a.entries_) e = -e;
    return a;
  }
  friend RatVec operator*(RatVec a, const Rational& s) { return a *= s; }
  friend RatVec operator*(const Rational& s, RatVec a) { return a *= s; }

  friend Rational dot(const RatVec& a, const RatVec& b) {
    a.check_dim(b);
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
  }
  friend Rational norm2(const RatVec& a) { return dot(a, a); }

  friend bool operator==(const RatVec& a, const RatVec& b) { return a.entries_ == b.entries_; }
  friend bool operator!=(const RatVec& a, const RatVec& b) { return !(a == b); }
  friend bool operator<(const RatVec& a, const RatVec& b) { return a.entries_ < b.entries_; }

  std::vector<double> to_doubles() const {
    std::vector<double> out;
    out.reserve(size());
    for (const auto& e : entries_) out.push_back(to_double(e));
    return out;
  }

  std::string str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < size(); ++i) {
      if (i) out += ", ";
      out += to_string(entries_[i]);
    }
    return out + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, const RatVec& v) { return os << v.str(); }

 private:
  void check_dim(const RatVec& o) const {
    if (o.size() != size()) throw std::invalid_argument("RatVec dimension mismatch");
  }
  std::vector<Rational> entries_;
};

/// Dense row-major matrix over an exact or floating scalar field.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix diagonal(const RatVec& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = ScalarTraits<T>::from_rational(d[i]);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && !ScalarTraits<T>::is_zero((*this)(i, j))) return false;
    return true;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] = a.data_[k] + b.data_[k];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] = a.data_[k] - b.data_[k];
    return a;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (ScalarTraits<T>::is_zero(a(i, k))) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = out(i, j) + a(i, k) * b(k, j);
      }
    return out;
  }

  friend Matrix operator*(Matrix a, const Rational& s) {
    const T factor = ScalarTraits<T>::from_rational(s);
    for (auto& x : a.data_) x = x * factor;
    return a;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using SymMatrix = Matrix<Surd>;

/// Trace inner product <A, B> = tr(A B^T).
template <class T>
T trace_inner(const Matrix<T>& a, const Matrix<T>& b) {
  T acc(0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) acc = acc + a(i, j) * b(i, j);
  return acc;
}

inline RatVec diagonal_of(const SymMatrix& m) {
  RatVec d(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) d[i] = m(i, i).rational_value();
  return d;
}

struct RowEchelon {
  RatMatrix reduced;
  std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form by Gauss-Jordan elimination.
inline RowEchelon rref(RatMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
    const Rational inv = Rational(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const RatMatrix& m) { return rref(m).pivot_cols.size(); }

/// Basis of {x : m x = 0}.
inline std::vector<RatVec> nullspace(const RatMatrix& m) {
  const RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVec v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of m x = b, or nullopt when the system is inconsistent.
inline std::optional<RatVec> solve(const RatMatrix& m, const RatVec& b) {
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const RowEchelon e = rref(aug);
  RatVec x(m.cols());
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
    if (e.pivot_cols[r] == m.cols()) return std::nullopt;
    x[e.pivot_cols[r]] = e.reduced(r, m.cols());
  }
  return x;
}

/// Matrix whose rows are the given vectors.
inline RatMatrix rows_matrix(const std::vector<RatVec>& rows, std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

/// Linear algebra over the number field generated by a set of surds, carried
/// out over Q through the regular representation: an F-matrix of rank r
/// expands to a Q-matrix of rank r * [F:Q].
class SurdField {
 public:
  explicit SurdField(const std::vector<Surd>& generators) {
    std::set<Integer> keys{Integer(1)};
    for (const auto& g : generators)
      for (const auto& [k, r] : g.terms()) keys.insert(k);
    bool grown = true;
    while (grown) {
      grown = false;
      std::vector<Integer> current(keys.begin(), keys.end());
      for (std::size_t a = 0; a < current.size(); ++a)
        for (std::size_t b = a + 1; b < current.size(); ++b) {
          const Integer g = boost::multiprecision::gcd(current[a], current[b]);
          if (keys.insert((current[a] / g) * (current[b] / g)).second) grown = true;
        }
    }
    basis_.assign(keys.begin(), keys.end());
  }

  std::size_t degree() const { return basis_.size(); }
  const std::vector<Integer>& basis() const { return basis_; }

  RatVec coordinates(const Surd& s) const {
    RatVec c(basis_.size());
    for (const auto& [k, r] : s.terms()) {
      auto it = std::lower_bound(basis_.begin(), basis_.end(), k);
      if (it == basis_.end() || *it != k) throw std::logic_error("surd outside the field");
      c[static_cast<std::size_t>(it - basis_.begin())] = r;
    }
    return c;
  }

  Surd element(std::size_t index) const { return Surd::signed_sqrt(Rational(basis_[index])); }

  /// Q-matrix of the F-linear map given by m.
  RatMatrix expand(const Matrix<Surd>& m) const {
    const std::size_t dg = degree();
    RatMatrix out(m.rows() * dg, m.cols() * dg);
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t b = 0; b < dg; ++b) {
        const Surd basis_element = element(b);
        for (std::size_t i = 0; i < m.rows(); ++i) {
          if (m(i, j).is_zero()) continue;
          const RatVec c = coordinates(m(i, j) * basis_element);
          for (std::size_t a = 0; a < dg; ++a) out(i * dg + a, j * dg + b) = c[a];
        }
      }
    return out;
  }

 private:
  std::vector<Integer> basis_;
};

/// Rank of a matrix with surd entries, over the field its entries generate.
inline std::size_t rank_over_field(const Matrix<Surd>& m) {
  std::vector<Surd> entries;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) entries.push_back(m(i, j));
  const SurdField field(entries);
  const std::size_t q_rank = rank(field.expand(m));
  if (q_rank % field.degree() != 0) throw std::logic_error("field expansion rank not divisible by degree");
  return q_rank / field.degree();
}

}  // namespace orbitforge
