#pragma once

// Exact dense linear algebra over Q(sqrt(3)).
//
// Everything is computed by Gauss-Jordan elimination with exact field
// arithmetic; pivots are the first nonzero entry of each column, so results
// are deterministic. Subspace stores the unique reduced row-echelon basis,
// which makes subspace equality a plain list comparison.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "holcat/rational.hpp"

namespace holcat {

using Vector = std::vector<Scalar>;

class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, Scalar(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
      : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_)
      throw std::invalid_argument("Matrix: entry count");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
  }
  static Matrix from_rows(const std::vector<Vector>& rows) {
    if (rows.empty()) return Matrix(0, 0);
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("Matrix: ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
  const std::vector<Scalar>& entries() const { return e_; }

  Vector row(std::size_t r) const {
    return Vector(e_.begin() + r * cols_, e_.begin() + (r + 1) * cols_);
  }
  Vector col(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, c);
    return v;
  }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_square() const { return rows_ == cols_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.e_) x = -x;
    return r;
  }
  Matrix& operator+=(const Matrix& o) {
    check_shape(o);
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_shape(o);
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  Matrix& operator*=(const Scalar& c) {
    for (auto& x : e_) x *= c;
    return *this;
  }
  friend Matrix operator*(Matrix m, const Scalar& c) { return m *= c; }
  friend Matrix operator*(const Scalar& c, Matrix m) { return m *= c; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: product shape");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Scalar& bkj = b.at(k, j);
          if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
        }
      }
    return r;
  }

  Vector apply(const Vector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("Matrix: apply shape");
    Vector r(rows_, Scalar(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Vector flatten() const { return e_; }
  static Matrix unflatten(std::size_t rows, std::size_t cols, const Vector& v) {
    return Matrix(rows, cols, v);
  }

  Scalar trace() const {
    if (!is_square()) throw std::invalid_argument("Matrix: trace of non-square");
    Scalar t(0);
    for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < rows_; ++i) {
      out += "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) out += ", ";
        out += at(i, j).str();
      }
      out += "]\n";
    }
    return out;
  }

private:
  void check_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("Matrix: shape mismatch");
  }

  std::size_t rows_, cols_;
  std::vector<Scalar> e_;
};

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// In-place Gauss-Jordan. Returns the pivot columns.
inline std::vector<std::size_t> rref_in_place(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m.at(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    Scalar inv = Scalar(1) / m.at(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Scalar f = m.at(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline Matrix rref(Matrix m) {
  rref_in_place(m);
  return m;
}

inline std::size_t rank(Matrix m) { return rref_in_place(m).size(); }

// Canonical subspace: the unique RREF basis of the span.
class Subspace {
public:
  Subspace() : ambient_(0) {}
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
    Subspace s(ambient_dim);
    if (vectors.empty()) return s;
    for (const auto& v : vectors)
      if (v.size() != ambient_dim)
        throw std::invalid_argument("Subspace::span: dimension mismatch");
    Matrix m = Matrix::from_rows(vectors);
    auto pivots = rref_in_place(m);
    for (std::size_t i = 0; i < pivots.size(); ++i) s.basis_.push_back(m.row(i));
    return s;
  }
  static Subspace full(std::size_t ambient_dim) {
    Subspace s(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) {
      Vector v(ambient_dim, Scalar(0));
      v[i] = Scalar(1);
      s.basis_.push_back(std::move(v));
    }
    return s;
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }
  bool is_zero() const { return basis_.empty(); }
  bool is_full() const { return basis_.size() == ambient_; }

  bool contains(const Vector& v) const {
    if (v.size() != ambient_)
      throw std::invalid_argument("Subspace::contains: dimension mismatch");
    Vector w = reduce(v);
    for (const auto& x : w)
      if (!x.is_zero()) return false;
    return true;
  }
  bool contains(const Subspace& other) const {
    for (const auto& v : other.basis_)
      if (!contains(v)) return false;
    return true;
  }

  // v minus its projection onto the span, computed against the RREF basis.
  Vector reduce(Vector v) const {
    for (const auto& b : basis_) {
      std::size_t p = 0;
      while (p < ambient_ && b[p].is_zero()) ++p;
      if (p == ambient_ || v[p].is_zero()) continue;
      Scalar f = v[p];
      for (std::size_t j = p; j < ambient_; ++j) v[j] -= f * b[j];
    }
    return v;
  }

  Subspace sum(const Subspace& other) const {
    if (ambient_ != other.ambient_)
      throw std::invalid_argument("Subspace::sum: ambient mismatch");
    std::vector<Vector> all = basis_;
    all.insert(all.end(), other.basis_.begin(), other.basis_.end());
    return span(ambient_, all);
  }

  Subspace intersect(const Subspace& other) const {
    if (ambient_ != other.ambient_)
      throw std::invalid_argument("Subspace::intersect: ambient mismatch");
    // Zassenhaus: row-reduce [A|A; B|0]; rows with zero left half carry the
    // intersection in the right half.
    std::size_t n = ambient_;
    Matrix m(dim() + other.dim(), 2 * n);
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < n; ++j) {
        m.at(i, j) = basis_[i][j];
        m.at(i, n + j) = basis_[i][j];
      }
    for (std::size_t i = 0; i < other.dim(); ++i)
      for (std::size_t j = 0; j < n; ++j) m.at(dim() + i, j) = other.basis_[i][j];
    rref_in_place(m);
    std::vector<Vector> inter;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      bool left_zero = true;
      for (std::size_t j = 0; j < n && left_zero; ++j)
        if (!m.at(i, j).is_zero()) left_zero = false;
      if (!left_zero) continue;
      Vector v(n);
      bool nonzero = false;
      for (std::size_t j = 0; j < n; ++j) {
        v[j] = m.at(i, n + j);
        nonzero = nonzero || !v[j].is_zero();
      }
      if (nonzero) inter.push_back(std::move(v));
    }
    return span(n, inter);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
  std::size_t ambient_;
  std::vector<Vector> basis_;
};

// Canonical nullspace basis of {v : m v = 0}: one vector per free column,
// ordered by free-column index, with a unit entry at that column.
inline Subspace nullspace(Matrix m) {
  std::size_t n = m.cols();
  auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v(n, Scalar(0));
    v[f] = Scalar(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m.at(i, f);
    basis.push_back(std::move(v));
  }
  Subspace s(n);
  return Subspace::span(n, basis);
}

// One exact solution of m x = b, or nullopt when inconsistent. Free variables
// are set to zero.
inline std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: shape mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  auto pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols(), Scalar(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, m.cols());
  return x;
}

// Exact inverse; throws when singular.
inline Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse: non-square");
  std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = Scalar(1);
  }
  auto pivots = rref_in_place(aug);
  if (pivots.size() != n || pivots.back() != n - 1)
    throw std::domain_error("inverse: singular matrix");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

inline Scalar determinant(Matrix m) {
  if (!m.is_square()) throw std::invalid_argument("determinant: non-square");
  std::size_t n = m.rows();
  Scalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m.at(p, c).is_zero()) ++p;
    if (p == n) return Scalar(0);
    if (p != c) {
      for (std::size_t j = c; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
      det = -det;
    }
    det *= m.at(c, c);
    Scalar inv = Scalar(1) / m.at(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m.at(i, c).is_zero()) continue;
      Scalar f = m.at(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return det;
}

}  // namespace holcat
