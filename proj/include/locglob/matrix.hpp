#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace locglob {

/// Dense row-major matrix. `proto` supplies ring context for constants, so a
/// matrix over a quadratic ring knows its ring even when it is empty.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, const T& proto)
      : rows_(r), cols_(c), proto_(zero_like(proto)), a_(r * c, zero_like(proto)) {}
  Matrix(const std::vector<std::vector<T>>& rows, const T& proto) : proto_(zero_like(proto)) {
    rows_ = rows.size();
    cols_ = rows_ ? rows[0].size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ValidationError("ragged matrix rows");
      for (const auto& e : r) a_.push_back(e);
    }
  }

  static Matrix identity(std::size_t n, const T& proto) {
    Matrix m(n, n, proto);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one_like(proto);
    return m;
  }
  static Matrix diag(const std::vector<T>& d, const T& proto) {
    Matrix m(d.size(), d.size(), proto);
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  static Matrix column(const std::vector<T>& v, const T& proto) {
    Matrix m(v.size(), 1, proto);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  const T& proto() const { return proto_; }
  T zero() const { return zero_like(proto_); }
  T one() const { return one_like(proto_); }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<T> col(std::size_t j) const {
    std::vector<T> v;
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }
  std::vector<T> row(std::size_t i) const { return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }
  void set_col(std::size_t j, const std::vector<T>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_, proto_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc, proto_);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  Matrix columns(const std::vector<std::size_t>& idx) const {
    Matrix b(rows_, idx.size(), proto_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = (*this)(i, idx[j]);
    return b;
  }
  Matrix rows_sub(const std::vector<std::size_t>& idx) const {
    Matrix b(idx.size(), cols_, proto_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) b(i, j) = (*this)(idx[i], j);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  bool is_zero() const {
    for (const auto& e : a_)
      if (!locglob::is_zero(e)) return false;
    return true;
  }
  bool is_upper_triangular() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < i && j < cols_; ++j)
        if (!locglob::is_zero((*this)(i, j))) return false;
    return true;
  }
  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && !locglob::is_zero((*this)(i, j))) return false;
    return true;
  }

  template <class F>
  auto map(F f) const -> Matrix<decltype(f(std::declval<T>()))> {
    using U = decltype(f(std::declval<T>()));
    U p = f(proto_);
    Matrix<U> m(rows_, cols_, p);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = f((*this)(i, j));
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& e : a_) e *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  Matrix operator-() const {
    Matrix m = *this;
    for (auto& e : m.a_) e = -e;
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix dimension mismatch in product");
    Matrix c(a.rows_, b.cols_, a.proto_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (locglob::is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? ", " : "") + locglob::str((*this)(i, j));
      s += "]";
    }
    return s + "]";
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix dimension mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  T proto_{};
  std::vector<T> a_;
};

template <class T>
void require_square(const Matrix<T>& m) {
  if (!m.square())
    throw DomainError("square matrix required, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

/// Fraction-free determinant (Bareiss); exact over any of the coefficient types.
template <class T>
T det(const Matrix<T>& m) {
  require_square(m);
  std::size_t n = m.rows();
  if (n == 0) return m.one();
  Matrix<T> a = m;
  T prev = m.one();
  T sign = m.one();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(a(k, k))) {
      std::size_t p = k + 1;
      while (p < n && is_zero(a(p, k))) ++p;
      if (p == n) return m.zero();
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = exact_div(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
      a(i, k) = m.zero();
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Adjugate, adj(M) * M = det(M) * I.
template <class T>
Matrix<T> adjugate(const Matrix<T>& m) {
  require_square(m);
  std::size_t n = m.rows();
  Matrix<T> adj(n, n, m.proto());
  if (n == 1) {
    adj(0, 0) = m.one();
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> rs, cs;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != i) rs.push_back(k);
        if (k != j) cs.push_back(k);
      }
      T minor = det(m.rows_sub(rs).columns(cs));
      adj(j, i) = ((i + j) % 2 == 0) ? minor : T(-minor);
    }
  return adj;
}

/// All k x k minors of m (rows and columns in lexicographic order of index sets).
template <class T>
std::vector<T> minors(const Matrix<T>& m, std::size_t k) {
  std::vector<T> out;
  if (k == 0) return {m.one()};
  std::vector<std::size_t> rs, cs;
  std::function<void(std::size_t)> pick_cols;
  std::function<void(std::size_t)> pick_rows = [&](std::size_t start) {
    if (rs.size() == k) {
      pick_cols(0);
      return;
    }
    for (std::size_t i = start; i < m.rows(); ++i) {
      rs.push_back(i);
      pick_rows(i + 1);
      rs.pop_back();
    }
  };
  pick_cols = [&](std::size_t start) {
    if (cs.size() == k) {
      out.push_back(det(m.rows_sub(rs).columns(cs)));
      return;
    }
    for (std::size_t j = start; j < m.cols(); ++j) {
      cs.push_back(j);
      pick_cols(j + 1);
      cs.pop_back();
    }
  };
  pick_rows(0);
  return out;
}

template <class T>
Matrix<field_t<T>> to_field_matrix(const Matrix<T>& m) {
  return m.map([](const T& e) { return field_t<T>(to_field(e)); });
}

template <class F>
Matrix<ring_t<F>> to_ring_matrix(const Matrix<F>& m) {
  return m.map([](const F& e) { return to_ring(e); });
}

template <class F>
bool is_integral(const Matrix<F>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_integral(m(i, j))) return false;
  return true;
}

}  // namespace locglob
