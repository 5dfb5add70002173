#pragma once

#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "scalar.hpp"

namespace locglob {

/// Dense univariate polynomial, c[i] is the coefficient of x^i.
template <class T>
struct Poly {
  std::vector<T> c;
  T proto{};

  Poly() = default;
  explicit Poly(const T& p) : proto(zero_like(p)) {}
  Poly(std::vector<T> coeffs, const T& p) : c(std::move(coeffs)), proto(zero_like(p)) { trim(); }

  static Poly monomial(const T& coef, std::size_t k) {
    Poly r(coef);
    r.c.assign(k + 1, zero_like(coef));
    r.c[k] = coef;
    r.trim();
    return r;
  }
  /// x - r
  static Poly linear(const T& r) { return Poly({-r, one_like(r)}, r); }

  void trim() {
    while (!c.empty() && is_zero(c.back())) c.pop_back();
  }
  bool is_zero_poly() const { return c.empty(); }
  long degree() const { return static_cast<long>(c.size()) - 1; }
  const T& lead() const { return c.back(); }
  T coeff(std::size_t i) const { return i < c.size() ? c[i] : zero_like(proto); }

  T operator()(const T& x) const {
    T r = zero_like(proto);
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
  }
  Matrix<T> operator()(const Matrix<T>& m) const {
    Matrix<T> r(m.rows(), m.cols(), proto);
    Matrix<T> id = Matrix<T>::identity(m.rows(), proto);
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * m + id * (*it);
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r(a.proto);
    std::size_t n = std::max(a.c.size(), b.c.size());
    for (std::size_t i = 0; i < n; ++i) r.c.push_back(a.coeff(i) + b.coeff(i));
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r(a.proto);
    std::size_t n = std::max(a.c.size(), b.c.size());
    for (std::size_t i = 0; i < n; ++i) r.c.push_back(a.coeff(i) - b.coeff(i));
    r.trim();
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.proto);
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, zero_like(a.proto));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
  }
  friend Poly operator*(const T& s, const Poly& a) {
    Poly r = a;
    for (auto& e : r.c) e = s * e;
    r.trim();
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly derivative() const {
    Poly r(proto);
    for (std::size_t i = 1; i < c.size(); ++i) r.c.push_back(from_int(proto, Int(static_cast<long>(i))) * c[i]);
    r.trim();
    return r;
  }

  template <class F>
  auto map(F f) const -> Poly<decltype(f(std::declval<T>()))> {
    using U = decltype(f(std::declval<T>()));
    Poly<U> r(f(proto));
    for (const auto& e : c) r.c.push_back(f(e));
    r.trim();
    return r;
  }

  std::string str() const {
    if (c.empty()) return "0";
    std::string s;
    for (long i = degree(); i >= 0; --i) {
      if (is_zero(c[i])) continue;
      if (!s.empty()) s += " + ";
      std::string cs = "(" + locglob::str(c[i]) + ")";
      if (i == 0)
        s += locglob::str(c[i]);
      else
        s += (c[i] == one_like(proto) ? std::string() : cs + "*") + (i == 1 ? "x" : "x^" + std::to_string(i));
    }
    return s;
  }
};

/// Division with remainder by a polynomial with invertible leading coefficient
/// (any nonzero divisor over a field; a monic divisor over a ring).
template <class T>
std::pair<Poly<T>, Poly<T>> poly_divrem(const Poly<T>& a, const Poly<T>& b) {
  if (b.is_zero_poly()) throw DomainError("polynomial division by zero");
  Poly<T> q(a.proto), r = a;
  if (a.degree() < b.degree()) return {q, r};
  q.c.assign(a.c.size() - b.c.size() + 1, zero_like(a.proto));
  while (!r.is_zero_poly() && r.degree() >= b.degree()) {
    std::size_t k = static_cast<std::size_t>(r.degree() - b.degree());
    T coef = exact_div(r.lead(), b.lead());
    q.c[k] = coef;
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i + k] -= coef * b.c[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

/// Monic gcd over a field.
template <class F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero_poly()) {
    auto r = poly_divrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero_poly()) return a;
  F inv = exact_div(one_like(a.proto), a.lead());
  return inv * a;
}

/// Squarefree part of a monic polynomial with integral coefficients (char 0);
/// the result is monic with integral coefficients.
template <class T>
Poly<T> squarefree_part(const Poly<T>& f) {
  auto F = f.map([](const T& e) { return field_t<T>(to_field(e)); });
  auto g = poly_gcd(F, F.derivative());
  auto q = poly_divrem(F, g).first;
  q = exact_div(one_like(q.proto), q.lead()) * q;
  return q.map([](const field_t<T>& e) { return T(to_ring(e)); });
}

/// Sylvester resultant, computed as a fraction-free determinant.
template <class T>
T resultant(const Poly<T>& f, const Poly<T>& g) {
  long m = f.degree(), n = g.degree();
  if (m < 0 || n < 0) return zero_like(f.proto);
  std::size_t N = static_cast<std::size_t>(m + n);
  if (N == 0) return one_like(f.proto);
  Matrix<T> S(N, N, f.proto);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j <= m; ++j) S(i, i + j) = f.c[m - j];
  for (long i = 0; i < m; ++i)
    for (long j = 0; j <= n; ++j) S(n + i, i + j) = g.c[n - j];
  return det(S);
}

/// Discriminant of a monic polynomial, up to sign: Res(f, f').
template <class T>
T discriminant(const Poly<T>& f) {
  return resultant(f, f.derivative());
}

/// Characteristic polynomial det(xI - M) by the division-free Berkowitz recursion.
template <class T>
Poly<T> charpoly(const Matrix<T>& A) {
  require_square(A);
  std::size_t n = A.rows();
  T zero = A.zero(), one = A.one();
  std::vector<T> p{one};  // highest degree first
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<T> q(k + 2, zero);
    q[0] = one;
    q[1] = -A(k, k);
    // v = C, then M v, M^2 v, ...
    std::vector<T> v(k, zero);
    for (std::size_t i = 0; i < k; ++i) v[i] = A(i, k);
    for (std::size_t j = 0; j < k; ++j) {
      T s = zero;
      for (std::size_t i = 0; i < k; ++i) s += A(k, i) * v[i];
      q[j + 2] = -s;
      std::vector<T> nv(k, zero);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t i = 0; i < k; ++i) nv[r] += A(r, i) * v[i];
      v = std::move(nv);
    }
    std::vector<T> np(k + 2, zero);
    for (std::size_t i = 0; i < k + 2; ++i)
      for (std::size_t j = 0; j <= i && j < p.size(); ++j) np[i] += q[i - j] * p[j];
    p = std::move(np);
  }
  std::vector<T> low(p.rbegin(), p.rend());
  return Poly<T>(low, A.proto());
}

}  // namespace locglob
