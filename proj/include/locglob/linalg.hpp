#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "ideal.hpp"
#include "integer.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "quad.hpp"
#include "scalar.hpp"

namespace locglob {

// ---------------------------------------------------------------- fields

/// Reduced row echelon form over a field; returns pivot columns.
template <class F>
std::vector<std::size_t> rref_inplace(Matrix<F>& a) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t j = 0; j < a.cols() && r < a.rows(); ++j) {
    std::size_t p = r;
    while (p < a.rows() && is_zero(a(p, j))) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(p, k), a(r, k));
    F inv = exact_div(a.one(), a(r, j));
    for (std::size_t k = 0; k < a.cols(); ++k) a(r, k) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || is_zero(a(i, j))) continue;
      F f = a(i, j);
      for (std::size_t k = 0; k < a.cols(); ++k) a(i, k) -= f * a(r, k);
    }
    piv.push_back(j);
    ++r;
  }
  return piv;
}

template <class F>
std::size_t rank(Matrix<F> a) {
  return rref_inplace(a).size();
}

/// Basis of the right kernel over a field, as columns of the returned matrix.
template <class F>
Matrix<F> kernel(Matrix<F> a) {
  auto piv = rref_inplace(a);
  std::vector<bool> is_piv(a.cols(), false);
  for (auto j : piv) is_piv[j] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!is_piv[j]) free.push_back(j);
  Matrix<F> K(a.cols(), free.size(), a.proto());
  for (std::size_t f = 0; f < free.size(); ++f) {
    K(free[f], f) = a.one();
    for (std::size_t r = 0; r < piv.size(); ++r) K(piv[r], f) = -a(r, free[f]);
  }
  return K;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
  require_square(m);
  std::size_t n = m.rows();
  Matrix<F> aug(n, 2 * n, m.proto());
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix<F>::identity(n, m.proto()));
  auto piv = rref_inplace(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw DomainError("matrix is singular");
  return aug.block(0, n, n, n);
}

/// Inverse of a ring matrix whose determinant is a unit.
template <class T>
Matrix<T> unimodular_inverse(const Matrix<T>& m) {
  auto inv = inverse(to_field_matrix(m));
  if (!is_integral(inv)) throw DomainError("matrix is not invertible over the ring");
  return to_ring_matrix(inv);
}

/// Some solution x of a x = b over a field, if one exists.
template <class F>
std::optional<std::vector<F>> solve_field(const Matrix<F>& a, const std::vector<F>& b) {
  Matrix<F> aug(a.rows(), a.cols() + 1, a.proto());
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < a.rows(); ++i) aug(i, a.cols()) = b[i];
  auto piv = rref_inplace(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  std::vector<F> x(a.cols(), a.zero());
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, a.cols());
  return x;
}

// ---------------------------------------------------------------- Euclidean rings

/// 2x2 matrix E with det E = 1 and E (a, b)^T = (g, 0)^T.
template <class T>
struct Bezout {
  T s, t, u, v, g;
};

template <class T>
Bezout<T> bezout(const T& a0, const T& b0) {
  require_euclidean(a0);
  T one = one_like(a0), zero = zero_like(a0);
  T s = one, t = zero, u = zero, v = one;
  T a = a0, b = b0;
  bool neg = false;
  while (!is_zero(b)) {
    auto [q, r] = divrem(a, b);
    // (a, b) <- (b, r), E <- [[0,1],[1,-q]] E
    T ns = u, nt = v, nu = s - q * u, nv = t - q * v;
    s = ns;
    t = nt;
    u = nu;
    v = nv;
    a = b;
    b = r;
    neg = !neg;
  }
  if (neg) {
    u = -u;
    v = -v;
  }
  return {s, t, u, v, a};
}

template <class T>
struct HnfResult {
  Matrix<T> H, U;  // U * A = H
  std::vector<std::size_t> pivots;
};

/// Row Hermite normal form over Z or a norm-Euclidean quadratic order.
/// Pivots are canonical associates, entries above a pivot are canonical residues.
template <class T>
HnfResult<T> hnf(const Matrix<T>& A) {
  require_euclidean(A.proto());
  std::size_t m = A.rows(), n = A.cols();
  Matrix<T> H = A;
  Matrix<T> U = Matrix<T>::identity(m, A.proto());
  auto rowop2 = [&](Matrix<T>& X, std::size_t i, std::size_t k, const Bezout<T>& e) {
    for (std::size_t c = 0; c < X.cols(); ++c) {
      T xi = X(i, c), xk = X(k, c);
      X(i, c) = e.s * xi + e.t * xk;
      X(k, c) = e.u * xi + e.v * xk;
    }
  };
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t j = 0; j < n && r < m; ++j) {
    for (std::size_t i = r + 1; i < m; ++i) {
      if (is_zero(H(i, j))) continue;
      auto e = bezout(H(r, j), H(i, j));
      rowop2(H, r, i, e);
      rowop2(U, r, i, e);
    }
    if (is_zero(H(r, j))) continue;
    auto [c, u] = normalize_unit(H(r, j));
    for (std::size_t k = 0; k < n; ++k) H(r, k) = u * H(r, k);
    for (std::size_t k = 0; k < m; ++k) U(r, k) = u * U(r, k);
    for (std::size_t i = 0; i < r; ++i) {
      T red = reduce_mod(H(i, j), H(r, j));
      T q = exact_div(H(i, j) - red, H(r, j));
      if (is_zero(q)) continue;
      for (std::size_t k = 0; k < n; ++k) H(i, k) -= q * H(r, k);
      for (std::size_t k = 0; k < m; ++k) U(i, k) -= q * U(r, k);
    }
    piv.push_back(j);
    ++r;
  }
  return {H, U, piv};
}

template <class T>
struct SnfResult {
  Matrix<T> D, U, V;  // U * A * V = D
  std::size_t rank = 0;
};

/// Smith normal form with unimodular transforms over Z or a norm-Euclidean order.
template <class T>
SnfResult<T> snf(const Matrix<T>& A) {
  require_euclidean(A.proto());
  std::size_t m = A.rows(), n = A.cols();
  Matrix<T> D = A;
  Matrix<T> U = Matrix<T>::identity(m, A.proto());
  Matrix<T> V = Matrix<T>::identity(n, A.proto());
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t k = 0; k < n; ++k) std::swap(D(a, k), D(b, k));
    for (std::size_t k = 0; k < m; ++k) std::swap(U(a, k), U(b, k));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t k = 0; k < m; ++k) std::swap(D(k, a), D(k, b));
    for (std::size_t k = 0; k < n; ++k) std::swap(V(k, a), V(k, b));
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const T& q) {  // row dst += q row src
    for (std::size_t k = 0; k < n; ++k) D(dst, k) += q * D(src, k);
    for (std::size_t k = 0; k < m; ++k) U(dst, k) += q * U(src, k);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const T& q) {
    for (std::size_t k = 0; k < m; ++k) D(k, dst) += q * D(k, src);
    for (std::size_t k = 0; k < n; ++k) V(k, dst) += q * V(k, src);
  };
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    bool found = false;
    std::size_t bi = t, bj = t;
    Int best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (is_zero(D(i, j))) continue;
        Int nm = abs_norm(D(i, j));
        if (!found || nm < best) {
          found = true;
          best = nm;
          bi = i;
          bj = j;
        }
      }
    if (!found) break;
    swap_rows(t, bi);
    swap_cols(t, bj);
    while (true) {
      bool changed = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (is_zero(D(i, t))) continue;
        auto [q, r] = divrem(D(i, t), D(t, t));
        add_row(i, t, -q);
        if (!is_zero(r)) {
          swap_rows(i, t);
          changed = true;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (is_zero(D(t, j))) continue;
        auto [q, r] = divrem(D(t, j), D(t, t));
        add_col(j, t, -q);
        if (!is_zero(r)) {
          swap_cols(j, t);
          changed = true;
        }
      }
      if (changed) continue;
      for (std::size_t i = t + 1; i < m && !changed; ++i)
        for (std::size_t j = t + 1; j < n && !changed; ++j)
          if (!divides_elem(D(t, t), D(i, j))) {
            add_row(t, i, one_like(A.proto()));
            changed = true;
          }
      if (!changed) break;
    }
    auto [c, u] = normalize_unit(D(t, t));
    for (std::size_t k = 0; k < n; ++k) D(t, k) = u * D(t, k);
    for (std::size_t k = 0; k < m; ++k) U(t, k) = u * U(t, k);
  }
  return {D, U, V, t};
}

inline std::string content_str(const std::vector<Int>& v);
inline std::string content_str(const std::vector<QuadInt>& v);

/// Square matrix over a Euclidean ring with first column v and determinant 1
/// (for n = 1 the determinant is v itself, necessarily a unit).
template <class T>
Matrix<T> unimodular_complete(const std::vector<T>& v) {
  if (v.empty()) throw DomainError("empty vector");
  const T& proto = v[0];
  require_euclidean(proto);
  std::size_t n = v.size();
  std::vector<T> w = v;
  Matrix<T> Tm = Matrix<T>::identity(n, proto);  // running inverse of the row operations
  for (std::size_t i = 1; i < n; ++i) {
    if (is_zero(w[i])) continue;
    auto e = bezout(w[0], w[i]);
    w[0] = e.g;
    w[i] = zero_like(proto);
    // columns (0, i) of Tm times E^{-1} = [[v, -t], [-u, s]]
    for (std::size_t r = 0; r < n; ++r) {
      T a = Tm(r, 0), b = Tm(r, i);
      Tm(r, 0) = a * e.v - b * e.u;
      Tm(r, i) = -(a * e.t) + b * e.s;
    }
  }
  if (!is_unit(w[0])) throw ContentError("vector is not primitive, content " + content_str(v));
  // Tm e1 = v / g; rescale column 0 by g, compensate on column 1
  const T& g = w[0];
  for (std::size_t r = 0; r < n; ++r) Tm(r, 0) = Tm(r, 0) * g;
  if (n >= 2) {
    T d = det(Tm);
    T dinv = unit_inverse(d);
    for (std::size_t r = 0; r < n; ++r) Tm(r, 1) = Tm(r, 1) * dinv;
    if (!is_zero(v[0]))
      for (std::size_t j = 1; j < n; ++j) {
        T red = reduce_mod(Tm(0, j), v[0]);
        T q = exact_div(Tm(0, j) - red, v[0]);
        if (is_zero(q)) continue;
        for (std::size_t r = 0; r < n; ++r) Tm(r, j) -= q * Tm(r, 0);
      }
  }
  for (std::size_t r = 0; r < n; ++r)
    if (Tm(r, 0) != v[r]) throw ConsistencyError("completion lost the first column");
  return Tm;
}

/// Ideal generated by the entries (gcd over Z).
inline Int content(const std::vector<Int>& v) {
  Int g = 0;
  for (const auto& e : v) g = gcd(g, e);
  if (g == 0) throw DomainError("content of the zero vector");
  return g;
}
inline QuadIdeal content(const std::vector<QuadInt>& v) {
  std::vector<QuadInt> nz;
  for (const auto& e : v)
    if (!e.is_zero()) nz.push_back(e);
  if (nz.empty()) throw DomainError("content of the zero vector");
  return QuadIdeal::generated_by(nz[0].ring(), nz);
}
inline Rat content(const std::vector<Rat>& v) {
  Int D = 1;
  for (const auto& e : v) D = lcm(D, e.get_den());
  std::vector<Int> w;
  for (const auto& e : v) w.push_back(to_ring(e * Rat(D)));
  return Rat(content(w), D);
}
inline QuadIdeal content(const std::vector<QuadRat>& v) {
  std::vector<QuadRat> nz;
  for (const auto& e : v)
    if (!e.is_zero()) nz.push_back(e);
  if (nz.empty()) throw DomainError("content of the zero vector");
  return QuadIdeal::generated_by(nz[0].ring(), nz);
}
inline std::string content_str(const std::vector<Int>& v) { return "(" + content(v).get_str() + ")"; }
inline std::string content_str(const std::vector<QuadInt>& v) { return content(v).str(); }

/// Basis (as columns, column Hermite form) of span(B) intersected with O^n.
template <class T>
Matrix<T> saturate(const Matrix<T>& B) {
  std::size_t k = B.cols();
  auto S = snf(B);
  if (S.rank < k) throw RankError("input vectors are linearly dependent");
  Matrix<T> Uinv = unimodular_inverse(S.U);
  Matrix<T> basis = Uinv.block(0, 0, B.rows(), k);
  return hnf(basis.transpose()).H.transpose();
}

/// Some x over the ring with A x = b, via the Smith form.
template <class T>
std::optional<std::vector<T>> solve_integral(const Matrix<T>& A, const std::vector<T>& b) {
  auto S = snf(A);
  std::vector<T> c(A.rows(), A.zero());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t k = 0; k < A.rows(); ++k) c[i] += S.U(i, k) * b[k];
  std::vector<T> y(A.cols(), A.zero());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    if (i < S.rank) {
      if (!divides_elem(S.D(i, i), c[i])) return std::nullopt;
      y[i] = exact_div(c[i], S.D(i, i));
    } else if (!is_zero(c[i])) {
      return std::nullopt;
    }
  }
  std::vector<T> x(A.cols(), A.zero());
  for (std::size_t i = 0; i < A.cols(); ++i)
    for (std::size_t k = 0; k < A.cols(); ++k) x[i] += S.V(i, k) * y[k];
  return x;
}

/// Matrix of multiplication by e on Z^2 = Z + Z w.
inline Matrix<Int> mult_matrix(const QuadInt& e) {
  const QuadRing& R = e.ring();
  Matrix<Int> m(2, 2, Int(0));
  m(0, 0) = e.x();
  m(1, 0) = e.y();
  m(0, 1) = -e.y() * R.nw;
  m(1, 1) = e.x() + R.t * e.y();
  return m;
}

/// Z-linear image of an O-matrix: each entry becomes its 2x2 multiplication block.
inline Matrix<Int> restrict_scalars(const Matrix<QuadInt>& A) {
  Matrix<Int> Z(2 * A.rows(), 2 * A.cols(), Int(0));
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) Z.set_block(2 * i, 2 * j, mult_matrix(A(i, j)));
  return Z;
}

/// Some X over O with A X = B, solved on Z coordinates (works for any order).
inline std::optional<Matrix<QuadInt>> solve_over_order(const Matrix<QuadInt>& A, const Matrix<QuadInt>& B) {
  const QuadRing& R = A.proto().ring();
  Matrix<Int> Z = restrict_scalars(A);
  Matrix<QuadInt> X(A.cols(), B.cols(), A.proto());
  for (std::size_t j = 0; j < B.cols(); ++j) {
    std::vector<Int> rhs;
    for (std::size_t i = 0; i < B.rows(); ++i) {
      rhs.push_back(B(i, j).x());
      rhs.push_back(B(i, j).y());
    }
    auto sol = solve_integral(Z, rhs);
    if (!sol) return std::nullopt;
    for (std::size_t i = 0; i < A.cols(); ++i) X(i, j) = QuadInt(R, (*sol)[2 * i], (*sol)[2 * i + 1]);
  }
  return X;
}
inline std::optional<Matrix<Int>> solve_over_order(const Matrix<Int>& A, const Matrix<Int>& B) {
  Matrix<Int> X(A.cols(), B.cols(), Int(0));
  for (std::size_t j = 0; j < B.cols(); ++j) {
    auto sol = solve_integral(A, B.col(j));
    if (!sol) return std::nullopt;
    X.set_col(j, *sol);
  }
  return X;
}

// ---------------------------------------------------------------- eigenvalues

template <class F>
struct Eigen {
  F value;
  std::size_t multiplicity = 0;
  Matrix<F> kernel;  // columns span ker(M - value I)
};

template <class F>
struct EigenData {
  bool split = false;
  Poly<F> charpoly;
  std::vector<Eigen<F>> eigen;  // ascending (integers) or lexicographic (quadratic) order
};

/// Integral roots of a monic integral polynomial, ascending.
inline std::vector<Int> integral_roots(const Poly<Int>& g, std::uint64_t bound = kDefaultTrialBound) {
  std::vector<Int> out;
  Poly<Int> h = g;
  if (h.degree() <= 0) return out;
  if (is_zero(h.c[0])) out.push_back(0);
  while (!h.c.empty() && is_zero(h.c[0])) h.c.erase(h.c.begin());
  if (h.degree() > 0)
    for (const auto& d : divisors(h.c[0], bound))
      for (const Int& r : {d, Int(-d)})
        if (is_zero(h(r))) out.push_back(r);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// Durand-Kerner on the complex embedding; returns approximations only.
inline std::vector<std::complex<long double>> approx_roots(const Poly<QuadInt>& h) {
  using C = std::complex<long double>;
  const QuadRing& R = h.proto.ring();
  const C w(R.t / 2.0L, std::sqrt(static_cast<long double>(-R.discriminant())) / 2.0L);
  std::size_t n = static_cast<std::size_t>(h.degree());
  std::vector<C> a(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    a[i] = C(static_cast<long double>(h.c[i].x().get_d())) + w * static_cast<long double>(h.c[i].y().get_d());
  C lead = a[n];
  for (auto& v : a) v /= lead;
  long double radius = 1;
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, 1 + std::abs(a[i]));
  std::vector<C> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::polar(radius, 0.4L + 6.283185307179586L * i / n);
  for (int it = 0; it < 2000; ++it) {
    long double change = 0;
    for (std::size_t i = 0; i < n; ++i) {
      C num = a[n];
      for (std::size_t k = n; k-- > 0;) num = num * z[i] + a[k];
      C den = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      if (std::abs(den) == 0) den = 1e-18L;
      C step = num / den;
      z[i] -= step;
      change = std::max(change, std::abs(step) / (1 + std::abs(z[i])));
    }
    if (change < 1e-17L) break;
  }
  return z;
}

/// True when h has no root modulo some split prime below the search limit, which
/// rules out roots in O_k. The map sends w to a root of w^2 - t w + N(w) in F_p.
inline bool rootless_mod_split_prime(const Poly<QuadInt>& h, long limit = 400) {
  const QuadRing& R = h.proto.ring();
  for (long p : primes_up_to(limit)) {
    if (R.discriminant() % p == 0) continue;
    long rho = -1;
    for (long v = 0; v < p && rho < 0; ++v)
      if ((v * v - R.t * v + R.nw) % p == 0) rho = v;
    if (rho < 0) continue;  // inert
    std::vector<long> c;
    for (const auto& e : h.c) c.push_back(floor_mod(e.x() + e.y() * rho, Int(p)).get_si());
    bool has_root = false;
    for (long x = 0; x < p && !has_root; ++x) {
      long acc = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * x + *it) % p;
      has_root = acc == 0;
    }
    if (!has_root) return true;
  }
  return false;
}

}  // namespace detail

/// Roots in O_k of a polynomial over O_k (imaginary quadratic).
inline std::vector<QuadInt> integral_roots(const Poly<QuadInt>& g, std::uint64_t bound = kDefaultTrialBound) {
  std::vector<QuadInt> out;
  Poly<QuadInt> h = g;
  const QuadRing& R = g.proto.ring();
  if (h.degree() <= 0) return out;
  if (is_zero(h.c[0])) out.emplace_back(R, 0);
  while (!h.c.empty() && is_zero(h.c[0])) h.c.erase(h.c.begin());
  auto take = [&](const QuadInt& r) {
    bool hit = false;
    while (h.degree() > 0 && is_zero(h(r))) {
      h = poly_divrem(h, Poly<QuadInt>::linear(r)).first;
      hit = true;
    }
    if (hit) out.push_back(r);
    return hit;
  };
  if (h.degree() > 0) {
    const long double im = std::sqrt(static_cast<long double>(-R.discriminant())) / 2.0L;
    for (const auto& z : detail::approx_roots(h)) {
      if (h.degree() <= 0) break;
      long double yr = z.imag() / im, xr = z.real() - yr * R.t / 2.0L;
      Int y0(static_cast<double>(std::llround(yr))), x0(static_cast<double>(std::llround(xr)));
      if (std::abs(yr) > 9e15L || std::abs(xr) > 9e15L) continue;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) take(QuadInt(R, x0 + dx, y0 + dy));
    }
  }
  // The numeric pass only proposes candidates. Whatever is left is either shown
  // rootless modulo a split prime or searched exhaustively.
  if (h.degree() > 0 && !detail::rootless_mod_split_prime(h))
    for (const auto& d : divisors(h.c[0].norm(), bound))
      for (const auto& r : elements_of_norm(R, d)) take(r);
  std::sort(out.begin(), out.end());
  return out;
}

template <class F>
Matrix<F> scale_matrix(const Matrix<F>& M, const Int& k) {
  return M.map([&](const F& e) { return scale(e, k); });
}

/// Eigenvalues of a matrix over Q or a quadratic field, each with its multiplicity and eigenspace.
template <class F>
EigenData<F> split_eigenvalues(const Matrix<F>& M, std::uint64_t bound = kDefaultTrialBound) {
  require_square(M);
  std::size_t n = M.rows();
  Int D = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) D = lcm(D, denominator(M(i, j)));
  auto Mi = to_ring_matrix(scale_matrix(M, D));
  using R = ring_t<F>;
  Poly<R> f = charpoly(Mi);
  EigenData<F> out;
  out.charpoly = charpoly(M);
  Poly<R> g = squarefree_part(f);
  auto roots = integral_roots(g, bound);
  std::size_t total = 0;
  for (const auto& r : roots) {
    std::size_t mult = 0;
    Poly<R> h = f;
    Poly<R> lin = Poly<R>::linear(r);
    while (true) {
      auto [q, rem] = poly_divrem(h, lin);
      if (!rem.is_zero_poly()) break;
      h = q;
      ++mult;
    }
    F lam = exact_div(F(to_field(r)), from_int(M.proto(), D));
    Matrix<F> A = M - Matrix<F>::identity(n, M.proto()) * lam;
    out.eigen.push_back({lam, mult, kernel(A)});
    total += mult;
  }
  out.split = total == n;
  return out;
}

}  // namespace locglob
