#pragma once
// Brute-force reference procedures. Deliberately naive and independent of the
// deciders' internals: they only search for witnesses and check them directly.

#include <map>
#include <numeric>
#include <optional>
#include <tuple>

#include "locglob/locglob.hpp"

namespace oracle {

using namespace locglob;

inline long mod(long a, long n) { return ((a % n) + n) % n; }

/// Is [[x, a], [0, y]] (or any 2x2 integer matrix) diagonalizable over Z/N?
/// Searches pairs of eigen-lines in the projective line over Z/N.
inline bool diag2_mod(long m00, long m01, long m10, long m11, long N) {
  long p = 0;
  for (long d = 2; d <= N; ++d)
    if (N % d == 0) {
      p = d;
      break;
    }
  auto unit = [&](long v) { return mod(v, p) != 0; };
  auto inv = [&](long v) {
    for (long w = 1; w < N; ++w)
      if (mod(v * w, N) == 1) return w;
    return 0L;
  };
  std::vector<std::pair<long, long>> lines;
  for (long s = 0; s < N; ++s) lines.push_back({1, s});
  for (long s = 0; s < N; s += p) lines.push_back({s, 1});
  std::vector<std::pair<long, long>> eig;
  for (auto [t0, t1] : lines) {
    long u0 = mod(m00 * t0 + m01 * t1, N), u1 = mod(m10 * t0 + m11 * t1, N);
    long lam = unit(t0) ? mod(u0 * inv(t0), N) : mod(u1 * inv(t1), N);
    if (mod(u0 - lam * t0, N) == 0 && mod(u1 - lam * t1, N) == 0) eig.push_back({t0, t1});
  }
  for (std::size_t i = 0; i < eig.size(); ++i)
    for (std::size_t j = i + 1; j < eig.size(); ++j)
      if (unit(eig[i].first * eig[j].second - eig[i].second * eig[j].first)) return true;
  return false;
}

/// Triangularizable over Z/N: some eigen-line of M is spanned by a vector with a unit coordinate.
inline bool tri2_mod(long m00, long m01, long m10, long m11, long N) {
  long p = 0;
  for (long d = 2; d <= N; ++d)
    if (N % d == 0) {
      p = d;
      break;
    }
  for (long t0 = 0; t0 < N; ++t0)
    for (long t1 = 0; t1 < N; ++t1) {
      if (t0 % p == 0 && t1 % p == 0) continue;
      long u0 = m00 * t0 + m01 * t1, u1 = m10 * t0 + m11 * t1;
      for (long lam = 0; lam < N; ++lam)
        if (mod(u0 - lam * t0, N) == 0 && mod(u1 - lam * t1, N) == 0) return true;
    }
  return false;
}

/// Number of invertible 2x2 matrices over Z/N, by enumeration.
inline long count_gl2_mod(long N) {
  long c = 0;
  for (long a = 0; a < N; ++a)
    for (long b = 0; b < N; ++b)
      for (long cc = 0; cc < N; ++cc)
        for (long d = 0; d < N; ++d) {
          long det = mod(a * d - b * cc, N);
          if (std::gcd(det, N) == 1) ++c;
        }
  return c;
}

/// Direct search over GL_2(Z/N) for T with T^{-1} M T diagonal, i.e. M T = T D.
inline bool diag2_mod_exhaustive(long m00, long m01, long m10, long m11, long N) {
  for (long a = 0; a < N; ++a)
    for (long b = 0; b < N; ++b)
      for (long c = 0; c < N; ++c)
        for (long d = 0; d < N; ++d) {
          if (std::gcd(mod(a * d - b * c, N), N) != 1) continue;
          // columns (a, c) and (b, d) must be eigenvectors
          auto eigen = [&](long t0, long t1) {
            for (long lam = 0; lam < N; ++lam)
              if (mod(m00 * t0 + m01 * t1 - lam * t0, N) == 0 && mod(m10 * t0 + m11 * t1 - lam * t1, N) == 0) return true;
            return false;
          };
          if (eigen(a, c) && eigen(b, d)) return true;
        }
  return false;
}

/// Unimodular T with entries in [-B, B] and T^{-1} [[x,a],[0,y]] T diagonal.
inline bool diag2_z_bounded(long x, long a, long y, long B = 10) {
  for (long t00 = -B; t00 <= B; ++t00)
    for (long t10 = -B; t10 <= B; ++t10) {
      // a column is an eigenvector iff M t is parallel to t
      long c0 = x * t00 + a * t10, c1 = y * t10;
      if (c0 * t10 != c1 * t00) continue;
      for (long t01 = -B; t01 <= B; ++t01)
        for (long t11 = -B; t11 <= B; ++t11) {
          long det = t00 * t11 - t01 * t10;
          if (det != 1 && det != -1) continue;
          long d0 = x * t01 + a * t11, d1 = y * t11;
          if (d0 * t11 != d1 * t01) continue;
          return true;
        }
    }
  return false;
}

/// Closed form for the family over Z_p: diagonalizable iff ord_p(x-y) <= ord_p(a).
inline bool diag2_zp_closed(long x, long a, long y, long p) {
  if (a == 0) return true;
  if (x == y) return false;
  auto ordp = [&](long v) {
    long k = 0;
    while (v % p == 0) {
      v /= p;
      ++k;
    }
    return k;
  };
  return ordp(x - y) <= ordp(a);
}

/// Z_p answer by brute force at a finite level where the family stabilises.
inline bool diag2_zp_brute(long x, long a, long y, long p) {
  auto ordp = [&](long v) {
    long k = 0;
    while (v % p == 0) {
      v /= p;
      ++k;
    }
    return k;
  };
  long k = 1;
  if (x != y) k = std::max(k, ordp(x - y));
  else if (a != 0) k = ordp(a) + 1;
  long N = 1;
  for (long i = 0; i < k; ++i) N *= p;
  return diag2_mod(x, a, 0, y, N);
}

// ---------------------------------------------------------------- quadratic rings

struct ScalingSearch {
  bool found = false;
  std::vector<QuadInt> v1, v2;
};

inline std::vector<QuadRat> scaled(const std::vector<QuadRat>& u, const QuadRat& c) {
  std::vector<QuadRat> out;
  for (const auto& e : u) out.push_back(c * e);
  return out;
}

inline bool integral(const std::vector<QuadRat>& v) {
  return std::all_of(v.begin(), v.end(), [](const QuadRat& e) { return e.is_integral(); });
}

inline std::vector<QuadInt> to_int(const std::vector<QuadRat>& v) {
  std::vector<QuadInt> out;
  for (const auto& e : v) out.push_back(e.to_integral());
  return out;
}

/// Integral multiples c*u with c = e / m, N(e) <= bound, where m clears the
/// denominators of every c for which c*u is integral.
inline std::vector<std::vector<QuadInt>> integral_multiples(const std::vector<QuadRat>& u, long bound) {
  const QuadRing& R = u[0].ring();
  Int m = 1;
  for (const auto& e : u) m = lcm(m, e.denominator());
  std::vector<QuadInt> ui;
  for (const auto& e : u) ui.push_back((e * QuadRat(R, Rat(m))).to_integral());
  Int nrm = content(ui).integral_norm();
  QuadRat scale(R, make_rat(m, nrm));
  std::vector<std::vector<QuadInt>> out;
  for (const auto& e : elements_up_to_norm(R, Int(bound))) {
    auto v = scaled(u, QuadRat(e) * scale);
    if (integral(v)) out.push_back(to_int(v));
  }
  return out;
}

inline bool unit_content(const std::vector<QuadInt>& v) {
  return QuadIdeal::generated_by(v[0].ring(), v) == QuadIdeal::unit(v[0].ring());
}

/// Some eigenvector of some eigenvalue has unit content (a necessary condition
/// for an integral triangularizing T: det T lies in the content of its first column).
inline bool some_unit_content_eigenvector(const Matrix<QuadRat>& M, long bound = 10'000) {
  auto E = split_eigenvalues(M);
  for (const auto& e : E.eigen)
    for (std::size_t j = 0; j < e.kernel.cols(); ++j)
      for (const auto& v : integral_multiples(e.kernel.col(j), bound))
        if (unit_content(v)) return true;
  return false;
}

/// 2x2 with distinct eigenvalues: integral eigenvectors v1, v2 with det(v1 v2) a unit.
inline bool diag2_dedekind_search(const Matrix<QuadRat>& M, long bound = 10'000) {
  auto E = split_eigenvalues(M);
  if (!E.split || E.eigen.size() != 2) throw PreconditionError("oracle needs two distinct eigenvalues");
  const QuadRing& R = M.proto().ring();
  auto u1 = E.eigen[0].kernel.col(0), u2 = E.eigen[1].kernel.col(0);
  QuadRat dU = u1[0] * u2[1] - u1[1] * u2[0];
  for (const auto& v1 : integral_multiples(u1, bound)) {
    QuadRat c1 = u1[0].is_zero() ? QuadRat(v1[1]) / u1[1] : QuadRat(v1[0]) / u1[0];
    for (const auto& eps : units(R)) {
      QuadRat c2 = QuadRat(eps) / (c1 * dU);
      auto v2 = scaled(u2, c2);
      if (integral(v2)) return true;
    }
  }
  return false;
}

}  // namespace oracle
