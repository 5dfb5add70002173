#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "place.hpp"
#include "poly.hpp"

namespace locglob {

/// A root of a polynomial in the completion, known modulo P^precision.
template <class R>
struct LocalRoot {
  R approx;
  long precision = 0;
};

namespace detail {

// g(c + s X) as a polynomial in X.
template <class R>
Poly<R> shift_scale(const Poly<R>& g, const R& c, const R& s) {
  Poly<R> lin({c, s}, c);
  Poly<R> r(c);
  for (auto it = g.c.rbegin(); it != g.c.rend(); ++it) r = r * lin + Poly<R>({*it}, c);
  return r;
}

template <class R>
R pow_elem(const R& x, long k) {
  R r = one_like(x);
  for (long i = 0; i < k; ++i) r = r * x;
  return r;
}

template <class R>
void local_roots_rec(const Place<R>& P, const Poly<R>& g, const R& c, long k, long want, long cap,
                     std::vector<LocalRoot<R>>& out) {
  if (k > cap) throw ConsistencyError("local root refinement exceeded its depth bound");
  const R pik = pow_elem(P.uniformizer(), k);
  Poly<R> h = shift_scale(g, c, pik);
  long m = min_ord(P, h.c, 1L << 30);
  for (auto& e : h.c)
    for (long i = 0; i < m && !is_zero(e); ++i) e = P.div_pi(e);
  auto H = residue_poly(P, h);
  for (const auto& [rho, mult] : residue_roots(P.field(), H)) {
    R child = c + pik * P.lift(rho, c);
    if (mult == 1 && k + 1 >= want) {
      out.push_back({child, k + 1});
    } else {
      local_roots_rec(P, g, child, k + 1, want, cap, out);
    }
  }
}

}  // namespace detail

/// Roots in the valuation ring of the completion of a squarefree monic integral g,
/// each given modulo P^want (at least). Branching only follows residue roots of the
/// rescaled polynomial, so the tree has at most deg(g) leaves per level.
template <class R>
std::vector<LocalRoot<R>> local_roots(const Place<R>& P, const Poly<R>& g, long want = 1) {
  std::vector<LocalRoot<R>> out;
  if (g.degree() <= 0) return out;
  long e = P.ord(discriminant(g));
  long cap = 2 * e + 2 + want;
  detail::local_roots_rec(P, g, zero_like(g.proto), 0, want, cap, out);
  return out;
}

/// Triangularizable over the completion: the squarefree part of the
/// characteristic polynomial has a full set of roots there.
template <class R>
bool tri_local(const Matrix<R>& M, const Place<R>& P) {
  require_square(M);
  Poly<R> g = squarefree_part(charpoly(M));
  return static_cast<long>(local_roots(P, g).size()) == g.degree();
}

/// Triangularizable over the residue field.
template <class R>
bool tri_residue_field(const Matrix<R>& M, const Place<R>& P) {
  require_square(M);
  auto f = residue_poly(P, charpoly(M));
  std::size_t total = 0;
  for (const auto& [r, m] : residue_roots(P.field(), f)) total += m;
  return total == M.rows();
}

/// Diagonalizable over the residue field: split, and every eigenspace has full dimension.
template <class R>
bool diag_residue_field(const Matrix<R>& M, const Place<R>& P) {
  require_square(M);
  const ResField& F = P.field();
  auto f = residue_poly(P, charpoly(M));
  auto roots = residue_roots(F, f);
  std::size_t total = 0;
  for (const auto& [r, m] : roots) total += m;
  if (total != M.rows()) return false;
  auto A = residue_matrix(P, M);
  for (const auto& [mu, m] : roots) {
    auto B = A;
    for (std::size_t i = 0; i < B.size(); ++i) B[i][i] = F.sub(B[i][i], mu);
    if (M.rows() - residue_rank(F, B) != m) return false;
  }
  return true;
}

/// Valuation of the ideal generated by the d x d minors of an n x d matrix.
template <class R>
long minors_ord(const Place<R>& P, const Matrix<R>& U) {
  long best = 1L << 30;
  for (const auto& m : minors(U, U.cols()))
    if (!is_zero(m)) best = std::min(best, P.ord(m));
  return best;
}

/// Clear denominators of a field matrix column by column.
template <class F>
Matrix<ring_t<F>> integral_columns(const Matrix<F>& K) {
  Matrix<F> S = K;
  for (std::size_t j = 0; j < K.cols(); ++j) {
    Int D = 1;
    for (std::size_t i = 0; i < K.rows(); ++i) D = lcm(D, denominator(K(i, j)));
    for (std::size_t i = 0; i < K.rows(); ++i) S(i, j) = scale(K(i, j), D);
  }
  return to_ring_matrix(S);
}

/// Diagonalizable over the valuation ring of the completion at P.
template <class R>
bool diag_local(const Matrix<R>& M, const Place<R>& P) {
  require_square(M);
  std::size_t n = M.rows();
  Poly<R> g = squarefree_part(charpoly(M));
  if (!g(M).is_zero()) return false;  // not semisimple
  auto Mf = to_field_matrix(M);
  auto E = split_eigenvalues(Mf);
  if (E.split) {
    // saturated local eigenlattices: ord det U = sum of the minor valuations
    Matrix<R> U(n, n, M.proto());
    std::size_t col = 0;
    long sum = 0;
    for (const auto& ev : E.eigen) {
      auto Ui = integral_columns(ev.kernel);
      sum += minors_ord(P, Ui);
      U.set_block(0, col, Ui);
      col += Ui.cols();
    }
    return P.ord(det(U)) == sum;
  }
  long e = P.ord(discriminant(g));
  auto roots = local_roots(P, g, e + 1);
  if (static_cast<long>(roots.size()) != g.degree()) return false;
  Matrix<R> I = Matrix<R>::identity(n, M.proto());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    Matrix<R> prod = I;
    long v = 0;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (i == j) continue;
      prod = prod * (M - I * roots[j].approx);
      v += P.ord(R(roots[i].approx - roots[j].approx));
    }
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (!is_zero(prod(r, c)) && P.ord(prod(r, c)) < v) return false;
  }
  return true;
}

inline constexpr std::uint64_t kResidueRingBudget = 1ull << 24;

/// Diagonalizable over Z / p^i: closed form for upper triangular 2 x 2 input,
/// otherwise exhaustive search over eigen-columns with a unit coordinate.
inline bool diag_residue_ring(const Matrix<Int>& M, const Int& p, unsigned i,
                              std::uint64_t budget = kResidueRingBudget) {
  require_square(M);
  if (i == 0) throw ValidationError("exponent i must be at least 1");
  if (!is_prime(p)) throw ValidationError(p.get_str() + " is not prime");
  std::size_t n = M.rows();
  if (n == 2 && M(1, 0) == 0) {
    Int xy = M(0, 0) - M(1, 1);
    const Int& a = M(0, 1);
    long need = xy == 0 ? static_cast<long>(i) : std::min<long>(ord_p(xy, p), i);
    long have = a == 0 ? static_cast<long>(i) : static_cast<long>(ord_p(a, p));
    return have >= need;
  }
  Int mod = pow(p, i);
  Int states = pow(mod, n);
  if (states > Int(std::to_string(budget))) throw CapacityError("residue ring search needs " + states.get_str() +
                                                                 " states, budget " + std::to_string(budget));
  ResField F(p, 1);
  std::vector<std::vector<Res>> span;
  std::vector<Int> v(n, 0);
  while (true) {
    std::size_t k = 0;
    while (k < n && divides(p, v[k])) ++k;
    if (k < n) {
      std::vector<Int> Mv(n, 0);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) Mv[r] += M(r, c) * v[c];
      Int inv;
      mpz_invert(inv.get_mpz_t(), v[k].get_mpz_t(), mod.get_mpz_t());
      Int mu = floor_mod(Int(Mv[k] * inv), mod);
      bool ok = true;
      for (std::size_t r = 0; r < n && ok; ++r) ok = floor_mod(Int(Mv[r] - mu * v[r]), mod) == 0;
      if (ok) {
        std::vector<Res> red;
        for (const auto& x : v) red.push_back(F.make(x));
        auto trial = span;
        trial.push_back(red);
        if (residue_rank(F, trial) > span.size()) {
          span = std::move(trial);
          if (span.size() == n) return true;
        }
      }
    }
    std::size_t pos = 0;
    while (pos < n) {
      ++v[pos];
      if (v[pos] < mod) break;
      v[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  return false;
}

namespace detail {

// Branch over eigen-lines of A (mod N) spanned by a vector whose first unit
// coordinate is 1; put it as a basis vector and recurse on the quotient block.
inline bool tri_mod_rec(const std::vector<std::vector<long>>& A, long N, long p, std::uint64_t& budget) {
  std::size_t n = A.size();
  if (n <= 1) return true;
  auto md = [N](long x) { return ((x % N) + N) % N; };
  std::vector<long> v(n, 0);
  while (true) {
    if (budget == 0) throw CapacityError("residue ring triangularization search exceeded its budget");
    --budget;
    std::size_t j = 0;
    while (j < n && v[j] % p == 0) ++j;
    if (j < n && v[j] == 1) {
      long lam = 0;
      for (std::size_t c = 0; c < n; ++c) lam = md(lam + A[j][c] * v[c]);
      bool eigen = true;
      for (std::size_t r = 0; r < n && eigen; ++r) {
        long s = 0;
        for (std::size_t c = 0; c < n; ++c) s = md(s + A[r][c] * v[c]);
        eigen = s == md(lam * v[r]);
      }
      if (eigen) {
        // T = I with column j replaced by v; T^{-1} = I with column j replaced by -v (except the pivot)
        auto B = A;
        for (std::size_t r = 0; r < n; ++r) {
          long s = 0;
          for (std::size_t c = 0; c < n; ++c) s = md(s + A[r][c] * v[c]);
          B[r][j] = s;
        }
        auto C = B;
        for (std::size_t r = 0; r < n; ++r)
          if (r != j)
            for (std::size_t c = 0; c < n; ++c) C[r][c] = md(B[r][c] - v[r] * B[j][c]);
        std::vector<std::vector<long>> Q;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == j) continue;
          Q.emplace_back();
          for (std::size_t c = 0; c < n; ++c)
            if (c != j) Q.back().push_back(C[r][c]);
        }
        if (tri_mod_rec(Q, N, p, budget)) return true;
      }
    }
    std::size_t pos = 0;
    while (pos < n) {
      if (++v[pos] < N) break;
      v[pos] = 0;
      ++pos;
    }
    if (pos == n) return false;
  }
}

}  // namespace detail

/// Triangularizable over Z / p^i, by exhaustive branching over invariant lines.
inline bool tri_residue_ring(const Matrix<Int>& M, const Int& p, unsigned i, std::uint64_t budget = kResidueRingBudget) {
  require_square(M);
  if (i == 0) throw ValidationError("exponent i must be at least 1");
  if (!is_prime(p)) throw ValidationError(p.get_str() + " is not prime");
  std::size_t n = M.rows();
  Int mod = pow(p, i);
  if (pow(mod, n) > Int(std::to_string(budget)))
    throw CapacityError("residue ring search needs " + pow(mod, n).get_str() + " states, budget " + std::to_string(budget));
  long N = mod.get_si();
  std::vector<std::vector<long>> A(n, std::vector<long>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) A[r][c] = floor_mod(M(r, c), mod).get_si();
  return detail::tri_mod_rec(A, N, p.get_si(), budget);
}

}  // namespace locglob
