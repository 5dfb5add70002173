#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace locglob {

using Int = mpz_class;
using Rat = mpq_class;

/// Default bound for trial division of norms.
inline constexpr std::uint64_t kDefaultTrialBound = 1'000'000;

inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// Floor division and the matching nonnegative-for-positive-b remainder.
inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int floor_mod(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool divides(const Int& d, const Int& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

struct ExtGcd {
  Int g, x, y;  // g = x*a + y*b, g >= 0
};

inline ExtGcd ext_gcd(const Int& a, const Int& b) {
  ExtGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int pow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline bool is_perfect_square(const Int& a, Int* root = nullptr) {
  if (a < 0) return false;
  if (mpz_perfect_square_p(a.get_mpz_t()) == 0) return false;
  if (root) mpz_sqrt(root->get_mpz_t(), a.get_mpz_t());
  return true;
}

inline bool is_prime(const Int& a) {
  if (a < 2) return false;
  return mpz_probab_prime_p(a.get_mpz_t(), 40) != 0;
}

inline bool is_squarefree(long d) {
  if (d == 0) return false;
  long a = d < 0 ? -d : d;
  for (long p = 2; p * p <= a; ++p)
    if (a % (p * p) == 0) return false;
  return true;
}

/// p-adic valuation of a nonzero integer.
inline unsigned ord_p(const Int& a, const Int& p) {
  if (a == 0) throw DomainError("valuation of zero is infinite");
  Int r = a;
  unsigned k = 0;
  while (divides(p, r)) {
    r /= p;
    ++k;
  }
  return k;
}

using Factorization = std::vector<std::pair<Int, unsigned>>;

/// Factors |n| by trial division up to `bound`. A leftover cofactor is
/// accepted only when it is provably prime (below bound^2).
inline Factorization factor_integer(const Int& n, std::uint64_t bound = kDefaultTrialBound) {
  if (n == 0) throw DomainError("cannot factor zero");
  Factorization out;
  Int m = abs(n);
  for (std::uint64_t p = 2; p <= bound; p += (p == 2 ? 1 : 2)) {
    Int pp(static_cast<unsigned long>(p));
    if (pp * pp > m) break;
    if (divides(pp, m)) {
      unsigned k = 0;
      while (divides(pp, m)) {
        m /= pp;
        ++k;
      }
      out.emplace_back(pp, k);
    }
  }
  if (m > 1) {
    Int b(static_cast<unsigned long>(bound));
    if (m > b * b) throw CapacityError("cofactor " + m.get_str() + " exceeds trial-division bound " + b.get_str());
    out.emplace_back(m, 1);
  }
  return out;
}

/// Positive divisors of |n|, ascending.
inline std::vector<Int> divisors(const Int& n, std::uint64_t bound = kDefaultTrialBound) {
  std::vector<Int> ds{Int(1)};
  for (const auto& [p, k] : factor_integer(n, bound)) {
    std::size_t base = ds.size();
    Int pk = 1;
    for (unsigned e = 1; e <= k; ++e) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

inline std::vector<long> primes_up_to(long bound) {
  std::vector<long> ps;
  if (bound < 2) return ps;
  std::vector<bool> sieve(static_cast<std::size_t>(bound) + 1, true);
  for (long i = 2; i <= bound; ++i) {
    if (!sieve[i]) continue;
    ps.push_back(i);
    for (long j = i * i; j <= bound; j += i) sieve[j] = false;
  }
  return ps;
}

inline Rat make_rat(const Int& n, const Int& d = 1) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Int& a) { return a.get_str(); }
inline std::string to_string(const Rat& a) { return a.get_str(); }

}  // namespace locglob
