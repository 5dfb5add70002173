#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"
#include "quad.hpp"

namespace locglob {

namespace detail {

// Incremental two-row Hermite form of a sublattice of Z^2, optionally tracking
// the integer combination of the inserted vectors that produces each row.
struct Lattice2 {
  struct Row {
    Int x = 0, y = 0;
    std::vector<Int> coef;
  };
  Row arow;  // (a, 0)
  Row brow;  // (b, c)
  std::size_t ncoef = 0;

  explicit Lattice2(std::size_t k = 0) : ncoef(k) {
    arow.coef.assign(k, 0);
    brow.coef.assign(k, 0);
  }

  static Row combine(const Int& s, const Row& p, const Int& t, const Row& q) {
    Row r;
    r.x = s * p.x + t * q.x;
    r.y = s * p.y + t * q.y;
    r.coef.resize(p.coef.size());
    for (std::size_t i = 0; i < p.coef.size(); ++i) r.coef[i] = s * p.coef[i] + t * q.coef[i];
    return r;
  }

  void add_axis(Row v) {  // v.y == 0
    if (v.x == 0) return;
    if (arow.x == 0) {
      if (v.x < 0) v = combine(-1, v, 0, v);
      arow = std::move(v);
      return;
    }
    ExtGcd e = ext_gcd(arow.x, v.x);
    arow = combine(e.x, arow, e.y, v);
    if (arow.x < 0) arow = combine(-1, arow, 0, arow);
  }

  void add(Row v) {
    if (v.y == 0) {
      add_axis(std::move(v));
    } else if (brow.y == 0) {
      if (v.y < 0) v = combine(-1, v, 0, v);
      brow = std::move(v);
    } else {
      ExtGcd e = ext_gcd(brow.y, v.y);
      Row nb = combine(e.x, brow, e.y, v);
      Row ax = combine(Int(v.y / e.g), brow, Int(-brow.y / e.g), v);
      brow = std::move(nb);
      if (brow.y < 0) brow = combine(-1, brow, 0, brow);
      add_axis(std::move(ax));
    }
    if (arow.x != 0) {
      Int q = floor_div(brow.x, arow.x);
      if (q != 0) brow = combine(1, brow, -q, arow);
    }
  }

  void add(const Int& x, const Int& y, std::size_t idx) {
    Row r;
    r.x = x;
    r.y = y;
    r.coef.assign(ncoef, 0);
    if (idx < ncoef) r.coef[idx] = 1;
    add(std::move(r));
  }

  bool full_rank() const { return arow.x != 0 && brow.y != 0; }
};

inline Int sqrt_mod_prime(const Int& a0, const Int& p) {
  Int a = floor_mod(a0, p);
  if (a == 0 || p == 2) return a;
  Int e = (p - 1) / 2, r;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  if (r != 1) throw DomainError("not a quadratic residue");
  // Tonelli-Shanks
  Int q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (true) {
    mpz_powm(r.get_mpz_t(), z.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if (r == p - 1) break;
    ++z;
  }
  Int c, x, t, b;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  Int q1 = (q + 1) / 2;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), q1.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    Int tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
    x = x * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return x;
}

}  // namespace detail

/// Fractional ideal (1/den) * <a, b + c*w> in two-row Hermite normal form.
class QuadIdeal {
 public:
  QuadIdeal() = default;

  /// Ideal generated over the order by the given field elements.
  static QuadIdeal generated_by(const QuadRing& R, const std::vector<QuadRat>& gens) {
    Int D = 1;
    for (const auto& g : gens) D = lcm(D, g.denominator());
    detail::Lattice2 L;
    const QuadInt w(R, 0, 1);
    for (const auto& g : gens) {
      QuadInt e = (g * QuadRat(R, Rat(D))).to_integral();
      QuadInt ew = e * w;
      L.add(e.x(), e.y(), 0);
      L.add(ew.x(), ew.y(), 0);
    }
    if (!L.full_rank()) throw DomainError("zero ideal");
    return QuadIdeal(R, L.arow.x, L.brow.x, L.brow.y, D);
  }
  static QuadIdeal generated_by(const QuadRing& R, const std::vector<QuadInt>& gens) {
    std::vector<QuadRat> g(gens.begin(), gens.end());
    return generated_by(R, g);
  }
  static QuadIdeal principal(const QuadInt& e) { return generated_by(e.ring(), std::vector<QuadInt>{e}); }
  static QuadIdeal principal(const QuadRat& e) { return generated_by(e.ring(), std::vector<QuadRat>{e}); }
  static QuadIdeal unit(const QuadRing& R) { return QuadIdeal(R, 1, 0, 1, 1); }

  /// Build from normal-form data; validates closure under multiplication by w.
  static QuadIdeal from_hnf(const QuadRing& R, const Int& a, const Int& b, const Int& c, const Int& den = 1) {
    if (a <= 0 || c <= 0 || den <= 0) throw ValidationError("ideal normal form requires a, c, den > 0");
    QuadIdeal I = generated_by(R, {QuadRat(R, make_rat(a, den)), QuadRat(R, make_rat(b, den), make_rat(c, den))});
    if (I.norm() != make_rat(a * c, den * den)) throw ValidationError("lattice is not an ideal");
    return I;
  }

  const QuadRing& ring() const { return ring_; }
  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& c() const { return c_; }
  const Int& den() const { return den_; }

  bool is_integral() const { return den_ == 1; }
  Rat norm() const { return make_rat(a_ * c_, den_ * den_); }
  Int integral_norm() const {
    if (!is_integral()) throw DomainError("norm of a fractional ideal is not an integer");
    return a_ * c_;
  }

  std::vector<QuadRat> basis() const {
    return {QuadRat(ring_, make_rat(a_, den_)), QuadRat(ring_, make_rat(b_, den_), make_rat(c_, den_))};
  }
  /// Numerator ideal den * I, integral.
  QuadIdeal numerator() const { return QuadIdeal(ring_, a_, b_, c_, 1); }

  bool contains(const QuadRat& e) const {
    Rat X = e.x() * den_, Y = e.y() * den_;
    if (X.get_den() != 1 || Y.get_den() != 1) return false;
    const Int& x = X.get_num();
    const Int& y = Y.get_num();
    if (!divides(c_, y)) return false;
    Int q = y / c_;
    return divides(a_, Int(x - q * b_));
  }
  bool contains(const QuadInt& e) const { return contains(QuadRat(e)); }
  bool contains(const QuadIdeal& J) const {
    for (const auto& g : J.basis())
      if (!contains(g)) return false;
    return true;
  }

  QuadIdeal conj() const {
    auto bs = basis();
    return generated_by(ring_, {bs[0].conj(), bs[1].conj()});
  }
  QuadIdeal inverse() const {
    // I * conj(I) = N(I) * O
    QuadIdeal cj = conj();
    Rat n = norm();
    std::vector<QuadRat> g;
    for (const auto& e : cj.basis()) g.push_back(e * QuadRat(ring_, 1 / n));
    return generated_by(ring_, g);
  }

  friend QuadIdeal operator*(const QuadIdeal& I, const QuadIdeal& J) {
    std::vector<QuadRat> g;
    for (const auto& u : I.basis())
      for (const auto& v : J.basis()) g.push_back(u * v);
    return generated_by(I.ring_, g);
  }
  friend QuadIdeal operator+(const QuadIdeal& I, const QuadIdeal& J) {
    auto g = I.basis();
    for (const auto& v : J.basis()) g.push_back(v);
    return generated_by(I.ring_, g);
  }
  QuadIdeal pow(long k) const {
    QuadIdeal base = k < 0 ? inverse() : *this;
    QuadIdeal r = unit(ring_);
    for (long i = 0; i < (k < 0 ? -k : k); ++i) r = r * base;
    return r;
  }

  friend bool operator==(const QuadIdeal& I, const QuadIdeal& J) {
    return I.ring_ == J.ring_ && I.a_ == J.a_ && I.b_ == J.b_ && I.c_ == J.c_ && I.den_ == J.den_;
  }
  friend bool operator!=(const QuadIdeal& I, const QuadIdeal& J) { return !(I == J); }
  friend bool operator<(const QuadIdeal& I, const QuadIdeal& J) {
    Rat ni = I.norm(), nj = J.norm();
    if (ni != nj) return ni < nj;
    return std::tie(I.den_, I.c_, I.b_, I.a_) < std::tie(J.den_, J.c_, J.b_, J.a_);
  }

  std::string str() const {
    std::string s = "[" + a_.get_str() + ", " + QuadInt(ring_, b_, c_).str() + "]";
    if (den_ != 1) s += "/" + den_.get_str();
    return s;
  }

 private:
  QuadIdeal(const QuadRing& R, Int a, Int b, Int c, Int den, bool reduce = true)
      : ring_(R), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), den_(std::move(den)) {
    if (!reduce) return;
    Int g = gcd(gcd(a_, b_), gcd(c_, den_));
    if (g > 1) {
      a_ /= g;
      b_ /= g;
      c_ /= g;
      den_ /= g;
    }
    b_ = floor_mod(b_, a_);
  }

  QuadRing ring_{};
  Int a_ = 1, b_ = 0, c_ = 1, den_ = 1;
};

struct PrimeIdeal {
  QuadIdeal ideal;
  Int p;
  int f = 1;
  bool ramified = false;

  Int norm() const { return f == 1 ? p : p * p; }
  std::string str() const { return ideal.str(); }
  friend bool operator==(const PrimeIdeal& P, const PrimeIdeal& Q) { return P.ideal == Q.ideal; }
  friend bool operator!=(const PrimeIdeal& P, const PrimeIdeal& Q) { return !(P == Q); }
  friend bool operator<(const PrimeIdeal& P, const PrimeIdeal& Q) { return P.ideal < Q.ideal; }
};

/// Primes of the order above the rational prime p, ordered by normal form.
inline std::vector<PrimeIdeal> primes_above(const QuadRing& R, const Int& p) {
  if (!is_prime(p)) throw DomainError(p.get_str() + " is not prime");
  // roots of X^2 - t X + nw mod p
  std::vector<Int> roots;
  if (p == 2) {
    for (long r = 0; r < 2; ++r)
      if (floor_mod(Int(r * r - R.t * r + R.nw), p) == 0) roots.push_back(r);
  } else {
    Int D = R.t * R.t - 4 * R.nw;
    Int Dm = floor_mod(D, p);
    Int e = (p - 1) / 2, leg;
    mpz_powm(leg.get_mpz_t(), Dm.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if (Dm == 0 || leg == 1) {
      Int s = detail::sqrt_mod_prime(Dm, p);
      Int inv2 = (p + 1) / 2;
      roots.push_back(floor_mod(Int((R.t + s) * inv2), p));
      Int r2 = floor_mod(Int((R.t - s) * inv2), p);
      if (r2 != roots[0]) roots.push_back(r2);
    }
  }
  std::vector<PrimeIdeal> out;
  if (roots.empty()) {
    out.push_back({QuadIdeal::from_hnf(R, p, 0, p), p, 2, false});
    return out;
  }
  bool ram = roots.size() == 1;
  for (const auto& r : roots) out.push_back({QuadIdeal::from_hnf(R, p, floor_mod(Int(-r), p), 1), p, 1, ram});
  std::sort(out.begin(), out.end(), [](const PrimeIdeal& A, const PrimeIdeal& B) { return A.ideal.b() < B.ideal.b(); });
  return out;
}

inline PrimeIdeal prime_ideal_from(const QuadIdeal& I) {
  if (!I.is_integral()) throw ValidationError("prime ideal must be integral");
  Int n = I.integral_norm();
  Int p = n;
  Int root;
  if (!is_prime(n)) {
    if (!is_perfect_square(n, &root) || !is_prime(root)) throw ValidationError(I.str() + " is not prime");
    p = root;
  }
  for (auto& P : primes_above(I.ring(), p))
    if (P.ideal == I) return P;
  throw ValidationError(I.str() + " is not prime");
}

/// Valuation at P of an integral or fractional ideal.
inline long ord(const PrimeIdeal& P, const QuadIdeal& I) {
  if (!I.is_integral()) {
    long dv = static_cast<long>(ord_p(I.den(), P.p)) * (P.ramified ? 2 : 1);
    return ord(P, I.numerator()) - dv;
  }
  QuadIdeal J = I;
  QuadIdeal Pinv = P.ideal.inverse();
  long k = 0;
  while (P.ideal.contains(J)) {
    J = J * Pinv;
    ++k;
  }
  return k;
}
inline long ord(const PrimeIdeal& P, const QuadRat& e) {
  if (e.is_zero()) throw DomainError("valuation of zero");
  return ord(P, QuadIdeal::principal(e));
}
inline long ord(const PrimeIdeal& P, const QuadInt& e) { return ord(P, QuadRat(e)); }

using IdealFactorization = std::vector<std::pair<PrimeIdeal, long>>;

/// Prime factorization of a nonzero fractional ideal (exponents may be negative).
inline IdealFactorization factor(const QuadIdeal& I, std::uint64_t bound = kDefaultTrialBound) {
  std::set<Int> ps;
  for (const auto& [p, e] : factor_integer(I.numerator().integral_norm(), bound)) ps.insert(p);
  for (const auto& [p, e] : factor_integer(I.den(), bound)) ps.insert(p);
  IdealFactorization out;
  for (const auto& p : ps)
    for (const auto& P : primes_above(I.ring(), p)) {
      long k = ord(P, I);
      if (k != 0) out.emplace_back(P, k);
    }
  return out;
}
inline IdealFactorization factor_principal(const QuadInt& e, std::uint64_t bound = kDefaultTrialBound) {
  if (e.is_zero()) throw DomainError("cannot factor zero");
  return factor(QuadIdeal::principal(e), bound);
}

inline QuadIdeal product(const QuadRing& R, const IdealFactorization& f) {
  QuadIdeal r = QuadIdeal::unit(R);
  for (const auto& [P, k] : f) r = r * P.ideal.pow(k);
  return r;
}

inline constexpr long kNormSearchLimit = 50'000'000;

/// A generator of I (canonical associate) when I is principal.
inline std::optional<QuadRat> is_principal(const QuadIdeal& I) {
  const QuadRing& R = I.ring();
  QuadIdeal J = I.numerator();
  Int n = J.integral_norm();
  Int absD = -R.discriminant();
  if (4 * n / absD > Int(kNormSearchLimit) * kNormSearchLimit)
    throw CapacityError("norm " + n.get_str() + " too large for the principality search");
  for (const auto& e : elements_of_norm(R, n)) {
    if (J.contains(e)) {
      QuadInt g = canonical_associate(e);
      return QuadRat(R, Rat(g.x(), I.den()), Rat(g.y(), I.den()));
    }
  }
  return std::nullopt;
}

// ---- binary quadratic forms and ideal classes ----

struct Form {
  Int a, b, c;
  friend bool operator==(const Form& f, const Form& g) { return f.a == g.a && f.b == g.b && f.c == g.c; }
  friend bool operator<(const Form& f, const Form& g) { return std::tie(f.a, f.b, f.c) < std::tie(g.a, g.b, g.c); }
};

inline Form reduce_form(Form f) {
  auto normalize = [](Form& g) {
    if (-g.a < g.b && g.b <= g.a) return;
    Int k = floor_div(g.a - g.b, 2 * g.a);
    Int nb = g.b + 2 * k * g.a;
    Int nc = g.a * k * k + g.b * k + g.c;
    g.b = nb;
    g.c = nc;
  };
  normalize(f);
  while (f.a > f.c) {
    f = Form{f.c, -f.b, f.a};
    normalize(f);
  }
  if (f.a == f.c && f.b < 0) f.b = -f.b;
  return f;
}

/// Reduced positive definite forms of discriminant D < 0, sorted by (a, b).
inline std::vector<Form> reduced_forms(long D, long cap = 400'000'000) {
  if (D >= 0 || (((D % 4) + 4) % 4) > 1) throw DomainError("invalid discriminant");
  if (-D > cap) throw CapacityError("discriminant beyond class group bound");
  std::vector<Form> out;
  for (long a = 1; 3 * a * a <= -D; ++a)
    for (long b = -a + 1; b <= a; ++b) {
      long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      out.push_back(Form{a, b, c});
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline QuadIdeal ideal_of_form(const QuadRing& R, const Form& f) {
  // form (a, b, c) <-> ideal <a, (-b - t)/2 + w>
  Int B = f.b + R.t;
  if (!divides(Int(2), B)) throw ConsistencyError("form parity mismatch");
  return QuadIdeal::from_hnf(R, f.a, Int(-B / 2), 1);
}

inline Form form_of_ideal(const QuadIdeal& I) {
  const QuadRing& R = I.ring();
  QuadIdeal J = I.numerator();
  Int A = J.a() / J.c(), B = J.b() / J.c();
  Int C = QuadInt(R, B, 1).norm() / A;
  return Form{A, Int(-(2 * B + R.t)), C};
}

/// Canonical reduced representative of the class of I.
inline QuadIdeal class_rep(const QuadIdeal& I) { return ideal_of_form(I.ring(), reduce_form(form_of_ideal(I))); }

inline bool same_class(const QuadIdeal& I, const QuadIdeal& J) { return class_rep(I) == class_rep(J); }

struct ClassGroup {
  long h = 0;
  std::vector<QuadIdeal> reps;  // trivial class first
};

inline ClassGroup class_group(const QuadRing& R) {
  ClassGroup G;
  for (const auto& f : reduced_forms(R.discriminant())) G.reps.push_back(ideal_of_form(R, f));
  G.h = static_cast<long>(G.reps.size());
  return G;
}

// ---- element searches ----

struct SplitElement {
  QuadInt e;
  PrimeIdeal cofactor;
};

/// Smallest element e of the integral ideal `fixed` with (e) = fixed * P, P prime,
/// P not in `avoid`, and P lying over a rational prime coprime to N(fixed).
/// Candidates run by increasing norm; within one norm, canonical associates in
/// decreasing lexicographic order.
inline SplitElement find_element_with_split(const QuadIdeal& fixed, const std::vector<PrimeIdeal>& avoid,
                                            const Int& norm_bound) {
  if (!fixed.is_integral()) throw PreconditionError("fixed ideal must be integral");
  const QuadRing& R = fixed.ring();
  Int nf = fixed.integral_norm();
  auto elems = elements_up_to_norm(R, norm_bound);
  std::size_t i = 0;
  while (i < elems.size()) {
    Int n = elems[i].norm();
    std::vector<QuadInt> level;
    for (; i < elems.size() && elems[i].norm() == n; ++i) {
      const QuadInt& e = elems[i];
      if (canonical_associate(e) == e && fixed.contains(e)) level.push_back(e);
    }
    std::sort(level.rbegin(), level.rend());
    if (!divides(nf, n)) continue;
    Int q = n / nf, p = q, root;
    if (q < 2) continue;
    if (!is_prime(q)) {
      if (!is_perfect_square(q, &root) || !is_prime(root)) continue;
      p = root;
    }
    if (divides(p, nf)) continue;
    for (const auto& e : level) {
      QuadIdeal C = QuadIdeal::principal(e) * fixed.inverse();
      if (!C.is_integral()) continue;
      PrimeIdeal P;
      bool ok = false;
      for (auto& cand : primes_above(R, p))
        if (cand.ideal == C) {
          P = cand;
          ok = true;
        }
      if (!ok) continue;
      if (std::find(avoid.begin(), avoid.end(), P) != avoid.end()) continue;
      return {e, P};
    }
  }
  throw SearchExhaustedError("no element with prime cofactor of norm <= " + norm_bound.get_str());
}

/// alpha, beta with u*alpha + v*beta = target.
inline std::pair<QuadInt, QuadInt> solve_generation(const QuadInt& u, const QuadInt& v, const QuadInt& target) {
  const QuadRing& R = u.ring();
  if (u.is_zero() || v.is_zero() || target.is_zero()) throw PreconditionError("operands must be nonzero");
  if (divides(u, target)) return {divexact(target, u), QuadInt(R, 0)};
  if (divides(v, target)) return {QuadInt(R, 0), divexact(target, v)};
  const QuadInt w(R, 0, 1);
  detail::Lattice2 L(4);
  QuadInt g[4] = {u, u * w, v, v * w};
  for (std::size_t k = 0; k < 4; ++k) L.add(g[k].x(), g[k].y(), k);
  const auto& A = L.arow;
  const auto& B = L.brow;
  QuadIdeal I = QuadIdeal::generated_by(R, std::vector<QuadInt>{u, v});
  if (!divides(B.y, target.y())) throw UnsolvableError(target.str() + " not in ideal " + I.str());
  Int q = target.y() / B.y;
  Int rx = target.x() - q * B.x;
  if (!divides(A.x, rx)) throw UnsolvableError(target.str() + " not in ideal " + I.str());
  Int p = rx / A.x;
  Int c[4];
  for (std::size_t k = 0; k < 4; ++k) c[k] = p * A.coef[k] + q * B.coef[k];
  QuadInt alpha(R, c[0], c[1]), beta(R, c[2], c[3]);
  if (u * alpha + v * beta != target) throw ConsistencyError("generation solve failed verification");
  return {alpha, beta};
}

}  // namespace locglob
