#pragma once

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

/// Element of a residue field F_p or F_{p^2} = F_p[w]/(w^2 - t w + nw); b = 0 for prime fields.
struct Res {
  Int a = 0, b = 0;
  friend bool operator==(const Res& x, const Res& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const Res& x, const Res& y) { return !(x == y); }
  friend bool operator<(const Res& x, const Res& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); }
};

class ResField {
 public:
  ResField() = default;
  ResField(Int p, int f, long t = 0, long nw = 0) : p_(std::move(p)), f_(f), t_(t), nw_(nw) {}

  const Int& p() const { return p_; }
  int degree() const { return f_; }
  Int size() const { return f_ == 1 ? p_ : p_ * p_; }

  Res make(const Int& a, const Int& b = 0) const { return {floor_mod(a, p_), f_ == 1 ? Int(0) : floor_mod(b, p_)}; }
  Res zero() const { return {0, 0}; }
  Res one() const { return {1, 0}; }
  bool is_zero(const Res& x) const { return x.a == 0 && x.b == 0; }

  Res add(const Res& x, const Res& y) const { return make(x.a + y.a, x.b + y.b); }
  Res sub(const Res& x, const Res& y) const { return make(x.a - y.a, x.b - y.b); }
  Res neg(const Res& x) const { return make(-x.a, -x.b); }
  Res mul(const Res& x, const Res& y) const {
    if (f_ == 1) return make(x.a * y.a);
    Int bd = x.b * y.b;
    return make(x.a * y.a - nw_ * bd, x.a * y.b + x.b * y.a + t_ * bd);
  }
  Res inv(const Res& x) const {
    if (is_zero(x)) throw DomainError("inverse of zero in residue field");
    if (f_ == 1) return make(invert(x.a));
    // x^{-1} = conj(x) / N(x)
    Int n = floor_mod(Int(x.a * x.a + t_ * x.a * x.b + nw_ * x.b * x.b), p_);
    Int ni = invert(n);
    return make((x.a + t_ * x.b) * ni, -x.b * ni);
  }
  Res div(const Res& x, const Res& y) const { return mul(x, inv(y)); }

  std::vector<Res> elements() const {
    if (size() > Int(10'000'000)) throw CapacityError("residue field of size " + size().get_str() + " too large");
    std::vector<Res> out;
    long P = p_.get_si();
    for (long b = 0; b < (f_ == 1 ? 1 : P); ++b)
      for (long a = 0; a < P; ++a) out.push_back({a, b});
    return out;
  }

  std::string str(const Res& x) const {
    if (f_ == 1) return x.a.get_str();
    return x.a.get_str() + "+" + x.b.get_str() + "*w";
  }

 private:
  Int invert(const Int& a) const {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t())) throw DomainError("not invertible mod p");
    return r;
  }

  Int p_ = 2;
  int f_ = 1;
  long t_ = 0, nw_ = 0;
};

/// A finite place of Q (a rational prime) or of an imaginary quadratic field
/// (a prime ideal). Knows its residue map and valuation, and divides exactly by a uniformizer.
template <class R>
class Place;

template <>
class Place<Int> {
 public:
  explicit Place(Int p) : p_(std::move(p)), field_(p_, 1) {
    if (!is_prime(p_)) throw ValidationError(p_.get_str() + " is not prime");
  }
  const Int& p() const { return p_; }
  const ResField& field() const { return field_; }
  Int norm() const { return p_; }
  long ramification() const { return 1; }
  Res residue(const Int& x) const { return field_.make(x); }
  Int lift(const Res& r, const Int& = 0) const { return r.a; }
  Int uniformizer() const { return p_; }
  Int div_pi(const Int& h) const { return exact_div(h, p_); }
  long ord(const Int& x) const {
    if (x == 0) throw DomainError("valuation of zero");
    return static_cast<long>(ord_p(x, p_));
  }
  long ord(const Rat& x) const { return ord(x.get_num()) - ord(x.get_den()); }
  std::string str() const { return p_.get_str(); }

 private:
  Int p_;
  ResField field_;
};

template <>
class Place<QuadInt> {
 public:
  explicit Place(PrimeIdeal P) : P_(std::move(P)) {
    const QuadRing& R = P_.ideal.ring();
    field_ = ResField(P_.p, P_.f, R.t, R.nw);
    if (P_.f == 2) {
      pi_ = QuadInt(R, P_.p);
      return;
    }
    // P = (p, w - r) with b = -r mod p
    root_ = floor_mod(Int(-P_.ideal.b()), P_.p);
    for (long k = 0; k < 2; ++k) {
      QuadInt c(R, -root_ + k * P_.p, 1);
      if (!divides(Int(P_.p * P_.p), c.norm())) {
        pi_ = c;
        break;
      }
    }
    if (pi_.is_zero() || !P_.ideal.contains(pi_)) throw ConsistencyError("no uniformizer found");
  }

  const PrimeIdeal& prime() const { return P_; }
  const Int& p() const { return P_.p; }
  const ResField& field() const { return field_; }
  Int norm() const { return P_.norm(); }
  long ramification() const { return P_.ramified ? 2 : 1; }

  Res residue(const QuadInt& x) const {
    if (P_.f == 2) return field_.make(x.x(), x.y());
    return field_.make(x.x() + x.y() * root_);
  }
  QuadInt lift(const Res& r, const QuadInt& proto) const { return QuadInt(proto.ring(), r.a, r.b); }
  const QuadInt& uniformizer() const { return pi_; }

  /// u * h / pi for a P-unit u; requires h in P.
  QuadInt div_pi(const QuadInt& h) const {
    if (P_.f == 2) {
      if (!divides(P_.p, h.x()) || !divides(P_.p, h.y())) throw NonDivisibleError("element not in P");
      return QuadInt(h.ring(), h.x() / P_.p, h.y() / P_.p);
    }
    QuadInt m = h * pi_.conj();
    if (!divides(P_.p, m.x()) || !divides(P_.p, m.y())) throw NonDivisibleError("element not in P");
    return QuadInt(h.ring(), m.x() / P_.p, m.y() / P_.p);
  }

  long ord(const QuadInt& x) const {
    if (x.is_zero()) throw DomainError("valuation of zero");
    long k = 0;
    QuadInt h = x;
    while (field_.is_zero(residue(h))) {
      h = div_pi(h);
      ++k;
    }
    return k;
  }
  long ord(const QuadRat& x) const {
    if (x.is_zero()) throw DomainError("valuation of zero");
    Int D = x.denominator();
    QuadInt num = (x * QuadRat(x.ring(), Rat(D))).to_integral();
    return ord(num) - static_cast<long>(ord_p(D, P_.p)) * ramification();
  }
  std::string str() const { return P_.str(); }

 private:
  PrimeIdeal P_;
  ResField field_;
  Int root_ = 0;
  QuadInt pi_;
};

/// Minimum valuation over the entries (large sentinel for the zero matrix).
template <class R>
long min_ord(const Place<R>& P, const std::vector<R>& v, long cap) {
  long m = cap;
  for (const auto& e : v)
    if (!is_zero(e)) m = std::min(m, P.ord(e));
  return m;
}

template <class R>
std::vector<Res> residue_poly(const Place<R>& P, const Poly<R>& f) {
  std::vector<Res> out;
  for (const auto& c : f.c) out.push_back(P.residue(c));
  while (!out.empty() && P.field().is_zero(out.back())) out.pop_back();
  return out;
}

inline Res eval_res(const ResField& F, const std::vector<Res>& f, const Res& x) {
  Res r = F.zero();
  for (auto it = f.rbegin(); it != f.rend(); ++it) r = F.add(F.mul(r, x), *it);
  return r;
}

/// Divide f by (x - r) over the residue field; returns quotient and remainder.
inline std::pair<std::vector<Res>, Res> deflate(const ResField& F, const std::vector<Res>& f, const Res& r) {
  if (f.empty()) return {{}, F.zero()};
  std::vector<Res> q(f.size() - 1, F.zero());
  Res acc = F.zero();
  for (std::size_t i = f.size(); i-- > 0;) {
    acc = F.add(F.mul(acc, r), f[i]);
    if (i > 0) q[i - 1] = acc;
  }
  return {q, acc};
}

/// Roots with multiplicity of a polynomial over the residue field (brute force).
inline std::vector<std::pair<Res, std::size_t>> residue_roots(const ResField& F, std::vector<Res> f) {
  std::vector<std::pair<Res, std::size_t>> out;
  if (f.size() <= 1) return out;
  for (const auto& x : F.elements()) {
    std::size_t m = 0;
    while (f.size() > 1) {
      auto [q, rem] = deflate(F, f, x);
      if (!F.is_zero(rem)) break;
      f = std::move(q);
      ++m;
    }
    if (m) out.emplace_back(x, m);
    if (f.size() <= 1) break;
  }
  return out;
}

/// Rank of a matrix over the residue field.
inline std::size_t residue_rank(const ResField& F, std::vector<std::vector<Res>> a) {
  std::size_t r = 0;
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t j = 0; j < cols && r < rows; ++j) {
    std::size_t p = r;
    while (p < rows && F.is_zero(a[p][j])) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Res inv = F.inv(a[r][j]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (F.is_zero(a[i][j])) continue;
      Res f = F.mul(a[i][j], inv);
      for (std::size_t k = j; k < cols; ++k) a[i][k] = F.sub(a[i][k], F.mul(f, a[r][k]));
    }
    ++r;
  }
  return r;
}

template <class R>
std::vector<std::vector<Res>> residue_matrix(const Place<R>& P, const Matrix<R>& M) {
  std::vector<std::vector<Res>> out(M.rows(), std::vector<Res>(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) out[i][j] = P.residue(M(i, j));
  return out;
}

}  // namespace locglob
