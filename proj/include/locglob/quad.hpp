#pragma once

#include <algorithm>
#include <array>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"

namespace locglob {

/// Maximal order of Q(sqrt d), d < 0 squarefree, with integral basis {1, w}:
/// w = sqrt d when d = 2,3 mod 4 and w = (1 + sqrt d)/2 when d = 1 mod 4.
/// w satisfies w^2 = t*w - nw.
struct QuadRing {
  long d = -1;
  long t = 0;
  long nw = 1;

  QuadRing() = default;
  explicit QuadRing(long d_) : d(d_) {
    if (d_ >= 0 || !is_squarefree(d_))
      throw ValidationError("d must be a negative squarefree integer, got " + std::to_string(d_));
    long m = ((d_ % 4) + 4) % 4;
    if (m == 1) {
      t = 1;
      nw = (1 - d_) / 4;
    } else {
      t = 0;
      nw = -d_;
    }
  }

  bool half_integral_basis() const { return t == 1; }
  long discriminant() const { return t == 1 ? d : 4 * d; }
  bool norm_euclidean() const { return d == -1 || d == -2 || d == -3 || d == -7 || d == -11; }

  friend bool operator==(const QuadRing& a, const QuadRing& b) { return a.d == b.d; }
};

/// Element x + y*w of the maximal order.
class QuadInt {
 public:
  QuadInt() = default;
  QuadInt(const QuadRing& r, Int x, Int y = 0) : ring_(r), x_(std::move(x)), y_(std::move(y)) {}

  const QuadRing& ring() const { return ring_; }
  const Int& x() const { return x_; }
  const Int& y() const { return y_; }

  bool is_zero() const { return x_ == 0 && y_ == 0; }

  Int norm() const { return x_ * x_ + ring_.t * x_ * y_ + ring_.nw * y_ * y_; }
  Int trace() const { return 2 * x_ + ring_.t * y_; }
  QuadInt conj() const { return QuadInt(ring_, x_ + ring_.t * y_, -y_); }

  QuadInt operator-() const { return QuadInt(ring_, -x_, -y_); }
  QuadInt& operator+=(const QuadInt& o) {
    check(o);
    x_ += o.x_;
    y_ += o.y_;
    return *this;
  }
  QuadInt& operator-=(const QuadInt& o) {
    check(o);
    x_ -= o.x_;
    y_ -= o.y_;
    return *this;
  }
  QuadInt& operator*=(const QuadInt& o) {
    check(o);
    Int bd = y_ * o.y_;
    Int nx = x_ * o.x_ - ring_.nw * bd;
    Int ny = x_ * o.y_ + y_ * o.x_ + ring_.t * bd;
    x_ = std::move(nx);
    y_ = std::move(ny);
    return *this;
  }
  QuadInt& operator*=(const Int& k) {
    x_ *= k;
    y_ *= k;
    return *this;
  }
  friend QuadInt operator+(QuadInt a, const QuadInt& b) { return a += b; }
  friend QuadInt operator-(QuadInt a, const QuadInt& b) { return a -= b; }
  friend QuadInt operator*(QuadInt a, const QuadInt& b) { return a *= b; }
  friend QuadInt operator*(QuadInt a, const Int& k) { return a *= k; }
  friend QuadInt operator*(const Int& k, QuadInt a) { return a *= k; }

  friend bool operator==(const QuadInt& a, const QuadInt& b) {
    return a.ring_ == b.ring_ && a.x_ == b.x_ && a.y_ == b.y_;
  }
  friend bool operator!=(const QuadInt& a, const QuadInt& b) { return !(a == b); }
  // Lexicographic on (x, y); used for deterministic ordering only.
  friend bool operator<(const QuadInt& a, const QuadInt& b) {
    return std::tie(a.x_, a.y_) < std::tie(b.x_, b.y_);
  }

  std::string str() const {
    if (y_ == 0) return x_.get_str();
    std::string ys = y_ == 1 ? "w" : (y_ == -1 ? "-w" : y_.get_str() + "*w");
    if (x_ == 0) return ys;
    return x_.get_str() + (y_ > 0 ? "+" : "") + ys;
  }
  friend std::ostream& operator<<(std::ostream& os, const QuadInt& e) { return os << e.str(); }

 private:
  void check(const QuadInt& o) const {
    if (!(ring_ == o.ring_)) throw DomainError("operands belong to different quadratic rings");
  }

  QuadRing ring_{};
  Int x_ = 0;
  Int y_ = 0;
};

/// Element of the quadratic field, rational coordinates in the basis {1, w}.
class QuadRat {
 public:
  QuadRat() = default;
  QuadRat(const QuadRing& r, Rat x, Rat y = 0) : ring_(r), x_(std::move(x)), y_(std::move(y)) {}
  QuadRat(const QuadInt& e) : ring_(e.ring()), x_(e.x()), y_(e.y()) {}  // NOLINT

  const QuadRing& ring() const { return ring_; }
  const Rat& x() const { return x_; }
  const Rat& y() const { return y_; }

  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_integral() const { return x_.get_den() == 1 && y_.get_den() == 1; }
  QuadInt to_integral() const {
    if (!is_integral()) throw NonDivisibleError(str() + " is not integral");
    return QuadInt(ring_, x_.get_num(), y_.get_num());
  }
  Int denominator() const { return lcm(x_.get_den(), y_.get_den()); }

  Rat norm() const { return x_ * x_ + ring_.t * x_ * y_ + ring_.nw * y_ * y_; }
  QuadRat conj() const { return QuadRat(ring_, x_ + ring_.t * y_, -y_); }

  QuadRat inverse() const {
    if (is_zero()) throw DomainError("division by zero");
    Rat n = norm();
    QuadRat c = conj();
    return QuadRat(ring_, c.x_ / n, c.y_ / n);
  }

  QuadRat operator-() const { return QuadRat(ring_, -x_, -y_); }
  QuadRat& operator+=(const QuadRat& o) {
    x_ += o.x_;
    y_ += o.y_;
    return *this;
  }
  QuadRat& operator-=(const QuadRat& o) {
    x_ -= o.x_;
    y_ -= o.y_;
    return *this;
  }
  QuadRat& operator*=(const QuadRat& o) {
    if (!(ring_ == o.ring_)) throw DomainError("operands belong to different quadratic fields");
    Rat bd = y_ * o.y_;
    Rat nx = x_ * o.x_ - ring_.nw * bd;
    Rat ny = x_ * o.y_ + y_ * o.x_ + ring_.t * bd;
    x_ = nx;
    y_ = ny;
    return *this;
  }
  QuadRat& operator/=(const QuadRat& o) { return *this *= o.inverse(); }
  friend QuadRat operator+(QuadRat a, const QuadRat& b) { return a += b; }
  friend QuadRat operator-(QuadRat a, const QuadRat& b) { return a -= b; }
  friend QuadRat operator*(QuadRat a, const QuadRat& b) { return a *= b; }
  friend QuadRat operator/(QuadRat a, const QuadRat& b) { return a /= b; }
  friend bool operator==(const QuadRat& a, const QuadRat& b) {
    return a.ring_ == b.ring_ && a.x_ == b.x_ && a.y_ == b.y_;
  }
  friend bool operator!=(const QuadRat& a, const QuadRat& b) { return !(a == b); }

  std::string str() const {
    if (y_ == 0) return x_.get_str();
    std::string ys = "(" + y_.get_str() + ")*w";
    if (x_ == 0) return ys;
    return x_.get_str() + "+" + ys;
  }
  friend std::ostream& operator<<(std::ostream& os, const QuadRat& e) { return os << e.str(); }

 private:
  QuadRing ring_{};
  Rat x_ = 0;
  Rat y_ = 0;
};

/// All elements of exact norm n, ordered lexicographically on (x, y).
inline std::vector<QuadInt> elements_of_norm(const QuadRing& R, const Int& n) {
  std::vector<QuadInt> out;
  if (n < 0) return out;
  if (n == 0) {
    out.emplace_back(R, 0, 0);
    return out;
  }
  // 4N = (2x + t y)^2 + |D| y^2
  Int absD = -R.discriminant();
  Int four_n = 4 * n;
  Int ymax;
  {
    Int q = four_n / absD;
    mpz_sqrt(ymax.get_mpz_t(), q.get_mpz_t());
  }
  for (Int y = -ymax; y <= ymax; ++y) {
    Int rem = four_n - absD * y * y;
    Int s;
    if (!is_perfect_square(rem, &s)) continue;
    for (int sign : {-1, 1}) {
      if (sign == 1 && s == 0) continue;
      Int num = sign * s - R.t * y;
      if (!divides(Int(2), num)) continue;
      out.emplace_back(R, num / 2, y);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All nonzero elements with norm <= bound, ordered by (norm, x, y).
inline std::vector<QuadInt> elements_up_to_norm(const QuadRing& R, const Int& bound) {
  std::vector<std::pair<Int, QuadInt>> tmp;
  Int absD = -R.discriminant();
  Int four_b = 4 * bound;
  Int ymax;
  {
    Int q = four_b / absD;
    mpz_sqrt(ymax.get_mpz_t(), q.get_mpz_t());
  }
  for (Int y = -ymax; y <= ymax; ++y) {
    Int rem = four_b - absD * y * y;
    if (rem < 0) continue;
    Int s;
    mpz_sqrt(s.get_mpz_t(), rem.get_mpz_t());
    // |2x + t y| <= s
    Int lo = floor_div(-s - R.t * y + 1, Int(2));
    Int hi = floor_div(s - R.t * y, Int(2));
    for (Int x = lo - 1; x <= hi + 1; ++x) {
      QuadInt e(R, x, y);
      if (e.is_zero()) continue;
      Int nrm = e.norm();
      if (nrm <= bound) tmp.emplace_back(nrm, e);
    }
  }
  std::sort(tmp.begin(), tmp.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  std::vector<QuadInt> out;
  out.reserve(tmp.size());
  for (auto& [n, e] : tmp) out.push_back(std::move(e));
  return out;
}

inline std::vector<QuadInt> units(const QuadRing& R) { return elements_of_norm(R, Int(1)); }

inline bool is_unit(const QuadInt& e) { return e.norm() == 1; }

/// Exact quotient a / b in the order; throws when b does not divide a.
inline QuadInt divexact(const QuadInt& a, const QuadInt& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  QuadInt num = a * b.conj();
  Int n = b.norm();
  if (!divides(n, num.x()) || !divides(n, num.y()))
    throw NonDivisibleError(b.str() + " does not divide " + a.str());
  return QuadInt(a.ring(), num.x() / n, num.y() / n);
}

inline bool divides(const QuadInt& b, const QuadInt& a) {
  if (b.is_zero()) return a.is_zero();
  QuadInt num = a * b.conj();
  Int n = b.norm();
  return divides(n, num.x()) && divides(n, num.y());
}

/// Canonical associate: the unit multiple with lexicographically largest (x, y).
inline QuadInt canonical_associate(const QuadInt& e) {
  QuadInt best = e;
  for (const auto& u : units(e.ring())) {
    QuadInt c = u * e;
    if (best < c) best = c;
  }
  return best;
}

/// Euclidean division for the norm-Euclidean rings: a = q*b + r with N(r) < N(b).
inline std::pair<QuadInt, QuadInt> euclid_divrem(const QuadInt& a, const QuadInt& b) {
  const QuadRing& R = a.ring();
  if (b.is_zero()) throw DomainError("division by zero");
  if (!R.norm_euclidean())
    throw UnsupportedError("Q(sqrt " + std::to_string(R.d) + ") is not norm-Euclidean");
  QuadInt num = a * b.conj();
  Int n = b.norm();
  // nearest lattice point search around the rounded coordinates
  Int x0 = floor_div(2 * num.x() + n, 2 * n);
  Int y0 = floor_div(2 * num.y() + n, 2 * n);
  QuadInt bestq(R, 0, 0), bestr = a;
  Int bestn = a.norm();
  bool found = false;
  for (int dx = -1; dx <= 1; ++dx)
    for (int dy = -1; dy <= 1; ++dy) {
      QuadInt q(R, x0 + dx, y0 + dy);
      QuadInt r = a - q * b;
      Int rn = r.norm();
      if (!found || rn < bestn) {
        found = true;
        bestq = q;
        bestr = r;
        bestn = rn;
      }
    }
  if (!(bestn < n)) throw ConsistencyError("Euclidean remainder not smaller than divisor");
  return {bestq, bestr};
}

}  // namespace locglob
