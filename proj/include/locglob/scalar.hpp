#pragma once

#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"
#include "quad.hpp"

// Uniform free-function interface over the four global coefficient types:
// Int, Rat (Z, Q) and QuadInt, QuadRat (maximal order, quadratic field).
// Ring elements of the quadratic types carry their ring, so constants are
// produced from a prototype element.

namespace locglob {

template <class T>
struct FieldOf;
template <>
struct FieldOf<Int> {
  using type = Rat;
};
template <>
struct FieldOf<Rat> {
  using type = Rat;
};
template <>
struct FieldOf<QuadInt> {
  using type = QuadRat;
};
template <>
struct FieldOf<QuadRat> {
  using type = QuadRat;
};
template <class T>
using field_t = typename FieldOf<T>::type;

template <class T>
struct RingOf;
template <>
struct RingOf<Rat> {
  using type = Int;
};
template <>
struct RingOf<QuadRat> {
  using type = QuadInt;
};
template <class T>
using ring_t = typename RingOf<T>::type;

inline Int from_int(const Int&, const Int& v) { return v; }
inline Rat from_int(const Rat&, const Int& v) { return Rat(v); }
inline QuadInt from_int(const QuadInt& p, const Int& v) { return QuadInt(p.ring(), v); }
inline QuadRat from_int(const QuadRat& p, const Int& v) { return QuadRat(p.ring(), Rat(v)); }

template <class T>
T zero_like(const T& p) {
  return from_int(p, Int(0));
}
template <class T>
T one_like(const T& p) {
  return from_int(p, Int(1));
}

inline bool is_zero(const Int& a) { return a == 0; }
inline bool is_zero(const Rat& a) { return a == 0; }
inline bool is_zero(const QuadInt& a) { return a.is_zero(); }
inline bool is_zero(const QuadRat& a) { return a.is_zero(); }

inline Rat to_field(const Int& a) { return Rat(a); }
inline const Rat& to_field(const Rat& a) { return a; }
inline QuadRat to_field(const QuadInt& a) { return QuadRat(a); }
inline const QuadRat& to_field(const QuadRat& a) { return a; }

inline bool is_integral(const Rat& a) { return a.get_den() == 1; }
inline bool is_integral(const QuadRat& a) { return a.is_integral(); }
inline Int to_ring(const Rat& a) {
  if (a.get_den() != 1) throw NonDivisibleError(a.get_str() + " is not integral");
  return a.get_num();
}
inline QuadInt to_ring(const QuadRat& a) { return a.to_integral(); }
/// Least positive integer D with D*a integral.
inline Int denominator(const Rat& a) { return a.get_den(); }
inline Int denominator(const QuadRat& a) { return a.denominator(); }
inline Rat scale(const Rat& a, const Int& k) { return a * Rat(k); }
inline QuadRat scale(const QuadRat& a, const Int& k) { return a * QuadRat(a.ring(), Rat(k)); }

/// Exact quotient; throws NonDivisibleError for ring types when b does not divide a.
inline Int exact_div(const Int& a, const Int& b) {
  if (b == 0) throw DomainError("division by zero");
  if (!divides(b, a)) throw NonDivisibleError(b.get_str() + " does not divide " + a.get_str());
  return a / b;
}
inline Rat exact_div(const Rat& a, const Rat& b) {
  if (b == 0) throw DomainError("division by zero");
  return a / b;
}
inline QuadInt exact_div(const QuadInt& a, const QuadInt& b) { return divexact(a, b); }
inline QuadRat exact_div(const QuadRat& a, const QuadRat& b) { return a / b; }

inline bool divides_elem(const Int& b, const Int& a) { return divides(b, a); }
inline bool divides_elem(const QuadInt& b, const QuadInt& a) { return divides(b, a); }

/// Absolute norm to Z (|a| for integers).
inline Int abs_norm(const Int& a) { return abs(a); }
inline Int abs_norm(const QuadInt& a) { return a.norm(); }

inline std::vector<Int> units_like(const Int&) { return {Int(1), Int(-1)}; }
inline std::vector<QuadInt> units_like(const QuadInt& p) { return units(p.ring()); }

inline bool is_unit(const Int& a) { return a == 1 || a == -1; }

inline bool euclidean(const Int&) { return true; }
inline bool euclidean(const QuadInt& p) { return p.ring().norm_euclidean(); }

inline void require_euclidean(const Int&) {}
inline void require_euclidean(const QuadInt& p) {
  if (!p.ring().norm_euclidean())
    throw UnsupportedError("operation needs a Euclidean ring; Q(sqrt " + std::to_string(p.ring().d) +
                           ") is not norm-Euclidean");
}

inline std::pair<Int, Int> divrem(const Int& a, const Int& b) {
  Int q = floor_div(a, b);
  return {q, a - q * b};
}
inline std::pair<QuadInt, QuadInt> divrem(const QuadInt& a, const QuadInt& b) { return euclid_divrem(a, b); }

/// Canonical associate and the unit u with canonical = u * a.
inline std::pair<Int, Int> normalize_unit(const Int& a) {
  if (a < 0) return {Int(-a), Int(-1)};
  return {a, Int(1)};
}
inline std::pair<QuadInt, QuadInt> normalize_unit(const QuadInt& a) {
  QuadInt best = a, bu(a.ring(), 1);
  for (const auto& u : units(a.ring())) {
    QuadInt c = u * a;
    if (best < c) {
      best = c;
      bu = u;
    }
  }
  return {best, bu};
}

/// Inverse of a unit of the ring.
inline Int unit_inverse(const Int& u) {
  if (!is_unit(u)) throw DomainError(u.get_str() + " is not a unit");
  return u;
}
inline QuadInt unit_inverse(const QuadInt& u) {
  if (!is_unit(u)) throw DomainError(u.str() + " is not a unit");
  return u.conj();
}

/// Canonical representative of a modulo (m), m nonzero.
inline Int reduce_mod(const Int& a, const Int& m) { return floor_mod(a, abs(m)); }
inline QuadInt reduce_mod(const QuadInt& a, const QuadInt& m) {
  // Reduce against the Hermite basis {A, B + C w} of (m): y into [0, C), then x into [0, A).
  const QuadRing& R = a.ring();
  QuadInt w(R, 0, 1);
  QuadInt mw = m * w;
  Int x1 = m.x(), y1 = m.y(), x2 = mw.x(), y2 = mw.y();
  ExtGcd e = ext_gcd(y1, y2);
  Int C = e.g;
  Int B = e.x * x1 + e.y * x2;
  Int A = abs(Int(x1 * (y2 / C) - x2 * (y1 / C)));
  if (C == 0 || A == 0) throw DomainError("reduction modulo zero");
  Int q = floor_div(a.y(), C);
  Int x = a.x() - q * B;
  Int y = a.y() - q * C;
  return QuadInt(R, floor_mod(x, A), y);
}

inline std::string str(const Int& a) { return a.get_str(); }
inline std::string str(const Rat& a) { return a.get_str(); }
inline std::string str(const QuadInt& a) { return a.str(); }
inline std::string str(const QuadRat& a) { return a.str(); }

}  // namespace locglob
