#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"

namespace locglob {

/// GF(q) for a small prime power q, elements encoded as 0..q-1 (base-p digits of a
/// polynomial in the generator). Arithmetic is table driven.
class GF {
 public:
  using E = std::uint8_t;

  explicit GF(int q) : q_(q) {
    if (q < 2 || q > 256) throw ValidationError("field size must lie in [2, 256], got " + std::to_string(q));
    p_ = 0;
    for (int d = 2; d <= q; ++d)
      if (q % d == 0) {
        p_ = d;
        break;
      }
    int t = q;
    k_ = 0;
    while (t % p_ == 0) {
      t /= p_;
      ++k_;
    }
    if (t != 1) throw ValidationError(std::to_string(q) + " is not a prime power");
    build();
  }

  int q() const { return q_; }
  int p() const { return p_; }
  int degree() const { return k_; }

  E add(E a, E b) const { return add_[a * q_ + b]; }
  E sub(E a, E b) const { return add_[a * q_ + neg_[b]]; }
  E mul(E a, E b) const { return mul_[a * q_ + b]; }
  E neg(E a) const { return neg_[a]; }
  E inv(E a) const {
    if (a == 0) throw DomainError("inverse of zero in GF(" + std::to_string(q_) + ")");
    return inv_[a];
  }
  E div(E a, E b) const { return mul(a, inv(b)); }

  /// Image of an integer under Z -> prime field.
  E from_int(long v) const { return static_cast<E>(((v % p_) + p_) % p_); }
  E from_int(const Int& v) const { return from_int(floor_mod(v, Int(p_)).get_si()); }

  std::string str(E a) const {
    if (k_ == 1) return std::to_string(a);
    // polynomial in the generator g
    std::string out;
    int v = a, pw = 0;
    if (v == 0) return "0";
    while (v) {
      int c = v % p_;
      if (c) {
        std::string term = pw == 0 ? std::to_string(c) : (c == 1 ? "" : std::to_string(c) + "*") + (pw == 1 ? "g" : "g^" + std::to_string(pw));
        out = out.empty() ? term : term + "+" + out;
      }
      v /= p_;
      ++pw;
    }
    return out;
  }

  friend bool operator==(const GF& a, const GF& b) { return a.q_ == b.q_; }

 private:
  int q_, p_, k_;
  std::vector<int> modulus_;  // monic irreducible of degree k, low to high
  std::vector<E> add_, mul_, neg_, inv_;

  std::vector<int> digits(int a) const {
    std::vector<int> d(k_, 0);
    for (int i = 0; i < k_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }
  int undigits(const std::vector<int>& d) const {
    int a = 0;
    for (int i = k_; i-- > 0;) a = a * p_ + d[i];
    return a;
  }

  // multiply two polynomials of degree < k and reduce by the modulus
  int polymul(int a, int b) const {
    auto x = digits(a), y = digits(b);
    std::vector<int> r(2 * k_, 0);
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p_;
    for (int d = 2 * k_ - 1; d >= k_; --d) {
      int c = r[d];
      if (!c) continue;
      for (int i = 0; i <= k_; ++i) r[d - k_ + i] = ((r[d - k_ + i] - c * modulus_[i]) % p_ + p_) % p_;
    }
    r.resize(k_);
    return undigits(r);
  }

  bool irreducible(const std::vector<int>& f) const {
    // no factor of degree <= k/2: brute force over monic polynomials of small degree is enough for q <= 256
    for (int d = 1; d <= k_ / 2; ++d) {
      int count = 1;
      for (int i = 0; i < d; ++i) count *= p_;
      for (int code = 0; code < count; ++code) {
        std::vector<int> g(d + 1, 0);
        int c = code;
        for (int i = 0; i < d; ++i) {
          g[i] = c % p_;
          c /= p_;
        }
        g[d] = 1;
        std::vector<int> r = f;  // remainder of f by g
        for (int deg = static_cast<int>(r.size()) - 1; deg >= d; --deg) {
          int lead = r[deg];
          if (!lead) continue;
          for (int i = 0; i <= d; ++i) r[deg - d + i] = ((r[deg - d + i] - lead * g[i]) % p_ + p_) % p_;
        }
        bool zero = true;
        for (int i = 0; i < d; ++i) zero = zero && r[i] == 0;
        if (zero) return false;
      }
    }
    return true;
  }

  void build() {
    modulus_.assign(k_ + 1, 0);
    modulus_[k_] = 1;
    if (k_ == 1) {
      modulus_[0] = 0;
    } else {
      int count = 1;
      for (int i = 0; i < k_; ++i) count *= p_;
      for (int code = 0; code < count; ++code) {
        int c = code;
        for (int i = 0; i < k_; ++i) {
          modulus_[i] = c % p_;
          c /= p_;
        }
        if (modulus_[0] != 0 && irreducible(modulus_)) break;
      }
    }
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    for (int a = 0; a < q_; ++a) {
      auto x = digits(a);
      std::vector<int> nx(k_);
      for (int i = 0; i < k_; ++i) nx[i] = (p_ - x[i]) % p_;
      neg_[a] = static_cast<E>(undigits(nx));
      for (int b = 0; b < q_; ++b) {
        auto y = digits(b);
        std::vector<int> s(k_);
        for (int i = 0; i < k_; ++i) s[i] = (x[i] + y[i]) % p_;
        add_[a * q_ + b] = static_cast<E>(undigits(s));
        mul_[a * q_ + b] = static_cast<E>(k_ == 1 ? (a * b) % p_ : polymul(a, b));
      }
    }
    for (int a = 1; a < q_; ++a)
      for (int b = 1; b < q_; ++b)
        if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<E>(b);
  }
};

/// Dense square or rectangular matrix over GF(q), row major.
struct FqMatrix {
  int rows = 0, cols = 0;
  std::vector<GF::E> a;

  FqMatrix() = default;
  FqMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r * c), 0) {}
  static FqMatrix identity(int n) {
    FqMatrix I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1;
    return I;
  }
  GF::E& operator()(int i, int j) { return a[static_cast<std::size_t>(i * cols + j)]; }
  GF::E operator()(int i, int j) const { return a[static_cast<std::size_t>(i * cols + j)]; }
  friend bool operator==(const FqMatrix& x, const FqMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
  friend bool operator<(const FqMatrix& x, const FqMatrix& y) { return x.a < y.a; }
};

inline FqMatrix mul(const GF& F, const FqMatrix& A, const FqMatrix& B) {
  if (A.cols != B.rows) throw ValidationError("matrix size mismatch in product");
  FqMatrix C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      GF::E x = A(i, k);
      if (!x) continue;
      for (int j = 0; j < B.cols; ++j) C(i, j) = F.add(C(i, j), F.mul(x, B(k, j)));
    }
  return C;
}

/// Rank of the top-left `r` x `c` block (whole matrix by default).
inline int rank(const GF& F, const FqMatrix& A, int r = -1, int c = -1) {
  if (r < 0) r = A.rows;
  if (c < 0) c = A.cols;
  std::vector<std::vector<GF::E>> m(static_cast<std::size_t>(r), std::vector<GF::E>(static_cast<std::size_t>(c)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m[i][j] = A(i, j);
  int rk = 0;
  for (int j = 0; j < c && rk < r; ++j) {
    int piv = -1;
    for (int i = rk; i < r; ++i)
      if (m[i][j]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[rk]);
    GF::E inv = F.inv(m[rk][j]);
    for (int i = rk + 1; i < r; ++i) {
      if (!m[i][j]) continue;
      GF::E f = F.mul(m[i][j], inv);
      for (int t = j; t < c; ++t) m[i][t] = F.sub(m[i][t], F.mul(f, m[rk][t]));
    }
    ++rk;
  }
  return rk;
}

inline GF::E det(const GF& F, const FqMatrix& A) {
  if (A.rows != A.cols) throw ValidationError("determinant of a non-square matrix");
  int n = A.rows;
  FqMatrix m = A;
  GF::E d = 1;
  for (int j = 0; j < n; ++j) {
    int piv = -1;
    for (int i = j; i < n; ++i)
      if (m(i, j)) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != j) {
      for (int t = 0; t < n; ++t) std::swap(m(piv, t), m(j, t));
      d = F.neg(d);
    }
    d = F.mul(d, m(j, j));
    GF::E inv = F.inv(m(j, j));
    for (int i = j + 1; i < n; ++i) {
      if (!m(i, j)) continue;
      GF::E f = F.mul(m(i, j), inv);
      for (int t = j; t < n; ++t) m(i, t) = F.sub(m(i, t), F.mul(f, m(j, t)));
    }
  }
  return d;
}

inline FqMatrix inverse(const GF& F, const FqMatrix& A) {
  int n = A.rows;
  FqMatrix m = A, I = FqMatrix::identity(n);
  for (int j = 0; j < n; ++j) {
    int piv = -1;
    for (int i = j; i < n; ++i)
      if (m(i, j)) {
        piv = i;
        break;
      }
    if (piv < 0) throw RankError("singular matrix over GF(" + std::to_string(F.q()) + ")");
    for (int t = 0; t < n; ++t) {
      std::swap(m(piv, t), m(j, t));
      std::swap(I(piv, t), I(j, t));
    }
    GF::E inv = F.inv(m(j, j));
    for (int t = 0; t < n; ++t) {
      m(j, t) = F.mul(m(j, t), inv);
      I(j, t) = F.mul(I(j, t), inv);
    }
    for (int i = 0; i < n; ++i) {
      if (i == j || !m(i, j)) continue;
      GF::E f = m(i, j);
      for (int t = 0; t < n; ++t) {
        m(i, t) = F.sub(m(i, t), F.mul(f, m(j, t)));
        I(i, t) = F.sub(I(i, t), F.mul(f, I(j, t)));
      }
    }
  }
  return I;
}

/// |GL_n(F_q)| as an exact integer.
inline Int gl_order(int n, int q) {
  Int qn = pow(Int(q), static_cast<unsigned long>(n)), out = 1, qi = 1;
  for (int i = 0; i < n; ++i) {
    out *= qn - qi;
    qi *= q;
  }
  return out;
}

inline constexpr long kDefaultEnumBudget = 10'000'000;

namespace detail {

// Depth-first walk over independent column frames of length `depth` in F_q^n.
inline void walk_frames(const GF& F, int n, int depth, const std::function<bool(const FqMatrix&, int)>& prefix_ok,
                        const std::function<void(const FqMatrix&)>& visit) {
  FqMatrix T(n, n);
  std::vector<std::vector<GF::E>> basis;  // echelon vectors of the span, pivot entry 1
  std::vector<int> pivots;
  long qn = 1;
  for (int i = 0; i < n; ++i) qn *= F.q();
  std::vector<GF::E> v(static_cast<std::size_t>(n)), w;
  std::function<void(int)> rec = [&](int c) {
    if (c == depth) {
      visit(T);
      return;
    }
    for (long code = 0; code < qn; ++code) {
      long x = code;
      for (int i = 0; i < n; ++i) {
        v[i] = static_cast<GF::E>(x % F.q());
        x /= F.q();
      }
      w = v;
      for (std::size_t b = 0; b < basis.size(); ++b) {
        GF::E f = w[pivots[b]];
        if (!f) continue;
        for (int i = 0; i < n; ++i) w[i] = F.sub(w[i], F.mul(f, basis[b][i]));
      }
      int piv = -1;
      for (int i = 0; i < n && piv < 0; ++i)
        if (w[i]) piv = i;
      if (piv < 0) continue;  // dependent on earlier columns
      for (int i = 0; i < n; ++i) T(i, c) = v[i];
      if (!prefix_ok(T, c + 1)) continue;
      GF::E inv = F.inv(w[piv]);
      for (auto& e : w) e = F.mul(e, inv);
      basis.push_back(w);
      pivots.push_back(piv);
      rec(c + 1);
      basis.pop_back();
      pivots.pop_back();
    }
    for (int i = 0; i < n; ++i) T(i, c) = 0;
  };
  rec(0);
}

}  // namespace detail

/// Enumerate GL_n(F_q) column by column, extending only independent prefixes.
/// `prefix_ok(T, c)` sees the first c columns filled and may prune.
inline void for_each_gl(const GF& F, int n, const std::function<bool(const FqMatrix&, int)>& prefix_ok,
                        const std::function<void(const FqMatrix&)>& visit, long budget = kDefaultEnumBudget) {
  if (gl_order(n, F.q()) > budget)
    throw CapacityError("|GL_" + std::to_string(n) + "(F_" + std::to_string(F.q()) + ")| = " +
                        gl_order(n, F.q()).get_str() + " exceeds the enumeration budget " + std::to_string(budget));
  detail::walk_frames(F, n, n, prefix_ok, visit);
}

/// Number of invertible n x n matrices whose first `depth` columns pass `prefix_ok`,
/// when no condition involves later columns: frames times the free completion count.
inline Int count_gl_with_prefix(const GF& F, int n, int depth, const std::function<bool(const FqMatrix&, int)>& prefix_ok,
                                long budget = kDefaultEnumBudget) {
  Int qn = pow(Int(F.q()), static_cast<unsigned long>(n));
  Int raw = pow(qn, static_cast<unsigned long>(std::max(depth - 1, 0)));
  if (raw > budget) throw CapacityError("prefix enumeration over " + raw.get_str() + " frames exceeds the budget");
  Int frames = 0;
  detail::walk_frames(F, n, depth, prefix_ok, [&](const FqMatrix&) { ++frames; });
  Int tail = 1, qi = pow(Int(F.q()), static_cast<unsigned long>(depth));
  for (int j = depth; j < n; ++j) {
    tail *= qn - qi;
    qi *= F.q();
  }
  return frames * tail;
}

}  // namespace locglob
