#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "finite_field.hpp"
#include "integer.hpp"

namespace locglob {

/// Block-diagonal Jordan form: (eigenvalue, block size) pairs in order.
struct JordanShape {
  struct Block {
    long lambda = 0;
    int size = 1;
  };
  std::vector<Block> blocks;

  /// diag(lambda I_m, J_n(lambda)).
  static JordanShape scalar_plus_jordan(int m, int n, long lambda) {
    if (m < 0 || n < 1) throw ValidationError("shape needs m >= 0 and n >= 1");
    JordanShape s;
    for (int i = 0; i < m; ++i) s.blocks.push_back({lambda, 1});
    s.blocks.push_back({lambda, n});
    return s;
  }
  static JordanShape diagonal(const std::vector<long>& eig) {
    JordanShape s;
    for (long e : eig) s.blocks.push_back({e, 1});
    return s;
  }

  int size() const {
    int n = 0;
    for (const auto& b : blocks) n += b.size;
    return n;
  }
  std::vector<long> eigen_multiset() const {
    std::vector<long> out;
    for (const auto& b : blocks)
      for (int i = 0; i < b.size; ++i) out.push_back(b.lambda);
    std::sort(out.begin(), out.end());
    return out;
  }
  FqMatrix matrix(const GF& F) const {
    int N = size(), at = 0;
    FqMatrix M(N, N);
    for (const auto& b : blocks) {
      for (int i = 0; i < b.size; ++i) {
        M(at + i, at + i) = F.from_int(b.lambda);
        if (i + 1 < b.size) M(at + i, at + i + 1) = 1;
      }
      at += b.size;
    }
    return M;
  }
  /// Distinct eigenvalues must stay distinct in F.
  void require_distinct_mod(const GF& F) const {
    auto e = eigen_multiset();
    e.erase(std::unique(e.begin(), e.end()), e.end());
    std::set<int> seen;
    for (long x : e)
      if (!seen.insert(F.from_int(x)).second)
        throw PreconditionError("distinct eigenvalues collide in GF(" + std::to_string(F.q()) + ")");
  }
};

struct StratumIndex {
  std::vector<int> r;  // length n-1
  std::vector<int> s;  // optional extension to length n

  std::string str() const {
    const auto& v = s.empty() ? r : s;
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + ")";
  }
  friend bool operator==(const StratumIndex& a, const StratumIndex& b) { return a.r == b.r && a.s == b.s; }
  friend bool operator<(const StratumIndex& a, const StratumIndex& b) {
    return std::tie(a.r, a.s) < std::tie(b.r, b.s);
  }
};

enum class IndexFamily { R, S };

inline bool in_R(int m, int n, const std::vector<int>& r) {
  if (static_cast<int>(r.size()) != n - 1) return false;
  for (int l = 0; l < n - 1; ++l) {
    if (r[l] < 1 || r[l] > m + l + 1) return false;
    if (l && r[l] <= r[l - 1]) return false;
  }
  return true;
}

inline bool in_S(int m, int n, const std::vector<int>& s) {
  if (static_cast<int>(s.size()) != n) return false;
  std::vector<int> r(s.begin(), s.end() - 1);
  return in_R(m, n, r) && s[n - 2] <= s[n - 1] && s[n - 1] <= m + n - 2;
}

/// All indices of the family, lexicographically ordered.
inline std::vector<StratumIndex> enum_strata(int m, int n, IndexFamily which) {
  if (m < 1 || n < 2) throw PreconditionError("stratum indices need m >= 1 and n >= 2");
  std::vector<StratumIndex> out;
  std::vector<int> r;
  std::function<void(int)> rec = [&](int l) {
    if (l == n - 1) {
      if (which == IndexFamily::R) {
        out.push_back({r, {}});
      } else {
        for (int last = r.back(); last <= m + n - 2; ++last) {
          auto s = r;
          s.push_back(last);
          out.push_back({r, s});
        }
      }
      return;
    }
    for (int v = l ? r[l - 1] + 1 : 1; v <= m + l + 1; ++v) {
      r.push_back(v);
      rec(l + 1);
      r.pop_back();
    }
  };
  rec(0);
  return out;
}

// ---------------------------------------------------------------- equations

enum class EqKind { Vr, XprimeM, Ws, SLsr, X_sigma, Y_sigma };

inline std::string to_string(EqKind k) {
  switch (k) {
    case EqKind::Vr: return "Vr";
    case EqKind::XprimeM: return "XprimeM";
    case EqKind::Ws: return "Ws";
    case EqKind::SLsr: return "SLsr";
    case EqKind::X_sigma: return "X_sigma";
    default: return "Y_sigma";
  }
}

/// One constraint family. Indices are 1-based as in the matrix T = (T_{i,j}).
/// A minor family (rows, order) is every order x order minor on `order` rows
/// chosen among the first `rows`, first `order` columns; it is empty when order > rows.
struct Constraint {
  enum class Type { entry_zero, minors_zero, minor_times_entry_zero, det_invertible, det_one, diagonal_pattern };
  Type type = Type::entry_zero;
  int i = 0, j = 0;
  int rows = 0, order = 0;

  /// Largest column index the constraint reads (0 = whole matrix).
  int max_column() const {
    switch (type) {
      case Type::entry_zero: return j;
      case Type::minors_zero: return order;
      case Type::minor_times_entry_zero: return std::max(order, j);
      default: return 0;
    }
  }
};

struct EquationSet {
  EqKind kind = EqKind::Vr;
  int N = 0;
  std::vector<Constraint> constraints;
  std::vector<long> sigma;  // diagonal pattern, for the sigma components

  /// Every polynomial equation spelled out, one string each.
  std::vector<std::string> expanded() const;
  std::size_t equation_count() const { return expanded().size(); }
};

namespace detail {

inline std::string entry(int i, int j) { return "T" + std::to_string(i) + "," + std::to_string(j); }

inline std::vector<std::vector<int>> row_choices(int rows, int order) {
  std::vector<std::vector<int>> out;
  if (order > rows || order < 1) return out;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(pick.size()) == order) {
      out.push_back(pick);
      return;
    }
    for (int v = from; v <= rows; ++v) {
      pick.push_back(v);
      rec(v + 1);
      pick.pop_back();
    }
  };
  rec(1);
  return out;
}

inline std::string minor_str(const std::vector<int>& rows, int order) {
  if (order == 1) return entry(rows[0], 1);
  std::string s = "det(T[";
  for (std::size_t k = 0; k < rows.size(); ++k) s += (k ? "," : "") + std::to_string(rows[k]);
  return s + ";1.." + std::to_string(order) + "])";
}

}  // namespace detail

inline std::vector<std::string> EquationSet::expanded() const {
  using T = Constraint::Type;
  std::vector<std::string> out;
  for (const auto& c : constraints) {
    switch (c.type) {
      case T::entry_zero: out.push_back(detail::entry(c.i, c.j) + "=0"); break;
      case T::minors_zero:
        for (const auto& rs : detail::row_choices(c.rows, c.order)) out.push_back(detail::minor_str(rs, c.order) + "=0");
        break;
      case T::minor_times_entry_zero:
        for (const auto& rs : detail::row_choices(c.rows, c.order))
          out.push_back(detail::minor_str(rs, c.order) + "*" + detail::entry(c.i, c.j) + "=0");
        break;
      case T::det_invertible: out.push_back("det(T) invertible"); break;
      case T::det_one: out.push_back("det(T)=1"); break;
      case T::diagonal_pattern: {
        std::string s = kind == EqKind::Y_sigma ? "T*MT diagonal" : "T*MT upper triangular";
        s += " with diagonal det(T)*(";
        for (std::size_t k = 0; k < sigma.size(); ++k) s += (k ? "," : "") + std::to_string(sigma[k]);
        out.push_back(s + ")");
        break;
      }
    }
  }
  return out;
}

inline EquationSet equations_Vr(int m, int n, const std::vector<int>& r) {
  if (!in_R(m, n, r)) throw ValidationError("invalid stratum index for (m, n) = (" + std::to_string(m) + ", " + std::to_string(n) + ")");
  using T = Constraint::Type;
  EquationSet E{EqKind::Vr, m + n, {}, {}};
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= r[i - 1]; ++j) E.constraints.push_back({T::entry_zero, m + 1 + i, j, 0, 0});
  for (int i = 1; i <= n - 1; ++i)
    if (r[i - 1] <= m + i - 1) E.constraints.push_back({T::minors_zero, 0, 0, m + i - 1, r[i - 1]});
  E.constraints.push_back({T::det_invertible, 0, 0, 0, 0});
  return E;
}

inline EquationSet equations_XprimeM(int m, int n) {
  if (m < 0 || n < 1) throw ValidationError("shape needs m >= 0 and n >= 1");
  using T = Constraint::Type;
  int N = m + n;
  EquationSet E{EqKind::XprimeM, N, {}, {}};
  for (int i = m + 2; i <= N; ++i) E.constraints.push_back({T::entry_zero, i, 1, 0, 0});
  for (int i = m + 2; i <= N; ++i)
    for (int j = 2; j <= i - 1; ++j) E.constraints.push_back({T::minor_times_entry_zero, i, j, i - 2, j - 1});
  E.constraints.push_back({T::det_invertible, 0, 0, 0, 0});
  return E;
}

inline EquationSet equations_Ws(int m, int n, const std::vector<int>& s) {
  if (!in_S(m, n, s)) throw ValidationError("invalid extended index for (m, n) = (" + std::to_string(m) + ", " + std::to_string(n) + ")");
  using T = Constraint::Type;
  EquationSet E{EqKind::Ws, m + n, {}, {}};
  for (int i = 1; i <= n - 2; ++i)
    for (int j = 1; j <= s[i - 1]; ++j) E.constraints.push_back({T::entry_zero, m + 1 + i, j, 0, 0});
  for (int j = 1; j <= s[n - 1]; ++j) E.constraints.push_back({T::entry_zero, m + n, j, 0, 0});
  for (int i = 1; i <= n - 1; ++i)
    if (s[i - 1] <= m + i - 1) E.constraints.push_back({T::minors_zero, 0, 0, m + i - 1, s[i - 1]});
  E.constraints.push_back({T::det_one, 0, 0, 0, 0});
  return E;
}

inline EquationSet equations_SLsr(int s, int r) {
  if (r < 1 || r > s) throw ValidationError("SL_{s,r} needs 1 <= r <= s");
  using T = Constraint::Type;
  EquationSet E{EqKind::SLsr, s, {}, {}};
  for (int i = 1; i <= r - 1; ++i) E.constraints.push_back({T::entry_zero, s, i, 0, 0});
  E.constraints.push_back({T::det_one, 0, 0, 0, 0});
  return E;
}

/// Component of X_M (upper triangular) or Y_M (diagonal) with diagonal pattern sigma.
inline EquationSet equations_sigma(const std::vector<long>& sigma, bool diagonal) {
  using T = Constraint::Type;
  EquationSet E{diagonal ? EqKind::Y_sigma : EqKind::X_sigma, static_cast<int>(sigma.size()), {}, sigma};
  E.constraints.push_back({T::det_invertible, 0, 0, 0, 0});
  E.constraints.push_back({T::diagonal_pattern, 0, 0, 0, 0});
  return E;
}

namespace detail {

inline bool check(const GF& F, const FqMatrix& T, const Constraint& c, const EquationSet& E, const FqMatrix* M) {
  using Ty = Constraint::Type;
  switch (c.type) {
    case Ty::entry_zero: return T(c.i - 1, c.j - 1) == 0;
    case Ty::minors_zero: return c.order > c.rows || rank(F, T, c.rows, c.order) < c.order;
    case Ty::minor_times_entry_zero:
      return c.order > c.rows || T(c.i - 1, c.j - 1) == 0 || rank(F, T, c.rows, c.order) < c.order;
    case Ty::det_invertible: return det(F, T) != 0;
    case Ty::det_one: return det(F, T) == 1;
    case Ty::diagonal_pattern: {
      if (!M) throw PreconditionError("diagonal-pattern constraint needs the matrix M");
      GF::E d = det(F, T);
      if (d == 0) return false;
      FqMatrix D = mul(F, mul(F, inverse(F, T), *M), T);  // T^{-1} M T; T* M T = det(T) D
      for (int i = 0; i < E.N; ++i)
        for (int j = 0; j < E.N; ++j) {
          if (i == j) {
            if (D(i, i) != F.from_int(E.sigma[i])) return false;
          } else if ((i > j || E.kind == EqKind::Y_sigma) && D(i, j) != 0) {
            return false;
          }
        }
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Evaluate every constraint exactly. `M` is required for the sigma components.
inline bool membership(const GF& F, const FqMatrix& T, const EquationSet& E, const FqMatrix* M = nullptr) {
  if (T.rows != E.N || T.cols != E.N)
    throw ValidationError("point is " + std::to_string(T.rows) + "x" + std::to_string(T.cols) + ", equations are for size " +
                          std::to_string(E.N));
  for (const auto& c : E.constraints)
    if (!detail::check(F, T, c, E, M)) return false;
  return true;
}

/// Constraints that only read the first `cols` columns (used to prune enumeration).
inline bool prefix_membership(const GF& F, const FqMatrix& T, int cols, const EquationSet& E) {
  for (const auto& c : E.constraints) {
    int mc = c.max_column();
    if (mc == cols && !detail::check(F, T, c, E, nullptr)) return false;
  }
  return true;
}

/// Largest column any non-determinant constraint reads.
inline int constrained_columns(const EquationSet& E) {
  int c = 0;
  for (const auto& k : E.constraints) {
    if (k.type == Constraint::Type::diagonal_pattern) return E.N;
    c = std::max(c, k.max_column());
  }
  return c;
}

// ---------------------------------------------------------------- flags and components

/// Flag criterion: for every i >= 0, (M - lambda_{i+1}) times column i+1 lies in
/// the span of the first i columns.
inline bool x_membership_flag(const GF& F, const FqMatrix& T, const FqMatrix& M, const std::vector<long>& lambda) {
  int N = T.rows;
  if (M.rows != N || static_cast<int>(lambda.size()) != N) throw ValidationError("flag check size mismatch");
  if (det(F, T) == 0) throw RankError("flag check needs an invertible T");
  FqMatrix A(N, N);  // first i columns of T, then the image vector
  for (int i = 0; i < N; ++i) {
    GF::E lam = F.from_int(lambda[i]);
    for (int r = 0; r < N; ++r) {
      GF::E acc = 0;
      for (int k = 0; k < N; ++k) acc = F.add(acc, F.mul(M(r, k), T(k, i)));
      A(r, i) = F.sub(acc, F.mul(lam, T(r, i)));
    }
    if (rank(F, A, N, i + 1) > i) return false;
    for (int r = 0; r < N; ++r) A(r, i) = T(r, i);
  }
  return true;
}

/// Distinct orderings of an eigenvalue multiset, lexicographic.
inline std::vector<std::vector<long>> y_components(std::vector<long> eig) {
  std::sort(eig.begin(), eig.end());
  std::vector<std::vector<long>> out;
  do out.push_back(eig);
  while (std::next_permutation(eig.begin(), eig.end()));
  return out;
}

/// Number of distinct orderings, n! / prod n_i!.
inline Int component_count(const std::vector<long>& eig) {
  std::map<long, int> mult;
  for (long e : eig) ++mult[e];
  Int out = 1;
  for (std::size_t k = 2; k <= eig.size(); ++k) out *= static_cast<unsigned long>(k);
  for (const auto& [e, c] : mult)
    for (int k = 2; k <= c; ++k) out /= k;
  return out;
}

/// Diagonal of T^{-1} M T (as field elements); requires it to be diagonal.
inline std::vector<GF::E> classify_y_point(const GF& F, const FqMatrix& T, const FqMatrix& M) {
  FqMatrix D = mul(F, mul(F, inverse(F, T), M), T);
  std::vector<GF::E> out;
  for (int i = 0; i < D.rows; ++i)
    for (int j = 0; j < D.cols; ++j)
      if (i != j && D(i, j)) throw ClassificationError("T^{-1} M T is not diagonal");
  for (int i = 0; i < D.rows; ++i) out.push_back(D(i, i));
  return out;
}

/// Rank classification r_i = min{ t : rank(A^{m+i-1, t}) < t }.
inline StratumIndex classify_stratum(const GF& F, const FqMatrix& A, int m, int n, long lambda) {
  int N = m + n;
  if (A.rows != N || A.cols != N) throw ValidationError("point size does not match m + n");
  if (det(F, A) == 0) throw ClassificationError("point is singular");
  FqMatrix M = JordanShape::scalar_plus_jordan(m, n, lambda).matrix(F);
  if (!x_membership_flag(F, A, M, std::vector<long>(static_cast<std::size_t>(N), lambda)))
    throw ClassificationError("point does not triangularize M");
  StratumIndex s;
  for (int i = 1; i <= n - 1; ++i) {
    int rows = m + i - 1, t = 1;
    while (t <= m + i && rank(F, A, rows, t) >= t) ++t;
    s.r.push_back(t);
  }
  if (!in_R(m, n, s.r)) throw ConsistencyError("rank classification produced an index outside the family");
  return s;
}

enum class TransportMode { X, Y };

/// Swap the eigenvalues at positions t, t+1 (1-based) of the component containing T.
inline FqMatrix transport_point(const GF& F, const FqMatrix& T, const FqMatrix& M, int t, TransportMode mode) {
  int N = T.rows;
  if (t < 1 || t >= N) throw ValidationError("transport position out of range");
  FqMatrix D = mul(F, mul(F, inverse(F, T), M), T);
  GF::E la = D(t - 1, t - 1), lb = D(t, t);
  if (la == lb) throw PreconditionError("adjacent eigenvalues are equal; no transport");
  FqMatrix B = FqMatrix::identity(N);
  if (mode == TransportMode::Y) {
    B(t - 1, t - 1) = 0;
    B(t - 1, t) = F.neg(1);
    B(t, t - 1) = 1;
    B(t, t) = 0;
  } else {
    GF::E fw = D(t - 1, t);  // (T* M T)_{t,t+1} times det(T)^{-1}
    GF::E diff = F.sub(lb, la);
    B(t - 1, t - 1) = fw;
    B(t - 1, t) = F.div(F.sub(F.mul(fw, fw), 1), diff);
    B(t, t - 1) = diff;
    B(t, t) = fw;
  }
  return mul(F, T, B);
}


// ---------------------------------------------------------------- dimensions

/// dim W_s (determinant one). The fibre over the first block row uses
/// dim SL_{s,r} = s^2 - r, and the inductive step uses the open-cover exponent.
inline long dim_W(int m, int n, const std::vector<int>& s) {
  if (!in_S(m, n, s)) throw ValidationError("invalid extended index");
  if (n == 2) return (2L * s[0] - 1) + ((m + 1L) * (m + 1) - s[1]) + (m + 2L - s[0]);
  std::vector<int> sub(s.begin(), s.begin() + (n - 2));
  sub.push_back(s[n - 1] - 1);
  long below = dim_W(m, n - 1, sub) + 1;  // GL version of the smaller stratum
  return below + (m + n - 2L + s[n - 2] - s[n - 3]);
}

/// Dimension of the stratum V_r of X_M for M = diag(lambda I_m, J_n(lambda)).
inline long dim_stratum(int m, int n, const std::vector<int>& r) {
  if (!in_R(m, n, r)) throw ValidationError("invalid stratum index");
  if (r.back() == m + n - 1) {
    if (n == 2) return (m + 1L) * (m + 1) + 1 + (m + 1);
    return dim_stratum(m, n - 1, std::vector<int>(r.begin(), r.end() - 1)) + (m + n);
  }
  auto s = r;
  s.push_back(r.back());
  return dim_W(m, n, s) + 1;
}

// ---------------------------------------------------------------- exact counts

/// Integer polynomial in q, coefficient k at index k.
struct CountPoly {
  std::vector<Int> c;

  long degree() const {
    for (long k = static_cast<long>(c.size()) - 1; k >= 0; --k)
      if (c[static_cast<std::size_t>(k)] != 0) return k;
    return -1;
  }
  Int operator()(const Int& q) const {
    Int r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * q + *it;
    return r;
  }
  std::string str() const {
    std::string s;
    for (long k = degree(); k >= 0; --k) {
      const Int& a = c[static_cast<std::size_t>(k)];
      if (a == 0) continue;
      Int mag = abs(a);
      s += s.empty() ? (a < 0 ? "-" : "") : (a < 0 ? " - " : " + ");
      if (k == 0 || mag != 1) s += mag.get_str();
      if (k > 0) s += (k == 0 || mag != 1 ? "*" : "") + std::string("q") + (k > 1 ? "^" + std::to_string(k) : "");
    }
    return s.empty() ? "0" : s;
  }
};

namespace detail {

inline CountPoly cp_add(const CountPoly& a, const CountPoly& b) {
  CountPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), Int(0));
  for (std::size_t k = 0; k < a.c.size(); ++k) r.c[k] += a.c[k];
  for (std::size_t k = 0; k < b.c.size(); ++k) r.c[k] += b.c[k];
  return r;
}

inline CountPoly cp_mul(const CountPoly& a, const CountPoly& b) {
  CountPoly r;
  if (a.c.empty() || b.c.empty()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

/// q^a - q^b
inline CountPoly cp_gap(int a, int b) {
  CountPoly r;
  r.c.assign(static_cast<std::size_t>(std::max(a, b) + 1), Int(0));
  r.c[static_cast<std::size_t>(a)] += 1;
  r.c[static_cast<std::size_t>(b)] -= 1;
  return r;
}

/// Column-by-column rank-profile count. Columns in block i (i = 1..n-1) range over
/// (bound_{i-1}, bound_i] and live in the first m+i coordinates. The state is
/// (dim of the span, rank of its projection to the first m+i-1 coordinates), and at
/// the end of a block the projection rank must stay below bound_i whenever the
/// minor family is non-empty. Then `extra` columns lie in the first N-1 coordinates
/// and the rest are free.
inline CountPoly profile_count(int m, int n, const std::vector<int>& bound, int extra_to) {
  int N = m + n;
  std::map<std::pair<int, int>, CountPoly> states;
  states[{0, 0}] = CountPoly{{Int(1)}};
  int prev = 0;
  for (int i = 1; i <= n - 1; ++i) {
    int P = m + i - 1, L = P + 1;
    std::map<std::pair<int, int>, CountPoly> st;
    for (const auto& [k, w] : states) st[{k.first, k.first}] = cp_add(st[{k.first, k.first}], w);
    for (int col = prev; col < bound[i - 1]; ++col) {
      std::map<std::pair<int, int>, CountPoly> nx;
      for (const auto& [k, w] : st) {
        auto [j, rho] = k;
        if (rho + 1 > j) {  // stay: projection already spans the new direction
          auto& a = nx[{j + 1, rho}];
          a = cp_add(a, cp_mul(w, cp_gap(rho + 1, j)));
        }
        if (L > rho + 1) {
          auto& b = nx[{j + 1, rho + 1}];
          b = cp_add(b, cp_mul(w, cp_gap(L, rho + 1)));
        }
      }
      st = std::move(nx);
    }
    if (bound[i - 1] <= P)
      for (auto it = st.begin(); it != st.end();) it = it->first.second < bound[i - 1] ? std::next(it) : st.erase(it);
    states = std::move(st);
    prev = bound[i - 1];
  }
  CountPoly poly;
  for (const auto& [k, w] : states) poly = cp_add(poly, w);
  for (int j = prev; j < extra_to; ++j) poly = cp_mul(poly, cp_gap(N - 1, j));
  for (int j = std::max(prev, extra_to); j < N; ++j) poly = cp_mul(poly, cp_gap(N, j));
  return poly;
}

}  // namespace detail

/// |V_r(F_q)| as an exact polynomial in q.
inline CountPoly stratum_count_polynomial(int m, int n, const std::vector<int>& r) {
  if (!in_R(m, n, r)) throw ValidationError("invalid stratum index");
  return detail::profile_count(m, n, r, 0);
}

/// |W_s(F_q)| times (q - 1), i.e. the invertible-determinant version.
inline CountPoly ws_gl_count_polynomial(int m, int n, const std::vector<int>& s) {
  if (!in_S(m, n, s)) throw ValidationError("invalid extended index");
  return detail::profile_count(m, n, std::vector<int>(s.begin(), s.end() - 1), s.back());
}

/// Count points of an equation set over F_q by enumerating column prefixes.
/// Only the constrained columns are walked; the free ones contribute a product.
inline Int count_points(const GF& F, const EquationSet& E, long budget = kDefaultEnumBudget) {
  for (const auto& c : E.constraints)
    if (c.type == Constraint::Type::diagonal_pattern) throw PreconditionError("sigma components need the matrix M");
  bool det_one = std::any_of(E.constraints.begin(), E.constraints.end(),
                             [](const Constraint& c) { return c.type == Constraint::Type::det_one; });
  int depth = constrained_columns(E);
  if (det_one && depth >= E.N) throw UnsupportedError("determinant-one count needs a free column");
  Int total = count_gl_with_prefix(
      F, E.N, depth, [&](const FqMatrix& T, int c) { return prefix_membership(F, T, c, E); }, budget);
  // scaling a free column is a bijection between determinant fibres
  return det_one ? total / (F.q() - 1) : total;
}

/// Enumerate every point of E in GL_N(F_q), sorted.
inline std::vector<FqMatrix> enum_points(const GF& F, const EquationSet& E, const FqMatrix* M = nullptr,
                                         long budget = kDefaultEnumBudget) {
  std::vector<FqMatrix> out;
  for_each_gl(
      F, E.N, [&](const FqMatrix& T, int c) { return prefix_membership(F, T, c, E); },
      [&](const FqMatrix& T) {
        if (membership(F, T, E, M)) out.push_back(T);
      },
      budget);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- audits

struct StratumCount {
  StratumIndex index;
  long dim = 0;
  Int points = 0;       // enumerated
  Int polynomial = 0;   // rank-profile polynomial at q
};

struct StrataAudit {
  int m = 0, n = 0, q = 0;
  long lambda = 0;
  Int x_points = 0;        // flag criterion
  Int xprime_points = 0;   // defining equations of X'_M
  Int union_points = 0;    // union of the V_r
  std::vector<StratumCount> strata;
  std::map<std::pair<std::string, std::string>, Int> intersections;  // pairwise, non-empty only
  bool union_ok = false;
  bool presentation_ok = false;
  bool classification_ok = false;
  bool polynomial_ok = false;
  std::vector<std::string> failures;
};

/// Enumerate GL_{m+n}(F_q) once and compare the flag criterion, the X'_M equations,
/// the union of the strata and the rank classification point by point.
inline StrataAudit audit_strata(int m, int n, long lambda, int q, long budget = kDefaultEnumBudget) {
  GF F(q);
  StrataAudit A;
  A.m = m;
  A.n = n;
  A.q = q;
  A.lambda = lambda;
  int N = m + n;
  FqMatrix M = JordanShape::scalar_plus_jordan(m, n, lambda).matrix(F);
  std::vector<long> lam(static_cast<std::size_t>(N), lambda);
  EquationSet xp = equations_XprimeM(m, n);
  auto idx = enum_strata(m, n, IndexFamily::R);
  std::vector<EquationSet> eqs;
  for (const auto& s : idx) {
    eqs.push_back(equations_Vr(m, n, s.r));
    A.strata.push_back({s, dim_stratum(m, n, s.r), 0, stratum_count_polynomial(m, n, s.r)(Int(q))});
  }
  std::size_t mismatch_flag_xp = 0, mismatch_flag_union = 0, bad_class = 0;
  std::vector<std::size_t> hits;
  for_each_gl(
      F, N, [](const FqMatrix&, int) { return true; },
      [&](const FqMatrix& T) {
        bool fl = x_membership_flag(F, T, M, lam);
        bool pr = membership(F, T, xp);
        hits.clear();
        for (std::size_t k = 0; k < eqs.size(); ++k)
          if (membership(F, T, eqs[k])) {
            hits.push_back(k);
            ++A.strata[k].points;
          }
        for (std::size_t a = 0; a < hits.size(); ++a)
          for (std::size_t b = a + 1; b < hits.size(); ++b)
            ++A.intersections[{idx[hits[a]].str(), idx[hits[b]].str()}];
        if (fl) ++A.x_points;
        if (pr) ++A.xprime_points;
        if (!hits.empty()) ++A.union_points;
        if (fl != pr) ++mismatch_flag_xp;
        if (fl != !hits.empty()) ++mismatch_flag_union;
        if (fl) {
          auto c = classify_stratum(F, T, m, n, lambda);
          auto it = std::find_if(idx.begin(), idx.end(), [&](const StratumIndex& s) { return s.r == c.r; });
          std::size_t pos = static_cast<std::size_t>(it - idx.begin());
          if (std::find(hits.begin(), hits.end(), pos) == hits.end()) ++bad_class;
        }
      },
      budget);
  A.presentation_ok = mismatch_flag_xp == 0;
  A.union_ok = mismatch_flag_union == 0;
  A.classification_ok = bad_class == 0;
  A.polynomial_ok = true;
  for (const auto& s : A.strata)
    if (s.points != s.polynomial) A.polynomial_ok = false;
  if (!A.presentation_ok) A.failures.push_back(std::to_string(mismatch_flag_xp) + " points where the flag test and the X' equations disagree");
  if (!A.union_ok) A.failures.push_back(std::to_string(mismatch_flag_union) + " points where the flag test and the union of strata disagree");
  if (!A.classification_ok) A.failures.push_back(std::to_string(bad_class) + " points not in the stratum they classify to");
  if (!A.polynomial_ok) A.failures.push_back("a stratum count differs from its rank-profile polynomial");
  return A;
}

/// Points of X_M or Y_M split by diagonal pattern.
struct ComponentAudit {
  int q = 0;
  bool diagonal = false;
  Int total = 0;
  std::vector<std::pair<std::vector<long>, Int>> components;  // pattern -> count
  Int expected_each = 0;      // product formula
  Int expected_total = 0;
  bool counts_ok = false;
  bool transport_ok = true;   // every adjacent swap maps a component bijectively
  std::vector<std::string> failures;
};

namespace detail {

/// |X_{J_k(lambda)}(F_q)| = (q-1)^k q^{k(k-1)/2}: T must be upper triangular.
inline Int x_single_block(int k, int q) {
  return pow(Int(q - 1), static_cast<unsigned long>(k)) * pow(Int(q), static_cast<unsigned long>(k * (k - 1) / 2));
}

}  // namespace detail

/// Enumerate GL_N(F_q) and sort the points of X_M (upper triangular conjugate) or
/// Y_M (diagonal conjugate) by their diagonal. Distinct eigenvalues must stay distinct mod q.
inline ComponentAudit audit_components(const JordanShape& shape, int q, bool diagonal, bool with_transport = true,
                                       long budget = kDefaultEnumBudget) {
  GF F(q);
  shape.require_distinct_mod(F);
  ComponentAudit A;
  A.q = q;
  A.diagonal = diagonal;
  FqMatrix M = shape.matrix(F);
  int N = shape.size();
  auto eig = shape.eigen_multiset();
  auto pats = y_components(eig);
  std::map<std::vector<GF::E>, std::size_t> slot;
  for (std::size_t k = 0; k < pats.size(); ++k) {
    std::vector<GF::E> key;
    for (long e : pats[k]) key.push_back(F.from_int(e));
    slot[key] = k;
    A.components.push_back({pats[k], 0});
  }
  std::vector<std::vector<FqMatrix>> pts(pats.size());
  for_each_gl(
      F, N, [](const FqMatrix&, int) { return true; },
      [&](const FqMatrix& T) {
        FqMatrix D = mul(F, mul(F, inverse(F, T), M), T);
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j)
            if (i != j && (i > j || diagonal) && D(i, j)) return;
        std::vector<GF::E> key;
        for (int i = 0; i < N; ++i) key.push_back(D(i, i));
        auto it = slot.find(key);
        if (it == slot.end()) throw ConsistencyError("diagonal is not an ordering of the eigenvalues");
        ++A.components[it->second].second;
        ++A.total;
        if (with_transport) pts[it->second].push_back(T);
      },
      budget);
  for (auto& v : pts) std::sort(v.begin(), v.end());

  // Product formula over the block structure of each eigenvalue.
  std::map<long, std::vector<int>> by_value;
  for (const auto& b : shape.blocks) by_value[b.lambda].push_back(b.size);
  Int each = 1;
  long sum_sq = 0;
  for (const auto& [v, sizes] : by_value) {
    int ni = 0;
    for (int s : sizes) ni += s;
    sum_sq += static_cast<long>(ni) * (ni + 1) / 2;
    Int part;
    if (diagonal) {
      bool semisimple = std::all_of(sizes.begin(), sizes.end(), [](int s) { return s == 1; });
      part = semisimple ? gl_order(ni, q) : Int(0);
    } else if (sizes.size() == 1) {
      part = detail::x_single_block(ni, q);
    } else {
      bool semisimple = std::all_of(sizes.begin(), sizes.end(), [](int s) { return s == 1; });
      if (!semisimple) throw UnsupportedError("product formula needs a single block or a scalar block per eigenvalue");
      part = gl_order(ni, q);
    }
    each *= part;
  }
  if (!diagonal) each *= pow(Int(q), static_cast<unsigned long>(static_cast<long>(N) * (N + 1) / 2 - sum_sq));
  A.expected_each = each;
  A.expected_total = each * static_cast<unsigned long>(pats.size());
  A.counts_ok = A.total == A.expected_total;
  for (const auto& [p, c] : A.components)
    if (c != each) A.counts_ok = false;
  if (!A.counts_ok) A.failures.push_back("component counts differ from the product formula");

  if (with_transport) {
    auto mode = diagonal ? TransportMode::Y : TransportMode::X;
    for (std::size_t k = 0; k < pats.size(); ++k)
      for (int t = 1; t < N; ++t) {
        if (pats[k][t - 1] == pats[k][t]) continue;
        auto target = pats[k];
        std::swap(target[t - 1], target[t]);
        std::vector<GF::E> key;
        for (long e : target) key.push_back(F.from_int(e));
        const auto& dst = pts[slot.at(key)];
        std::vector<FqMatrix> img;
        img.reserve(pts[k].size());
        for (const auto& T : pts[k]) img.push_back(transport_point(F, T, M, t, mode));
        std::sort(img.begin(), img.end());
        if (std::adjacent_find(img.begin(), img.end()) != img.end() || img.size() != dst.size() ||
            !std::includes(dst.begin(), dst.end(), img.begin(), img.end())) {
          A.transport_ok = false;
          A.failures.push_back("transport at position " + std::to_string(t) + " is not a bijection onto the swapped component");
        }
      }
  }
  return A;
}

}  // namespace locglob
