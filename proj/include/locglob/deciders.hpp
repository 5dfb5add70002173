#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "ideal.hpp"
#include "linalg.hpp"
#include "local.hpp"
#include "matrix.hpp"
#include "poly.hpp"

namespace locglob {

enum class Problem { tri, diag };
enum class Verdict { yes, no, unsupported };

inline std::string to_string(Problem p) { return p == Problem::tri ? "tri" : "diag"; }
inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    default:
      return "unsupported";
  }
}

// ---- obstruction certificates ----

template <class F>
struct NonSplitFactor {
  Poly<F> factor;    // product of the non-linear part of the characteristic polynomial
  Poly<F> charpoly;
};

template <class F>
struct DefectiveEigenvalue {
  F eigenvalue;
  std::size_t algebraic = 0, geometric = 0;
};

struct ContentClassEntry {
  QuadRat eigenvalue;
  std::vector<QuadInt> eigenvector;
  QuadIdeal content;
  QuadIdeal class_rep;
};

struct ContentClassObstruction {
  std::vector<ContentClassEntry> entries;
  // index sets S (into entries) whose eigenvectors span a non-free saturated lattice
  std::vector<std::vector<std::size_t>> blocked;
};

template <class R>
struct DetThetaObstruction {
  Matrix<R> theta;
  R det;
  std::vector<std::string> primes;
};

struct LocalValuationObstruction {
  std::string prime;
  long ord_xy = 0;  // -1 encodes an infinite valuation (x = y)
  long ord_a = 0;   // -1 encodes a = 0
};

struct ClassDistributionInfeasible {
  QuadIdeal B;
  bool integral = true;
  std::vector<QuadIdeal> contents;
  std::vector<QuadIdeal> targets;  // class representatives the factors of B must hit
};

template <class R>
using Certificate = std::variant<NonSplitFactor<field_t<R>>, DefectiveEigenvalue<field_t<R>>, ContentClassObstruction,
                                 DetThetaObstruction<R>, LocalValuationObstruction, ClassDistributionInfeasible>;

template <class R>
struct Decision {
  using F = field_t<R>;
  Verdict verdict = Verdict::unsupported;
  std::string mode;  // field, pid, dedekind
  std::optional<Matrix<F>> witness;
  std::optional<Matrix<F>> transformed;  // witness^{-1} M witness
  std::optional<Certificate<R>> certificate;
  std::string note;
};

template <class R>
std::string certificate_kind(const Certificate<R>& c) {
  static const char* names[] = {"NonSplitFactor",           "DefectiveEigenvalue",         "ContentClassObstruction",
                                "DetThetaObstruction",      "LocalValuationObstruction",   "ClassDistributionInfeasible"};
  return names[c.index()];
}

// ---- verification ----

template <class F>
bool shape_ok(const Matrix<F>& A, Problem p) {
  return p == Problem::tri ? A.is_upper_triangular() : A.is_diagonal();
}

inline bool is_ring_unit(const Rat& d) { return d == 1 || d == -1; }
inline bool is_ring_unit(const QuadRat& d) { return d.is_integral() && d.norm() == 1; }

/// Exact re-verification of a witness; `over_ring` requires an integral T with unit determinant.
template <class F>
bool verify_witness(const Matrix<F>& M, const Matrix<F>& T, Problem p, bool over_ring) {
  if (!T.square() || T.rows() != M.rows()) return false;
  F d = det(T);
  if (is_zero(d)) return false;
  if (over_ring && (!is_integral(T) || !is_ring_unit(d))) return false;
  return shape_ok(inverse(T) * M * T, p);
}

namespace detail {

template <class F>
Poly<F> linear_part(const EigenData<F>& E) {
  Poly<F> lin({one_like(E.charpoly.proto)}, E.charpoly.proto);
  for (const auto& ev : E.eigen)
    for (std::size_t k = 0; k < ev.multiplicity; ++k) lin = lin * Poly<F>::linear(ev.value);
  return lin;
}

template <class F>
NonSplitFactor<F> non_split(const EigenData<F>& E) {
  auto q = poly_divrem(E.charpoly, linear_part(E)).first;
  return {q, E.charpoly};
}

// Integral eigenvector, primitive over Z, denominators cleared over quadratic rings.
template <class F>
std::vector<ring_t<F>> integral_vector(const Matrix<F>& K, std::size_t col = 0) {
  auto U = integral_columns(K.block(0, col, K.rows(), 1));
  auto v = U.col(0);
  if constexpr (std::is_same_v<ring_t<F>, Int>) {
    Int g = content(v);
    for (auto& e : v) e /= g;
  }
  return v;
}

template <class R>
R euclid_gcd(const std::vector<R>& v) {
  R g = zero_like(v[0]);
  for (const auto& e : v) g = bezout(g, e).g;
  return normalize_unit(g).first;
}

}  // namespace detail

/// Independent re-check of a "no" certificate against M.
template <class R>
bool recheck_certificate(const Matrix<field_t<R>>& M, const Certificate<R>& cert);

// ---- fields ----

namespace detail {

// Eigenvalues in the order the triangularizers consume them: descending.
template <class F>
std::vector<F> tri_order(const EigenData<F>& E) {
  std::vector<F> out;
  for (auto it = E.eigen.rbegin(); it != E.eigen.rend(); ++it) out.push_back(it->value);
  return out;
}

template <class F>
Matrix<F> schur_rec(const Matrix<F>& M) {
  std::size_t n = M.rows();
  if (n <= 1) return Matrix<F>::identity(n, M.proto());
  auto E = split_eigenvalues(M);
  if (!E.split) throw ConsistencyError("block lost its eigenvalues");
  const auto& ev = E.eigen.back();
  auto vr = integral_vector(ev.kernel);
  Matrix<F> T1(n, n, M.proto());
  std::size_t k = 0;
  while (is_zero(vr[k])) ++k;
  for (std::size_t i = 0; i < n; ++i) T1(i, 0) = F(to_field(vr[i]));
  std::size_t c = 1;
  for (std::size_t j = 0; j < n; ++j)
    if (j != k) T1(j, c++) = M.one();
  Matrix<F> M1 = inverse(T1) * M * T1;
  Matrix<F> P = schur_rec(M1.block(1, 1, n - 1, n - 1));
  Matrix<F> D = Matrix<F>::identity(n, M.proto());
  D.set_block(1, 1, P);
  return T1 * D;
}

}  // namespace detail

template <class F>
Decision<ring_t<F>> tri_over_field(const Matrix<F>& M) {
  require_square(M);
  Decision<ring_t<F>> d;
  d.mode = "field";
  if (M.is_upper_triangular()) {
    d.verdict = Verdict::yes;
    d.witness = Matrix<F>::identity(M.rows(), M.proto());
    d.transformed = M;
    return d;
  }
  auto E = split_eigenvalues(M);
  if (!E.split) {
    d.verdict = Verdict::no;
    d.certificate = detail::non_split(E);
    return d;
  }
  Matrix<F> T = detail::schur_rec(M);
  d.verdict = Verdict::yes;
  d.witness = T;
  d.transformed = inverse(T) * M * T;
  if (!shape_ok(*d.transformed, Problem::tri)) throw ConsistencyError("field triangularization failed");
  return d;
}

template <class F>
Decision<ring_t<F>> diag_over_field(const Matrix<F>& M) {
  require_square(M);
  Decision<ring_t<F>> d;
  d.mode = "field";
  if (M.is_diagonal()) {
    d.verdict = Verdict::yes;
    d.witness = Matrix<F>::identity(M.rows(), M.proto());
    d.transformed = M;
    return d;
  }
  auto E = split_eigenvalues(M);
  if (!E.split) {
    d.verdict = Verdict::no;
    d.certificate = detail::non_split(E);
    return d;
  }
  Matrix<F> T(M.rows(), M.rows(), M.proto());
  std::size_t col = 0;
  for (const auto& ev : E.eigen) {
    if (ev.kernel.cols() < ev.multiplicity) {
      d.verdict = Verdict::no;
      d.certificate = DefectiveEigenvalue<F>{ev.value, ev.multiplicity, ev.kernel.cols()};
      return d;
    }
    T.set_block(0, col, to_field_matrix(integral_columns(ev.kernel)));
    col += ev.kernel.cols();
  }
  d.verdict = Verdict::yes;
  d.witness = T;
  d.transformed = inverse(T) * M * T;
  if (!shape_ok(*d.transformed, Problem::diag)) throw ConsistencyError("field diagonalization failed");
  return d;
}

// ---- rings: PID mode ----

namespace detail {

template <class R>
Matrix<R> pid_tri_rec(const Matrix<R>& M) {
  std::size_t n = M.rows();
  if (n <= 1) return Matrix<R>::identity(n, M.proto());
  auto E = split_eigenvalues(to_field_matrix(M));
  if (!E.split) throw ConsistencyError("block lost its eigenvalues");
  auto v = integral_vector(E.eigen.back().kernel);
  R g = euclid_gcd(v);
  for (auto& e : v) e = exact_div(e, g);
  Matrix<R> T1 = unimodular_complete(v);
  Matrix<R> M1 = unimodular_inverse(T1) * M * T1;
  Matrix<R> P = pid_tri_rec(M1.block(1, 1, n - 1, n - 1));
  Matrix<R> D = Matrix<R>::identity(n, M.proto());
  D.set_block(1, 1, P);
  return T1 * D;
}

inline std::vector<std::string> prime_divisors_str(const Int& x) {
  std::vector<std::string> out;
  for (const auto& [p, e] : factor_integer(x)) out.push_back(p.get_str());
  return out;
}
inline std::vector<std::string> prime_divisors_str(const QuadInt& x) {
  std::vector<std::string> out;
  for (const auto& [P, e] : factor_principal(x)) out.push_back(P.str());
  return out;
}

}  // namespace detail

template <class R>
Decision<R> tri_over_ring(const Matrix<R>& M);
template <class R>
Decision<R> diag_over_ring(const Matrix<R>& M);

// ---- rings: Dedekind mode (distinct eigenvalues, any imaginary quadratic order) ----

inline constexpr std::size_t kDedekindMaxDim = 6;

namespace detail {

inline std::optional<QuadInt> principal_generator(const QuadIdeal& I) {
  auto g = is_principal(I);
  if (!g) return std::nullopt;
  return g->to_integral();
}

// Ideal generated by the maximal minors of the chosen eigenvector columns.
inline QuadIdeal minors_ideal(const Matrix<QuadInt>& U, const std::vector<std::size_t>& idx) {
  auto mins = minors(U.columns(idx), idx.size());
  return content(mins);
}

struct DedekindEigen {
  std::vector<QuadRat> values;      // descending
  Matrix<QuadInt> U;                // integral eigenvectors as columns
  std::vector<QuadIdeal> contents;  // content ideal of each column
};

inline DedekindEigen dedekind_eigen(const EigenData<QuadRat>& E, const QuadInt& proto, std::size_t n) {
  DedekindEigen D;
  D.U = Matrix<QuadInt>(n, n, proto);
  std::size_t j = 0;
  for (auto it = E.eigen.rbegin(); it != E.eigen.rend(); ++it, ++j) {
    D.values.push_back(it->value);
    auto v = integral_vector(it->kernel);
    D.U.set_col(j, v);
    D.contents.push_back(content(v));
  }
  return D;
}

}  // namespace detail

inline Decision<QuadInt> tri_dedekind(const Matrix<QuadInt>& M, const EigenData<QuadRat>& E) {
  std::size_t n = M.rows();
  if (n > kDedekindMaxDim) throw CapacityError("ordering search limited to n <= 6");
  Decision<QuadInt> d;
  d.mode = "dedekind";
  auto DE = detail::dedekind_eigen(E, M.proto(), n);
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::map<std::size_t, bool> principal_memo, feasible_memo;
  auto idx_of = [&](std::size_t mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    return idx;
  };
  auto principal = [&](std::size_t mask) {
    if (mask == full) return true;
    auto it = principal_memo.find(mask);
    if (it != principal_memo.end()) return it->second;
    bool ok = is_principal(detail::minors_ideal(DE.U, idx_of(mask))).has_value();
    principal_memo[mask] = ok;
    return ok;
  };
  std::function<bool(std::size_t)> feasible = [&](std::size_t mask) {
    if (mask == full) return true;
    auto it = feasible_memo.find(mask);
    if (it != feasible_memo.end()) return it->second;
    bool ok = false;
    for (std::size_t i = 0; i < n && !ok; ++i)
      if (!(mask >> i & 1) && principal(mask | (std::size_t{1} << i))) ok = feasible(mask | (std::size_t{1} << i));
    feasible_memo[mask] = ok;
    return ok;
  };
  if (!feasible(0)) {
    ContentClassObstruction cert;
    for (std::size_t i = 0; i < n; ++i)
      cert.entries.push_back({DE.values[i], DE.U.col(i), DE.contents[i], class_rep(DE.contents[i])});
    for (std::size_t mask = 1; mask < full; ++mask)
      if (!principal(mask)) cert.blocked.push_back(idx_of(mask));
    d.verdict = Verdict::no;
    d.certificate = cert;
    return d;
  }
  // follow a feasible chain and build the columns
  std::vector<std::size_t> order;
  std::size_t mask = 0;
  while (mask != full) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t nm = mask | (std::size_t{1} << i);
      if (!(mask >> i & 1) && principal(nm) && feasible(nm)) {
        order.push_back(i);
        mask = nm;
        break;
      }
    }
  }
  Matrix<QuadInt> T(n, 0, M.proto());
  for (std::size_t step = 0; step < n; ++step) {
    auto u = DE.U.col(order[step]);
    std::vector<QuadInt> x = u;
    if (step > 0) {
      auto X = solve_over_order(T.transpose(), Matrix<QuadInt>::identity(step, M.proto()));
      if (!X) throw ConsistencyError("free lattice basis has no integral left inverse");
      Matrix<QuadInt> Phi = X->transpose();
      auto proj = T * (Phi * Matrix<QuadInt>::column(u, M.proto()));
      for (std::size_t r = 0; r < n; ++r) x[r] = u[r] - proj(r, 0);
    }
    auto g = detail::principal_generator(content(x));
    if (!g) throw ConsistencyError("expected a free rank-one complement");
    Matrix<QuadInt> NT(n, step + 1, M.proto());
    NT.set_block(0, 0, T);
    for (std::size_t r = 0; r < n; ++r) NT(r, step) = divexact(x[r], *g);
    T = NT;
  }
  d.verdict = Verdict::yes;
  d.witness = to_field_matrix(T);
  d.transformed = inverse(*d.witness) * to_field_matrix(M) * *d.witness;
  if (!verify_witness(to_field_matrix(M), *d.witness, Problem::tri, true))
    throw ConsistencyError("Dedekind triangularization witness failed verification");
  return d;
}

/// Brute-force over distributions of the prime powers of B into n class-constrained factors.
inline std::optional<std::vector<QuadIdeal>> distribute_classes(const QuadIdeal& B, const std::vector<QuadIdeal>& targets) {
  const QuadRing& R = B.ring();
  std::size_t n = targets.size();
  auto fac = factor(B);
  std::vector<QuadIdeal> tcls;
  for (const auto& t : targets) tcls.push_back(class_rep(t));
  std::vector<QuadIdeal> parts(n, QuadIdeal::unit(R));
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == fac.size()) {
      for (std::size_t i = 0; i < n; ++i)
        if (class_rep(parts[i]) != tcls[i]) return false;
      return true;
    }
    const auto& [P, e] = fac[k];
    std::vector<long> split(n, 0);
    std::function<bool(std::size_t, long)> dist = [&](std::size_t i, long left) -> bool {
      if (i + 1 == n) {
        split[i] = left;
        auto saved = parts;
        for (std::size_t j = 0; j < n; ++j) parts[j] = parts[j] * P.ideal.pow(split[j]);
        bool ok = rec(k + 1);
        if (!ok) parts = saved;
        return ok;
      }
      for (long a = left; a >= 0; --a) {
        split[i] = a;
        if (dist(i + 1, left - a)) return true;
      }
      return false;
    };
    return dist(0, e);
  };
  if (rec(0)) return parts;
  return std::nullopt;
}

inline Decision<QuadInt> diag_dedekind(const Matrix<QuadInt>& M, const EigenData<QuadRat>& E) {
  std::size_t n = M.rows();
  const QuadRing& R = M.proto().ring();
  Decision<QuadInt> d;
  d.mode = "dedekind";
  auto DE = detail::dedekind_eigen(E, M.proto(), n);
  // ascending order for diagonalization witnesses
  std::reverse(DE.values.begin(), DE.values.end());
  std::reverse(DE.contents.begin(), DE.contents.end());
  Matrix<QuadInt> U(n, n, M.proto());
  for (std::size_t j = 0; j < n; ++j) U.set_col(j, DE.U.col(n - 1 - j));
  QuadIdeal prodI = QuadIdeal::unit(R);
  for (const auto& I : DE.contents) prodI = prodI * I;
  QuadIdeal B = prodI * QuadIdeal::principal(det(U)).inverse();
  ClassDistributionInfeasible cert{B, B.is_integral(), DE.contents, {}};
  for (const auto& I : DE.contents) cert.targets.push_back(class_rep(I));
  std::optional<std::vector<QuadIdeal>> parts;
  if (B.is_integral()) parts = distribute_classes(B, DE.contents);
  if (!parts) {
    d.verdict = Verdict::no;
    d.certificate = cert;
    return d;
  }
  Matrix<QuadRat> T(n, n, QuadRat(R, 0));
  for (std::size_t j = 0; j < n; ++j) {
    auto c = is_principal((*parts)[j] * DE.contents[j].inverse());
    if (!c) throw ConsistencyError("class distribution produced a non-principal quotient");
    for (std::size_t r = 0; r < n; ++r) T(r, j) = *c * QuadRat(U(r, j));
  }
  d.verdict = Verdict::yes;
  d.witness = T;
  d.transformed = inverse(T) * to_field_matrix(M) * T;
  if (!verify_witness(to_field_matrix(M), T, Problem::diag, true))
    throw ConsistencyError("Dedekind diagonalization witness failed verification");
  return d;
}

template <class R>
Decision<R> tri_over_ring(const Matrix<R>& M) {
  require_square(M);
  using F = field_t<R>;
  Decision<R> d;
  d.mode = euclidean(M.proto()) ? "pid" : "dedekind";
  Matrix<F> Mf = to_field_matrix(M);
  if (M.is_upper_triangular()) {
    d.verdict = Verdict::yes;
    d.witness = Matrix<F>::identity(M.rows(), Mf.proto());
    d.transformed = Mf;
    return d;
  }
  auto E = split_eigenvalues(Mf);
  if (!E.split) {
    d.verdict = Verdict::no;
    d.certificate = detail::non_split(E);
    return d;
  }
  if (euclidean(M.proto())) {
    Matrix<R> T = detail::pid_tri_rec(M);
    if (det(T) != one_like(M.proto())) throw ConsistencyError("completion recursion lost det 1");
    d.verdict = Verdict::yes;
    d.witness = to_field_matrix(T);
    d.transformed = to_field_matrix(unimodular_inverse(T) * M * T);
    if (!shape_ok(*d.transformed, Problem::tri)) throw ConsistencyError("ring triangularization failed");
    return d;
  }
  if constexpr (std::is_same_v<R, QuadInt>) {
    for (const auto& ev : E.eigen)
      if (ev.multiplicity > 1)
        throw UnsupportedError("repeated eigenvalues over the non-Euclidean order of Q(sqrt " +
                               std::to_string(M.proto().ring().d) + ")");
    return tri_dedekind(M, E);
  }
  throw ConsistencyError("unreachable ring mode");
}

template <class R>
Decision<R> diag_over_ring(const Matrix<R>& M) {
  require_square(M);
  using F = field_t<R>;
  Matrix<F> Mf = to_field_matrix(M);
  Decision<R> fd = diag_over_field(Mf);
  Decision<R> d;
  d.mode = euclidean(M.proto()) ? "pid" : "dedekind";
  if (fd.verdict == Verdict::no) {
    d.verdict = Verdict::no;
    d.certificate = fd.certificate;
    return d;
  }
  if (M.is_diagonal()) {
    d.verdict = Verdict::yes;
    d.witness = Matrix<F>::identity(M.rows(), Mf.proto());
    d.transformed = Mf;
    return d;
  }
  auto E = split_eigenvalues(Mf);
  if (euclidean(M.proto())) {
    std::size_t n = M.rows();
    Matrix<R> theta(n, n, M.proto());
    std::size_t col = 0;
    for (const auto& ev : E.eigen) {
      auto S = saturate(integral_columns(ev.kernel));
      theta.set_block(0, col, S);
      col += S.cols();
    }
    R dt = det(theta);
    if (!is_unit(dt)) {
      d.verdict = Verdict::no;
      d.certificate = DetThetaObstruction<R>{theta, dt, detail::prime_divisors_str(dt)};
      return d;
    }
    d.verdict = Verdict::yes;
    d.witness = to_field_matrix(theta);
    d.transformed = inverse(*d.witness) * Mf * *d.witness;
    if (!shape_ok(*d.transformed, Problem::diag)) throw ConsistencyError("ring diagonalization failed");
    return d;
  }
  if constexpr (std::is_same_v<R, QuadInt>) {
    for (const auto& ev : E.eigen)
      if (ev.multiplicity > 1)
        throw UnsupportedError("repeated eigenvalues over the non-Euclidean order of Q(sqrt " +
                               std::to_string(M.proto().ring().d) + ")");
    return diag_dedekind(M, E);
  }
  throw ConsistencyError("unreachable ring mode");
}

template <class R>
Decision<R> decide_global(const Matrix<R>& M, Problem p, bool over_ring) {
  if (over_ring) return p == Problem::tri ? tri_over_ring(M) : diag_over_ring(M);
  auto Mf = to_field_matrix(M);
  return p == Problem::tri ? tri_over_field(Mf) : diag_over_field(Mf);
}

// ---- certificate re-checks ----

namespace detail {

template <class F>
bool has_root_in_field(const Poly<F>& q) {
  // monic q(x); x = y / D turns D^deg q(y / D) into a monic integral polynomial
  if (q.degree() < 1) return false;
  Int D = 1;
  for (const auto& c : q.c) D = lcm(D, denominator(c));
  std::size_t deg = static_cast<std::size_t>(q.degree());
  std::vector<ring_t<F>> cs;
  for (std::size_t i = 0; i <= deg; ++i) cs.push_back(to_ring(scale(q.c[i], pow(D, deg - i))));
  Poly<ring_t<F>> qi(cs, cs[0]);
  return !integral_roots(qi).empty();
}

inline bool chain_avoids(std::size_t n, const std::vector<std::vector<std::size_t>>& blocked) {
  std::set<std::size_t> bad;
  for (const auto& s : blocked) {
    std::size_t m = 0;
    for (auto i : s) m |= std::size_t{1} << i;
    bad.insert(m);
  }
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<int> memo(full + 1, -1);
  std::function<bool(std::size_t)> go = [&](std::size_t m) -> bool {
    if (m == full) return true;
    if (memo[m] >= 0) return memo[m];
    bool ok = false;
    for (std::size_t i = 0; i < n && !ok; ++i) {
      std::size_t nm = m | (std::size_t{1} << i);
      if (nm != m && (nm == full || !bad.count(nm))) ok = go(nm);
    }
    memo[m] = ok;
    return ok;
  };
  return go(0);
}

}  // namespace detail

template <class R>
bool recheck_certificate(const Matrix<field_t<R>>& M, const Certificate<R>& cert) {
  using F = field_t<R>;
  std::size_t n = M.rows();
  Matrix<F> I = Matrix<F>::identity(n, M.proto());
  if (auto* c = std::get_if<NonSplitFactor<F>>(&cert)) {
    if (charpoly(M) != c->charpoly) return false;
    if (!poly_divrem(c->charpoly, c->factor).second.is_zero_poly()) return false;
    if (c->factor.degree() < 2) return false;
    return !detail::has_root_in_field(c->factor);
  }
  if (auto* c = std::get_if<DefectiveEigenvalue<F>>(&cert)) {
    Poly<F> f = charpoly(M);
    std::size_t mult = 0;
    while (true) {
      auto [q, r] = poly_divrem(f, Poly<F>::linear(c->eigenvalue));
      if (!r.is_zero_poly()) break;
      f = q;
      ++mult;
    }
    std::size_t geo = n - rank(M - I * c->eigenvalue);
    return mult == c->algebraic && geo == c->geometric && geo < mult;
  }
  if (auto* c = std::get_if<DetThetaObstruction<R>>(&cert)) {
    if (c->theta.rows() != n || c->theta.cols() != n) return false;
    if (det(c->theta) != c->det || is_unit(c->det)) return false;
    auto Tf = to_field_matrix(c->theta);
    auto D = inverse(Tf) * M * Tf;
    if (!D.is_diagonal()) return false;
    // each eigen block saturated
    std::size_t j = 0;
    while (j < n) {
      std::size_t k = j;
      while (k < n && D(k, k) == D(j, j)) ++k;
      auto S = snf(c->theta.block(0, j, n, k - j));
      for (std::size_t i = 0; i < k - j; ++i)
        if (!is_unit(S.D(i, i))) return false;
      j = k;
    }
    return true;
  }
  if (auto* c = std::get_if<LocalValuationObstruction>(&cert)) {
    if constexpr (std::is_same_v<R, Int>) {
      if (n != 2 || M(1, 0) != 0) return false;
      Int p(c->prime);
      Rat xy = M(0, 0) - M(1, 1);
      long oxy = xy == 0 ? -1 : static_cast<long>(Place<Int>(p).ord(xy));
      long oa = M(0, 1) == 0 ? -1 : static_cast<long>(Place<Int>(p).ord(Rat(M(0, 1))));
      return oxy == c->ord_xy && oa == c->ord_a && oxy >= 0 && (oa < 0 ? false : oxy > oa);
    }
    return false;
  }
  if constexpr (std::is_same_v<R, QuadInt>) {
    if (auto* c = std::get_if<ContentClassObstruction>(&cert)) {
      if (c->entries.size() != n) return false;
      Matrix<QuadInt> U(n, n, c->entries[0].eigenvector[0]);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& e = c->entries[i];
        auto u = to_field_matrix(Matrix<QuadInt>::column(e.eigenvector, U.proto()));
        if (M * u != u * e.eigenvalue) return false;
        if (content(e.eigenvector) != e.content || class_rep(e.content) != e.class_rep) return false;
        U.set_col(i, e.eigenvector);
        for (std::size_t j = 0; j < i; ++j)
          if (c->entries[j].eigenvalue == e.eigenvalue) return false;
      }
      for (const auto& s : c->blocked)
        if (is_principal(detail::minors_ideal(U, s))) return false;
      return !detail::chain_avoids(n, c->blocked);
    }
    if (auto* c = std::get_if<ClassDistributionInfeasible>(&cert)) {
      auto E = split_eigenvalues(M);
      if (!E.split || E.eigen.size() != n) return false;
      Matrix<QuadInt> U(n, n, to_ring(M.proto()));
      QuadIdeal prodI = QuadIdeal::unit(U.proto().ring());
      for (std::size_t j = 0; j < n; ++j) {
        auto v = detail::integral_vector(E.eigen[j].kernel);
        U.set_col(j, v);
        prodI = prodI * content(v);
      }
      QuadIdeal B = prodI * QuadIdeal::principal(det(U)).inverse();
      if (B != c->B) return false;
      if (!B.is_integral()) return true;
      return !distribute_classes(B, c->contents).has_value();
    }
  }
  return false;
}

}  // namespace locglob
