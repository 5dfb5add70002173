#pragma once

#include <string>
#include <vector>

#include "deciders.hpp"
#include "errors.hpp"
#include "ideal.hpp"
#include "local.hpp"
#include "matrix.hpp"

namespace locglob {

inline constexpr long kDefaultSearchNorm = 10'000;

struct TriCexRecipe {
  QuadRing ring;
  std::size_t n = 0;
  QuadInt a, b;
  bool corner_flipped = false;
  Matrix<QuadInt> N;
  QuadInt detN;
  std::vector<QuadInt> lambda;
  Matrix<QuadInt> M;
};

struct LocalWitness {
  PrimeIdeal prime;
  QuadInt uniformizer;
  Matrix<QuadRat> scaled;  // T0 with column 1 divided by pi and column 2 by pi^(m-1)
  long ord_det = 0;
  long min_entry_ord = 0;
};

struct DiagCexRecipe {
  QuadRing ring;
  std::size_t n = 0;
  long m = 0;
  PrimeIdeal p0, pa, ps, pr, pt;
  QuadInt a, a0, s, r, t, alpha, beta;
  Matrix<QuadInt> T0;
  std::vector<QuadInt> lambda;
  Matrix<QuadInt> M;
  LocalWitness local;
};

namespace detail {

inline Matrix<QuadInt> conjugate_by(const Matrix<QuadInt>& T, const std::vector<QuadInt>& lambda) {
  QuadInt dT = det(T);
  Matrix<QuadInt> P = T * Matrix<QuadInt>::diag(lambda, T.proto()) * adjugate(T);
  for (std::size_t i = 0; i < P.rows(); ++i)
    for (std::size_t j = 0; j < P.cols(); ++j) {
      if (!divides(dT, P(i, j))) throw ConsistencyError("conjugated matrix is not integral");
      P(i, j) = divexact(P(i, j), dT);
    }
  return P;
}

inline QuadInt pow_q(const QuadInt& x, std::size_t k) {
  QuadInt r(x.ring(), 1);
  for (std::size_t i = 0; i < k; ++i) r = r * x;
  return r;
}

}  // namespace detail

inline TriCexRecipe build_tri_counterexample(long d, std::size_t n) {
  QuadRing R(d);
  if (n < 2 || n > kDedekindMaxDim) throw PreconditionError("n must lie in [2, 6]");
  auto G = class_group(R);
  if (G.h == 1) throw PreconditionError("class number of Q(sqrt " + std::to_string(d) + ") is 1");
  TriCexRecipe rc;
  rc.ring = R;
  rc.n = n;
  const QuadIdeal& I = G.reps[1];  // smallest nontrivial reduced representative
  rc.a = QuadInt(R, I.a());
  rc.b = QuadInt(R, I.b(), I.c());
  QuadInt zero(R, 0);
  rc.N = Matrix<QuadInt>(n, n, zero);
  for (std::size_t i = 0; i < n; ++i) rc.N(i, i) = rc.a;
  for (std::size_t i = 0; i + 1 < n; ++i) rc.N(i + 1, i) = rc.b;
  QuadInt lhs = detail::pow_q(rc.a, n) - detail::pow_q(-rc.b, n);
  rc.corner_flipped = lhs.is_zero();
  rc.N(0, n - 1) = rc.corner_flipped ? QuadInt(-rc.b) : rc.b;
  rc.detN = det(rc.N);
  if (rc.detN.is_zero()) throw ConsistencyError("singular N");
  for (std::size_t i = 0; i < n; ++i) rc.lambda.push_back(rc.detN * Int(static_cast<long>(i)));
  rc.M = detail::conjugate_by(rc.N, rc.lambda);
  return rc;
}

/// Order of the class of I (smallest m >= 1 with I^m principal).
inline long class_order(const QuadIdeal& I, long cap = 1000) {
  QuadIdeal J = I;
  for (long m = 1; m <= cap; ++m) {
    if (is_principal(J)) return m;
    J = J * I;
  }
  throw CapacityError("class order exceeds " + std::to_string(cap));
}

inline DiagCexRecipe build_diag_counterexample(long d, std::size_t n, const Int& norm_bound = kDefaultSearchNorm) {
  QuadRing R(d);
  if (n < 2 || n > 4) throw PreconditionError("n must lie in [2, 4]");
  if (class_group(R).h == 1) throw PreconditionError("class number of Q(sqrt " + std::to_string(d) + ") is 1");
  DiagCexRecipe rc;
  rc.ring = R;
  rc.n = n;
  bool found = false;
  for (long p : primes_up_to(100000)) {
    for (const auto& P : primes_above(R, Int(p)))
      if (!is_principal(P.ideal)) {
        rc.p0 = P;
        found = true;
        break;
      }
    if (found) break;
  }
  if (!found) throw SearchExhaustedError("no non-principal prime below 100000");
  rc.m = class_order(rc.p0.ideal);
  auto sa = find_element_with_split(rc.p0.ideal, {}, norm_bound);
  rc.a = sa.e;
  rc.pa = sa.cofactor;
  rc.a0 = is_principal(rc.pa.ideal.pow(rc.m))->to_integral();
  auto ss = find_element_with_split(rc.pa.ideal, {rc.p0}, norm_bound);
  rc.s = ss.e;
  rc.ps = ss.cofactor;
  QuadIdeal pam1 = rc.pa.ideal.pow(rc.m - 1);
  auto sr = find_element_with_split(pam1, {rc.p0, rc.ps}, norm_bound);
  rc.r = sr.e;
  rc.pr = sr.cofactor;
  auto st = find_element_with_split(pam1, {rc.p0, rc.ps, rc.pr}, norm_bound);
  rc.t = st.e;
  rc.pt = st.cofactor;
  auto [al, be] = solve_generation(rc.a * rc.r, rc.s * rc.t, rc.a0);
  rc.alpha = al;
  rc.beta = be;
  QuadInt zero(R, 0);
  rc.T0 = Matrix<QuadInt>::identity(n, zero);
  rc.T0(0, 0) = rc.a;
  rc.T0(0, 1) = -(rc.t * rc.beta);
  rc.T0(1, 0) = rc.s;
  rc.T0(1, 1) = rc.r * rc.alpha;
  if (det(rc.T0) != rc.a0) throw ConsistencyError("det T0 differs from a0");
  for (std::size_t i = 0; i < n; ++i) rc.lambda.push_back(rc.a0 * Int(static_cast<long>(i)));
  rc.M = detail::conjugate_by(rc.T0, rc.lambda);
  // local witness at p_a
  Place<QuadInt> Pa(rc.pa);
  rc.local.prime = rc.pa;
  rc.local.uniformizer = Pa.uniformizer();
  QuadRat pi(Pa.uniformizer());
  QuadRat pim1(R, 1);
  for (long k = 0; k < rc.m - 1; ++k) pim1 = pim1 * pi;
  rc.local.scaled = to_field_matrix(rc.T0);
  for (std::size_t i = 0; i < n; ++i) {
    rc.local.scaled(i, 0) = rc.local.scaled(i, 0) / pi;
    rc.local.scaled(i, 1) = rc.local.scaled(i, 1) / pim1;
  }
  rc.local.ord_det = Pa.ord(det(rc.local.scaled));
  long mo = 1L << 30;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!rc.local.scaled(i, j).is_zero()) mo = std::min(mo, Pa.ord(rc.local.scaled(i, j)));
  rc.local.min_entry_ord = mo;
  return rc;
}

/// Re-verify every factorization constraint of a diagonal recipe.
inline void check_diag_recipe(const DiagCexRecipe& rc) {
  auto expect = [](const QuadInt& e, const QuadIdeal& I, const char* what) {
    if (QuadIdeal::principal(e) != I) throw ConsistencyError(std::string("factorization constraint failed for ") + what);
  };
  std::vector<PrimeIdeal> ps{rc.p0, rc.pa, rc.ps, rc.pr, rc.pt};
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if (ps[i] == ps[j]) throw ConsistencyError("recipe primes are not distinct");
  expect(rc.a, rc.p0.ideal * rc.pa.ideal, "a");
  expect(rc.a0, rc.pa.ideal.pow(rc.m), "a0");
  expect(rc.s, rc.pa.ideal * rc.ps.ideal, "s");
  expect(rc.r, rc.pa.ideal.pow(rc.m - 1) * rc.pr.ideal, "r");
  expect(rc.t, rc.pa.ideal.pow(rc.m - 1) * rc.pt.ideal, "t");
  if (rc.a * rc.r * rc.alpha + rc.s * rc.t * rc.beta != rc.a0) throw ConsistencyError("generation identity failed");
  if (det(rc.T0) != rc.a0) throw ConsistencyError("det T0 differs from a0");
  if (rc.local.ord_det != 0 || rc.local.min_entry_ord < 0) throw ConsistencyError("scaled local witness is not invertible");
}

struct LocalCheck {
  PrimeIdeal prime;
  bool ok = false;
};

struct CertificationReport {
  Problem kind = Problem::tri;
  Decision<QuadInt> field;
  std::vector<LocalCheck> locals;
  Decision<QuadInt> ring;
  bool ring_recheck = false;
  long prime_norm_bound = 0;
};

/// Primes of norm at most `bound`, by rational prime then normal form.
inline std::vector<PrimeIdeal> primes_up_to_norm(const QuadRing& R, long bound) {
  std::vector<PrimeIdeal> out;
  for (long p : primes_up_to(bound))
    for (const auto& P : primes_above(R, Int(p)))
      if (P.norm() <= bound) out.push_back(P);
  return out;
}

/// Three-leg certification of a counterexample; throws CertificationError naming the failing leg.
inline CertificationReport certify(const Matrix<QuadInt>& M, Problem kind, long prime_norm_bound) {
  CertificationReport rep;
  rep.kind = kind;
  rep.prime_norm_bound = prime_norm_bound;
  auto Mf = to_field_matrix(M);
  rep.field = kind == Problem::tri ? tri_over_field(Mf) : diag_over_field(Mf);
  if (rep.field.verdict != Verdict::yes || !verify_witness(Mf, *rep.field.witness, kind, false))
    throw CertificationError("global-field positive leg: M is not " +
                             std::string(kind == Problem::tri ? "triangularizable" : "diagonalizable") + " over k");
  for (const auto& P : primes_up_to_norm(M.proto().ring(), prime_norm_bound)) {
    Place<QuadInt> pl(P);
    bool ok = kind == Problem::tri ? tri_residue_field(M, pl) : diag_local(M, pl);
    rep.locals.push_back({P, ok});
    if (!ok) throw CertificationError("local positive leg fails at " + P.str());
  }
  rep.ring = kind == Problem::tri ? tri_over_ring(M) : diag_over_ring(M);
  if (rep.ring.verdict != Verdict::no)
    throw CertificationError("global-ring negative leg: M is " +
                             std::string(kind == Problem::tri ? "triangularizable" : "diagonalizable") + " over O_k");
  const auto& cert = *rep.ring.certificate;
  bool expected = kind == Problem::tri ? std::holds_alternative<ContentClassObstruction>(cert)
                                       : std::holds_alternative<ClassDistributionInfeasible>(cert);
  rep.ring_recheck = recheck_certificate<QuadInt>(Mf, cert);
  if (!expected || !rep.ring_recheck)
    throw CertificationError("global-ring negative leg: obstruction certificate did not re-verify");
  return rep;
}

}  // namespace locglob
