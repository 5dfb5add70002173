#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deciders.hpp"
#include "errors.hpp"
#include "ideal.hpp"
#include "local.hpp"
#include "place.hpp"

namespace locglob {

enum class Status { yes, no, unsupported, not_evaluated };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::yes: return "yes";
    case Status::no: return "no";
    case Status::unsupported: return "unsupported";
    default: return "not_evaluated";
  }
}

struct PrimeVerdict {
  std::string prime;
  Int norm;
  Status status = Status::not_evaluated;
  unsigned level = 0;  // condition 3: highest exponent verified, or the failing one
  std::string note;
};

template <class R>
struct ConditionResult {
  int index = 0;
  std::string statement;
  Status status = Status::not_evaluated;
  std::optional<Decision<R>> decision;  // global conditions
  std::vector<PrimeVerdict> primes;     // local conditions
  std::string note;
};

template <class R>
struct LocalGlobalReport {
  Problem kind = Problem::tri;
  long prime_norm_bound = 0;
  unsigned residue_levels = 0;
  std::vector<std::string> primes_checked;
  std::vector<ConditionResult<R>> conditions;  // indices 1..6 in order
  std::vector<std::string> violations;
  std::vector<std::string> notes;

  const ConditionResult<R>& condition(int i) const { return conditions.at(static_cast<std::size_t>(i - 1)); }
};

inline constexpr unsigned kDefaultResidueLevels = 3;

namespace detail {

inline std::vector<Place<Int>> places_up_to(const Int&, long bound) {
  std::vector<Place<Int>> out;
  for (long p : primes_up_to(bound)) out.emplace_back(Int(p));
  return out;
}

inline std::vector<Place<QuadInt>> places_up_to(const QuadInt& proto, long bound) {
  std::vector<Place<QuadInt>> out;
  for (long p : primes_up_to(bound))
    for (const auto& P : primes_above(proto.ring(), Int(p)))
      if (P.norm() <= bound) out.emplace_back(P);
  return out;
}

inline std::string statement(Problem k, int i) {
  std::string verb = k == Problem::tri ? "triangularizable" : "diagonalizable";
  switch (i) {
    case 1: return verb + " over the ring of integers";
    case 2: return verb + " over the completed local ring at every tested prime";
    case 3: return verb + " over every tested residue ring O/P^i";
    case 4: return verb + " over every tested residue field";
    case 5: return verb + " over the fraction field";
    default: return verb + " over the completion at every tested prime";
  }
}

inline Status aggregate(const std::vector<PrimeVerdict>& v) {
  bool any_unsupported = false;
  for (const auto& pv : v) {
    if (pv.status == Status::no) return Status::no;
    if (pv.status == Status::unsupported) any_unsupported = true;
  }
  return any_unsupported ? Status::unsupported : Status::yes;
}

template <class R>
Status global_status(const Decision<R>& d) {
  return d.verdict == Verdict::yes ? Status::yes : d.verdict == Verdict::no ? Status::no : Status::unsupported;
}

inline bool pid_ring(const Int&) { return true; }
inline bool pid_ring(const QuadInt& x) { return x.ring().norm_euclidean(); }

template <class R>
std::optional<bool> residue_ring_level(const Matrix<R>&, const Place<R>&, unsigned, Problem) {
  return std::nullopt;
}

inline std::optional<bool> residue_ring_level(const Matrix<Int>& M, const Place<Int>& P, unsigned i, Problem k) {
  return k == Problem::tri ? tri_residue_ring(M, P.p(), i) : diag_residue_ring(M, P.p(), i);
}

}  // namespace detail

/// Condition over the completion at P. Splitting there suffices for triangularization;
/// diagonalization also needs a semisimple matrix, which is a global property.
template <class R>
bool tri_completion(const Matrix<R>& M, const Place<R>& P) {
  return tri_local(M, P);
}
template <class R>
bool diag_completion(const Matrix<R>& M, const Place<R>& P) {
  return squarefree_part(charpoly(M))(M).is_zero() && tri_local(M, P);
}

/// Evaluate every condition of the local-global comparison and check the implication diagram.
template <class R>
LocalGlobalReport<R> local_global_report(const Matrix<R>& M, Problem kind, long prime_norm_bound,
                                         unsigned residue_levels = kDefaultResidueLevels) {
  require_square(M);
  if (prime_norm_bound < 2) throw ValidationError("prime norm bound must be at least 2");
  LocalGlobalReport<R> rep;
  rep.kind = kind;
  rep.prime_norm_bound = prime_norm_bound;
  rep.residue_levels = residue_levels;
  for (int i = 1; i <= 6; ++i) {
    ConditionResult<R> c;
    c.index = i;
    c.statement = detail::statement(kind, i);
    rep.conditions.push_back(c);
  }
  auto& c1 = rep.conditions[0];
  auto& c2 = rep.conditions[1];
  auto& c3 = rep.conditions[2];
  auto& c4 = rep.conditions[3];
  auto& c5 = rep.conditions[4];
  auto& c6 = rep.conditions[5];
  const bool tri = kind == Problem::tri;

  try {
    c1.decision = tri ? tri_over_ring(M) : diag_over_ring(M);
    c1.status = detail::global_status(*c1.decision);
  } catch (const UnsupportedError& e) {
    c1.status = Status::unsupported;
    c1.note = e.what();
  }
  auto Mf = to_field_matrix(M);
  c5.decision = tri ? tri_over_field(Mf) : diag_over_field(Mf);
  c5.status = detail::global_status(*c5.decision);

  const bool semisimple = squarefree_part(charpoly(M))(M).is_zero();
  bool residue_ring_known = false;
  for (const auto& P : detail::places_up_to(M.proto(), prime_norm_bound)) {
    std::string ps = P.str();
    Int nm = P.norm();
    rep.primes_checked.push_back(ps);
    bool split_local = tri_local(M, P);
    Status s2, s4, s6;
    if (tri) {
      s2 = s6 = split_local ? Status::yes : Status::no;
      s4 = tri_residue_field(M, P) ? Status::yes : Status::no;
    } else {
      s2 = diag_local(M, P) ? Status::yes : Status::no;
      s4 = diag_residue_field(M, P) ? Status::yes : Status::no;
      s6 = semisimple && split_local ? Status::yes : Status::no;
    }
    c2.primes.push_back({ps, nm, s2, 0, ""});
    c4.primes.push_back({ps, nm, s4, 0, ""});
    c6.primes.push_back({ps, nm, s6, 0, ""});
    {
      PrimeVerdict pv{ps, nm, Status::yes, 0, ""};
      try {
        for (unsigned i = 1; i <= residue_levels; ++i) {
          auto ok = detail::residue_ring_level(M, P, i, kind);
          if (!ok) {
            pv.status = Status::not_evaluated;
            break;
          }
          residue_ring_known = true;
          if (!*ok) {
            pv.status = Status::no;
            pv.level = i;
            break;
          }
          pv.level = i;
        }
      } catch (const CapacityError& e) {
        // keep the levels already verified; only an unreachable first level is unsupported
        if (pv.level == 0) pv.status = Status::unsupported;
        pv.note = e.what();
      }
      c3.primes.push_back(pv);
    }
  }
  c2.status = detail::aggregate(c2.primes);
  c4.status = detail::aggregate(c4.primes);
  c6.status = detail::aggregate(c6.primes);
  if (residue_ring_known) {
    c3.status = detail::aggregate(c3.primes);
  } else {
    c3.primes.clear();
    c3.status = Status::not_evaluated;
    c3.note = "residue-ring search is implemented over Z only; equivalent to condition 2 prime by prime";
  }

  // Hard implications: a violation here is an internal inconsistency.
  auto flag = [&](const std::string& s) { rep.violations.push_back(s); };
  auto all_local_yes = [&](const ConditionResult<R>& c, const char* from) {
    for (const auto& pv : c.primes)
      if (pv.status == Status::no) flag(std::string(from) + " holds but condition " + std::to_string(c.index) + " fails at " + pv.prime);
  };
  if (c1.status == Status::yes) {
    if (c5.status == Status::no) flag("condition 1 holds but condition 5 fails");
    all_local_yes(c2, "condition 1");
    all_local_yes(c3, "condition 1");
    all_local_yes(c4, "condition 1");
    all_local_yes(c6, "condition 1");
  }
  if (c5.status == Status::yes) {
    all_local_yes(c6, "condition 5");
    if (tri) {
      all_local_yes(c2, "condition 5");
      all_local_yes(c4, "condition 5");
    }
  }
  for (std::size_t k = 0; k < c2.primes.size(); ++k) {
    const auto& p2 = c2.primes[k];
    if (p2.status != Status::yes) continue;
    if (c4.primes[k].status == Status::no) flag("condition 2 holds but condition 4 fails at " + p2.prime);
    if (c6.primes[k].status == Status::no) flag("condition 2 holds but condition 6 fails at " + p2.prime);
    if (!c3.primes.empty() && c3.primes[k].status == Status::no)
      flag("condition 2 holds but condition 3 fails at " + p2.prime);
  }
  if (tri)
    for (std::size_t k = 0; k < c2.primes.size(); ++k)
      if (c2.primes[k].status != c6.primes[k].status)
        flag("conditions 2 and 6 disagree at " + c2.primes[k].prime);
  if (!c3.primes.empty())
    for (std::size_t k = 0; k < c3.primes.size(); ++k) {
      const auto& p3 = c3.primes[k];
      if (p3.level == 0) continue;
      bool level1_ok = !(p3.level == 1 && p3.status == Status::no);
      if (level1_ok != (c4.primes[k].status == Status::yes))
        flag("residue ring at level 1 disagrees with the residue field at " + p3.prime);
    }

  if (tri && detail::pid_ring(M.proto()) && c1.status != Status::unsupported && c1.status != c5.status)
    flag("principal ring: conditions 1 and 5 disagree");

  // Reverse directions only hold over all primes; record bounded evidence instead.
  if (c5.status == Status::no && c4.status == Status::yes)
    rep.notes.push_back("condition 4 holds at every tested prime but condition 5 fails; a failing prime exists beyond the bound");
  if (c5.status == Status::no && c6.status == Status::yes)
    rep.notes.push_back("condition 6 holds at every tested prime but condition 5 fails; a failing prime exists beyond the bound");
  if (c5.status == Status::yes && c4.status == Status::yes)
    rep.notes.push_back("characteristic polynomial split over every tested residue field, confirmed globally");
  if (c1.status == Status::no && c2.status == Status::yes) {
    if (detail::pid_ring(M.proto()))
      rep.notes.push_back("principal ring: condition 2 holds at every tested prime while condition 1 fails; a failing prime exists beyond the bound");
    else
      rep.notes.push_back("local-global principle fails: condition 2 holds at every tested prime while condition 1 fails");
  }
  return rep;
}

}  // namespace locglob
