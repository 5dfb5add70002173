#include <gtest/gtest.h>

#include "locglob/locglob.hpp"

using namespace locglob;

namespace {

std::vector<std::string> strs(const std::vector<StratumIndex>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(s.str());
  return out;
}

// T^{-1} M T upper triangular, by direct inversion and multiplication
bool conj_upper(const GF& F, const FqMatrix& T, const FqMatrix& M) {
  auto A = mul(F, mul(F, inverse(F, T), M), T);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < i; ++j)
      if (A(i, j)) return false;
  return true;
}

FqMatrix from_rows(const std::vector<std::vector<int>>& rows) {
  FqMatrix T(static_cast<int>(rows.size()), static_cast<int>(rows.size()));
  for (int i = 0; i < T.rows; ++i)
    for (int j = 0; j < T.cols; ++j) T(i, j) = static_cast<GF::E>(rows[i][j]);
  return T;
}

Int ipow(long q, int k) { return pow(Int(q), static_cast<unsigned long>(k)); }

}  // namespace

TEST(FiniteField, SmallFieldsAndGroupOrders) {
  GF F4(4);
  for (int a = 1; a < 4; ++a) EXPECT_EQ(F4.mul(a, F4.inv(a)), 1);
  EXPECT_EQ(gl_order(3, 2), 168);
  long count = 0;
  for_each_gl(GF(2), 3, [](const FqMatrix&, int) { return true; }, [&](const FqMatrix&) { ++count; });
  EXPECT_EQ(count, 168);
  EXPECT_THROW(GF(6), ValidationError);
  EXPECT_THROW(for_each_gl(GF(7), 4, [](const FqMatrix&, int) { return true; }, [](const FqMatrix&) {}, 1000),
               CapacityError);
}

TEST(EnumStrata, Examples) {
  EXPECT_EQ(strs(enum_strata(1, 2, IndexFamily::R)), (std::vector<std::string>{"(1)", "(2)"}));
  EXPECT_EQ(enum_strata(2, 3, IndexFamily::R).size(), 6u);
  EXPECT_EQ(strs(enum_strata(1, 2, IndexFamily::S)), (std::vector<std::string>{"(1,1)"}));
  EXPECT_THROW(enum_strata(0, 2, IndexFamily::R), PreconditionError);
}

TEST(EnumStrata, CompleteSortedDuplicateFree) {
  for (int m = 1; m <= 3; ++m)
    for (int n = 2; n <= 4; ++n) {
      auto R = enum_strata(m, n, IndexFamily::R);
      EXPECT_TRUE(std::is_sorted(R.begin(), R.end()));
      EXPECT_EQ(std::adjacent_find(R.begin(), R.end()), R.end());
      // independent count: increasing sequences with 1 <= r_l <= m + l
      long brute = 0;
      std::vector<int> r(static_cast<std::size_t>(n - 1), 1);
      std::function<void(int, int)> rec = [&](int l, int lo) {
        if (l == n - 1) {
          ++brute;
          return;
        }
        for (int v = lo; v <= m + l + 1; ++v) rec(l + 1, v + 1);
      };
      rec(0, 1);
      EXPECT_EQ(static_cast<long>(R.size()), brute);
      for (const auto& s : R) EXPECT_TRUE(in_R(m, n, s.r));
      for (const auto& s : enum_strata(m, n, IndexFamily::S)) EXPECT_TRUE(in_S(m, n, s.s));
    }
}

TEST(Equations, Examples) {
  EXPECT_EQ(equations_Vr(1, 2, {1}).expanded(), (std::vector<std::string>{"T3,1=0", "T1,1=0", "det(T) invertible"}));
  EXPECT_EQ(equations_XprimeM(1, 2).expanded(),
            (std::vector<std::string>{"T3,1=0", "T1,1*T3,2=0", "det(T) invertible"}));
  auto sl = equations_SLsr(3, 2).expanded();
  EXPECT_NE(std::find(sl.begin(), sl.end(), "T3,1=0"), sl.end());
  EXPECT_NE(std::find(sl.begin(), sl.end(), "det(T)=1"), sl.end());
  EXPECT_THROW(equations_Vr(1, 2, {3}), Error);
}

TEST(Membership, Examples) {
  GF F(2);
  auto I = FqMatrix::identity(3);
  EXPECT_TRUE(membership(F, I, equations_Vr(1, 2, {2})));
  EXPECT_FALSE(membership(F, I, equations_Vr(1, 2, {1})));
}

TEST(Membership, XprimeEqualsFlagCriterionOverF2) {
  GF F(2);
  auto M = JordanShape::scalar_plus_jordan(1, 2, 0).matrix(F);
  auto E = equations_XprimeM(1, 2);
  long members = 0;
  for_each_gl(F, 3, [](const FqMatrix&, int) { return true; }, [&](const FqMatrix& T) {
    bool flag = x_membership_flag(F, T, M, {0, 0, 0});
    EXPECT_EQ(flag, conj_upper(F, T, M));
    EXPECT_EQ(flag, membership(F, T, E));
    members += flag;
  });
  EXPECT_EQ(members, 40);
}

TEST(FlagCriterion, Examples) {
  GF F(5);
  auto M = JordanShape::scalar_plus_jordan(1, 2, 0).matrix(F);
  EXPECT_TRUE(x_membership_flag(F, FqMatrix::identity(3), M, {0, 0, 0}));
  auto T = from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  EXPECT_FALSE(x_membership_flag(F, T, M, {0, 0, 0}));
  EXPECT_THROW(x_membership_flag(F, FqMatrix(3, 3), M, {0, 0, 0}), RankError);
  auto D = JordanShape::diagonal({1, 2}).matrix(F);
  long pass = 0;
  for_each_gl(F, 2, [](const FqMatrix&, int) { return true; }, [&](const FqMatrix& A) {
    pass += x_membership_flag(F, A, D, {1, 2}) || x_membership_flag(F, A, D, {2, 1});
  });
  EXPECT_EQ(pass, 160);
}

TEST(FlagCriterion, MatchesConjugationOverF3) {
  GF F(3);
  auto M = JordanShape::scalar_plus_jordan(1, 2, 1).matrix(F);
  for_each_gl(F, 3, [](const FqMatrix&, int) { return true; },
              [&](const FqMatrix& T) { EXPECT_EQ(x_membership_flag(F, T, M, {1, 1, 1}), conj_upper(F, T, M)); });
}

TEST(Classify, Examples) {
  GF F(2);
  EXPECT_EQ(classify_stratum(F, FqMatrix::identity(3), 1, 2, 0).str(), "(2)");
  auto A = from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  EXPECT_EQ(classify_stratum(F, A, 1, 2, 0).str(), "(1)");
  EXPECT_THROW(classify_stratum(F, FqMatrix(3, 3), 1, 2, 0), ClassificationError);
}

TEST(Classify, EveryPointLandsInItsStratum) {
  for (auto [m, n, q] : std::vector<std::tuple<int, int, int>>{{1, 2, 2}, {1, 2, 3}, {1, 3, 2}, {2, 2, 2}}) {
    GF F(q);
    auto M = JordanShape::scalar_plus_jordan(m, n, 0).matrix(F);
    std::vector<long> lam(static_cast<std::size_t>(m + n), 0);
    for_each_gl(F, m + n, [](const FqMatrix&, int) { return true; }, [&](const FqMatrix& T) {
      if (!x_membership_flag(F, T, M, lam)) return;
      auto r = classify_stratum(F, T, m, n, 0);
      EXPECT_TRUE(in_R(m, n, r.r));
      EXPECT_TRUE(membership(F, T, equations_Vr(m, n, r.r)));
    });
  }
}

TEST(YComponents, Orderings) {
  EXPECT_EQ(y_components({1, 1, 2}).size(), 3u);
  EXPECT_EQ(y_components({1, 2, 3}).size(), 6u);
  EXPECT_EQ(y_components({5, 5}).size(), 1u);
  EXPECT_EQ(component_count({1, 1, 2, 2}), 6);
}

TEST(Transport, Examples) {
  GF F(5);
  auto D = JordanShape::diagonal({1, 2}).matrix(F);
  auto Ty = transport_point(F, FqMatrix::identity(2), D, 1, TransportMode::Y);
  EXPECT_EQ(Ty, from_rows({{0, 4}, {1, 0}}));
  auto C = mul(F, mul(F, inverse(F, Ty), D), Ty);
  EXPECT_EQ(C, JordanShape::diagonal({2, 1}).matrix(F));
  auto Tx = transport_point(F, FqMatrix::identity(2), D, 1, TransportMode::X);
  EXPECT_EQ(Tx, from_rows({{0, 4}, {1, 0}}));
  auto S = JordanShape::diagonal({1, 1}).matrix(F);
  EXPECT_THROW(transport_point(F, FqMatrix::identity(2), S, 1, TransportMode::X), PreconditionError);
}

TEST(Audit, SmallestShapeCounts) {
  auto a = audit_strata(1, 2, 0, 2);
  EXPECT_EQ(a.x_points, 40);
  EXPECT_EQ(a.xprime_points, 40);
  EXPECT_EQ(a.union_points, 40);
  ASSERT_EQ(a.strata.size(), 2u);
  EXPECT_EQ(a.strata[0].points, 24);
  EXPECT_EQ(a.strata[1].points, 24);
  EXPECT_EQ((a.intersections.at({"(1)", "(2)"})), 8);
  EXPECT_TRUE(a.union_ok && a.presentation_ok && a.classification_ok && a.polynomial_ok);
  EXPECT_TRUE(a.failures.empty());
}

TEST(Audit, FurtherShapes) {
  for (auto [m, n, q] : std::vector<std::tuple<int, int, int>>{{1, 2, 3}, {2, 2, 2}, {1, 3, 2}, {1, 2, 4}}) {
    auto a = audit_strata(m, n, 0, q);
    EXPECT_TRUE(a.union_ok && a.presentation_ok && a.classification_ok && a.polynomial_ok)
        << m << "," << n << " q=" << q;
  }
  EXPECT_THROW(audit_strata(2, 2, 0, 3, 1000), CapacityError);
}

TEST(Components, DiagonalYOverF3) {
  auto c = audit_components(JordanShape::diagonal({1, 1, 2}), 3, true);
  EXPECT_EQ(c.total, 288);
  ASSERT_EQ(c.components.size(), 3u);
  for (const auto& [sigma, count] : c.components) EXPECT_EQ(count, 96);
  EXPECT_EQ(c.total, 3 * gl_order(2, 3) * gl_order(1, 3));
  EXPECT_TRUE(c.counts_ok && c.transport_ok);
}

TEST(Components, FlagVarietyOverF5) {
  auto c = audit_components(JordanShape::diagonal({1, 2}), 5, false);
  EXPECT_EQ(c.total, 160);
  for (const auto& [sigma, count] : c.components) EXPECT_EQ(count, 80);
  EXPECT_TRUE(c.counts_ok && c.transport_ok);
  auto j = audit_components(JordanShape::scalar_plus_jordan(0, 2, 0), 3, false);
  EXPECT_EQ(j.total, 12);
  EXPECT_EQ(j.total, (3 - 1) * (3 - 1) * 3);
}

TEST(Components, ProductFormulaOnMixedShapes) {
  JordanShape s;
  s.blocks = {{0, 2}, {1, 1}};
  for (int q : {2, 3}) {
    auto c = audit_components(s, q, false);
    EXPECT_TRUE(c.counts_ok) << q;
    EXPECT_TRUE(c.transport_ok) << q;
  }
  JordanShape clash = JordanShape::diagonal({1, 3});
  EXPECT_THROW(audit_components(clash, 2, false), PreconditionError);
}

TEST(Dimension, Examples) {
  EXPECT_EQ(dim_stratum(1, 2, {2}), 7);
  EXPECT_EQ(dim_stratum(1, 2, {1}), 7);
  EXPECT_THROW(dim_stratum(1, 2, {3}), Error);
}

TEST(Dimension, ClosedFormCountsForSmallestShape) {
  for (long q : {2, 3, 4, 5, 7, 8, 9}) {
    Int gl2 = (ipow(q, 2) - 1) * (ipow(q, 2) - q);
    EXPECT_EQ(stratum_count_polynomial(1, 2, {2})(Int(q)), gl2 * (q - 1) * ipow(q, 2));
    EXPECT_EQ(stratum_count_polynomial(1, 2, {1})(Int(q)), Int(q - 1) * (ipow(q, 3) - q) * (ipow(q, 3) - ipow(q, 2)));
  }
}

TEST(Dimension, PolynomialMatchesEnumerationAndDegree) {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {1, 3}})
    for (const auto& r : enum_strata(m, n, IndexFamily::R)) {
      auto P = stratum_count_polynomial(m, n, r.r);
      EXPECT_EQ(P.degree(), dim_stratum(m, n, r.r)) << r.str();
      for (int q : {2, 3, 4, 5}) {
        GF F(q);
        EXPECT_EQ(P(Int(q)), count_points(F, equations_Vr(m, n, r.r))) << m << "," << n << " " << r.str() << " q=" << q;
      }
    }
}

TEST(Dimension, PrefixCountMatchesFullEnumeration) {
  GF F(2);
  for (const auto& r : enum_strata(1, 3, IndexFamily::R)) {
    auto E = equations_Vr(1, 3, r.r);
    long full = 0;
    for_each_gl(F, 4, [](const FqMatrix&, int) { return true; }, [&](const FqMatrix& T) { full += membership(F, T, E); });
    EXPECT_EQ(count_points(F, E), full) << r.str();
  }
}

TEST(Dimension, WsCountTimesDeterminantChoices) {
  for (const auto& s : enum_strata(1, 3, IndexFamily::S))
    for (int q : {2, 3}) {
      GF F(q);
      EXPECT_EQ(ws_gl_count_polynomial(1, 3, s.s)(Int(q)), count_points(F, equations_Ws(1, 3, s.s)) * (q - 1)) << s.str();
    }
}
