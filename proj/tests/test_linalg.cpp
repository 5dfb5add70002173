#include <gtest/gtest.h>

#include "support.hpp"

using namespace locglob;
using namespace testsupport;

namespace {
const QuadRing R5(-5);
const QuadRing R1(-1);
Poly<Rat> qpoly(std::vector<long> c) {
  std::vector<Rat> v;
  for (long x : c) v.emplace_back(x);
  return Poly<Rat>(v, Rat(0));
}
}  // namespace

TEST(Charpoly, NilpotentAndTriangular) {
  EXPECT_EQ(charpoly(qmat({{0, 0, 0}, {0, 0, 1}, {0, 0, 0}})), qpoly({0, 0, 0, 1}));
  EXPECT_EQ(charpoly(zmat({{1, 3}, {0, 4}})), (Poly<Int>({Int(4), Int(-5), Int(1)}, Int(0))));
  EXPECT_THROW(charpoly(zmat({{1, 2, 3}})), Error);
}

TEST(Charpoly, QuadraticExample) {
  auto M = omat(R5, {{{4, -2}, {2, 2}}, {{-2, -2}, {4, 0}}});
  auto f = charpoly(M);
  ASSERT_EQ(f.degree(), 2);
  EXPECT_EQ(f.coeff(0), QuadInt(R5, 0));
  EXPECT_EQ(f.coeff(1), QuadInt(R5, -8, 2));
  EXPECT_EQ(f.coeff(2), QuadInt(R5, 1));
}

TEST(Charpoly, SimilarityInvariantAndAnnihilating) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> u(-9, 9);
  for (int k = 0; k < 40; ++k) {
    std::size_t n = 2 + k % 4;
    Matrix<Int> M(n, n, Int(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) M(i, j) = u(rng);
    auto T = random_unimodular(n, rng);
    auto Ti = unimodular_inverse(T);
    EXPECT_EQ(charpoly(Ti * M * T), charpoly(M));
    EXPECT_EQ(charpoly(M)(M), Matrix<Int>(n, n, Int(0)));
  }
}

TEST(SplitEigenvalues, RationalExamples) {
  auto E = split_eigenvalues(qmat({{0, -6}, {1, 5}}));
  EXPECT_TRUE(E.split);
  ASSERT_EQ(E.eigen.size(), 2u);
  EXPECT_EQ(E.eigen[0].value, Rat(2));
  EXPECT_EQ(E.eigen[1].value, Rat(3));
  EXPECT_FALSE(split_eigenvalues(qmat({{0, -1}, {1, 0}})).split);
}

TEST(SplitEigenvalues, QuadraticExample) {
  auto M = to_field_matrix(omat(R5, {{{4, -2}, {2, 2}}, {{-2, -2}, {4, 0}}}));
  auto E = split_eigenvalues(M);
  ASSERT_TRUE(E.split);
  std::vector<QuadRat> vals;
  for (const auto& e : E.eigen) vals.push_back(e.value);
  EXPECT_NE(std::find(vals.begin(), vals.end(), QuadRat(QuadInt(R5, 0))), vals.end());
  EXPECT_NE(std::find(vals.begin(), vals.end(), QuadRat(QuadInt(R5, 8, -2))), vals.end());
}

TEST(SplitEigenvalues, KernelsAndMultiplicities) {
  std::mt19937 rng(23);
  for (int k = 0; k < 30; ++k) {
    std::size_t n = 2 + k % 3;
    auto U = random_upper(n, rng, -4, 4);
    auto T = random_unimodular(n, rng);
    auto M = to_field_matrix(unimodular_inverse(T) * U * T);
    auto E = split_eigenvalues(M);
    ASSERT_TRUE(E.split);
    std::size_t total = 0;
    auto prod = Poly<Rat>::monomial(Rat(1), 0);
    for (const auto& e : E.eigen) {
      total += e.multiplicity;
      for (std::size_t i = 0; i < e.multiplicity; ++i) prod = prod * Poly<Rat>::linear(e.value);
      auto Mi = M - Matrix<Rat>::identity(n, Rat(0)) * e.value;
      EXPECT_EQ(Mi * e.kernel, Matrix<Rat>(n, e.kernel.cols(), Rat(0)));
      EXPECT_GE(e.kernel.cols(), 1u);
    }
    EXPECT_EQ(total, n);
    EXPECT_EQ(prod, E.charpoly);
  }
}

TEST(Snf, Examples) {
  auto S = snf(zmat({{2, 4}, {6, 8}}));
  EXPECT_EQ(S.D, zmat({{2, 0}, {0, 4}}));
  auto I = zmat({{1, 0}, {0, 1}});
  auto SI = snf(I);
  EXPECT_EQ(SI.D, I);
  EXPECT_EQ(SI.U, I);
  EXPECT_EQ(SI.V, I);
  EXPECT_EQ(snf(zmat({{0, 0}, {0, 0}})).D, zmat({{0, 0}, {0, 0}}));
  EXPECT_THROW(snf(omat(R5, {{{1, 0}}})), UnsupportedError);
}

TEST(Snf, TransformsAndDivisibilityChain) {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> u(-12, 12);
  for (int k = 0; k < 60; ++k) {
    std::size_t m = 1 + k % 4, n = 1 + (k / 4) % 4;
    Matrix<Int> A(m, n, Int(0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) A(i, j) = u(rng);
    auto S = snf(A);
    EXPECT_EQ(S.U * A * S.V, S.D);
    EXPECT_TRUE(is_unit(det(S.U)));
    EXPECT_TRUE(is_unit(det(S.V)));
    for (std::size_t i = 0; i + 1 < std::min(m, n); ++i)
      if (S.D(i + 1, i + 1) != 0) {
        EXPECT_TRUE(divides(S.D(i, i), S.D(i + 1, i + 1)));
      }
  }
  for (int k = 0; k < 20; ++k) {
    Matrix<QuadInt> A(2, 3, QuadInt(R1, 0));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) A(i, j) = QuadInt(R1, u(rng), u(rng));
    auto S = snf(A);
    EXPECT_EQ(S.U * A * S.V, S.D);
    EXPECT_TRUE(is_unit(det(S.U)));
    EXPECT_TRUE(is_unit(det(S.V)));
  }
}

TEST(UnimodularComplete, Examples) {
  std::vector<Int> e1{Int(1), Int(0), Int(0)};
  EXPECT_EQ(unimodular_complete(e1), Matrix<Int>::identity(3, Int(0)));
  EXPECT_EQ(unimodular_complete(std::vector<Int>{Int(2), Int(3)}), zmat({{2, 1}, {3, 2}}));
  try {
    unimodular_complete(std::vector<Int>{Int(2), Int(4)});
    FAIL();
  } catch (const ContentError& e) {
    EXPECT_NE(std::string(e.what()).find("(2)"), std::string::npos);
  }
}

TEST(UnimodularComplete, DeterminantOneAndRecompletion) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> u(-30, 30);
  int done = 0;
  while (done < 60) {
    std::size_t n = 2 + done % 4;
    std::vector<Int> v(n);
    for (auto& x : v) x = u(rng);
    if (content(v) != 1) continue;
    auto T = unimodular_complete(v);
    EXPECT_EQ(det(T), 1);
    EXPECT_EQ(T.col(0), v);
    auto T2 = unimodular_complete(T.col(0));
    EXPECT_EQ(det(T2), 1);
    ++done;
  }
  for (long a = -6; a <= 6; ++a)
    for (long b = -6; b <= 6; ++b) {
      std::vector<QuadInt> v{QuadInt(R1, a, b), QuadInt(R1, b + 1, a)};
      if (content(v) != QuadIdeal::unit(R1)) continue;
      auto T = unimodular_complete(v);
      EXPECT_EQ(det(T), QuadInt(R1, 1));
      EXPECT_EQ(T.col(0), v);
    }
}

TEST(Saturate, Examples) {
  auto B = zmat({{2, 0}, {0, 3}, {0, 0}});
  EXPECT_EQ(saturate(B), zmat({{1, 0}, {0, 1}, {0, 0}}));
  EXPECT_EQ(saturate(zmat({{1}, {1}})), zmat({{1}, {1}}));
  EXPECT_EQ(saturate(zmat({{2}, {0}})), zmat({{1}, {0}}));
  EXPECT_THROW(saturate(zmat({{1, 2}, {1, 2}})), RankError);
}

TEST(Saturate, IdempotentSameSpanTorsionFree) {
  std::mt19937 rng(37);
  std::uniform_int_distribution<int> u(-6, 6);
  int done = 0;
  while (done < 40) {
    std::size_t n = 3 + done % 2, k = 1 + done % 2;
    Matrix<Int> B(n, k, Int(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) B(i, j) = u(rng);
    if (rank(to_field_matrix(B)) < k) continue;
    auto S = saturate(B);
    EXPECT_EQ(saturate(S), S);
    Matrix<Rat> both(n, 2 * k, Rat(0));
    both.set_block(0, 0, to_field_matrix(B));
    both.set_block(0, k, to_field_matrix(S));
    EXPECT_EQ(rank(both), k);
    auto D = snf(S).D;
    for (std::size_t i = 0; i < k; ++i) EXPECT_EQ(abs(D(i, i)), 1);
    ++done;
  }
}

TEST(Content, Examples) {
  EXPECT_EQ(content(std::vector<Int>{Int(4), Int(6)}), 2);
  auto P2 = QuadIdeal::generated_by(R5, std::vector<QuadInt>{QuadInt(R5, 2), QuadInt(R5, 1, 1)});
  EXPECT_EQ(content(std::vector<QuadInt>{QuadInt(R5, 2), QuadInt(R5, 1, 1)}), P2);
  EXPECT_FALSE(is_principal(P2).has_value());
  EXPECT_EQ(content(std::vector<QuadInt>{QuadInt(R5, 1, 1), QuadInt(R5, 2), QuadInt(R5, 0)}), P2);
  EXPECT_THROW(content(std::vector<QuadInt>{QuadInt(R5, 0), QuadInt(R5, 0)}), Error);
}

TEST(Content, ScalesByPrincipalIdeals) {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> u(-7, 7);
  for (int k = 0; k < 80; ++k) {
    std::vector<QuadInt> v{QuadInt(R5, u(rng), u(rng)), QuadInt(R5, u(rng), u(rng)), QuadInt(R5, u(rng), u(rng))};
    QuadInt c(R5, u(rng), u(rng));
    if (c.is_zero() || std::all_of(v.begin(), v.end(), [](const QuadInt& x) { return x.is_zero(); })) continue;
    std::vector<QuadInt> cv;
    for (const auto& x : v) cv.push_back(c * x);
    EXPECT_EQ(content(cv), QuadIdeal::principal(c) * content(v));
    std::vector<QuadInt> neg;
    for (const auto& x : v) neg.push_back(-x);
    EXPECT_EQ(content(neg), content(v));
  }
}
