#pragma once

#include <random>
#include <vector>

#include "locglob/locglob.hpp"

namespace testsupport {

using namespace locglob;

inline Matrix<Int> zmat(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Int>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (long v : row) r.back().emplace_back(v);
  }
  return Matrix<Int>(r, Int(0));
}

inline Matrix<Rat> qmat(const std::vector<std::vector<long>>& rows) { return to_field_matrix(zmat(rows)); }

// entries are (x, y) pairs meaning x + y*w
inline Matrix<QuadInt> omat(const QuadRing& R, const std::vector<std::vector<std::pair<long, long>>>& rows) {
  std::vector<std::vector<QuadInt>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (auto [x, y] : row) r.back().emplace_back(R, x, y);
  }
  return Matrix<QuadInt>(r, QuadInt(R, 0));
}

/// Product of random elementary matrices: determinant exactly 1.
inline Matrix<Int> random_unimodular(std::size_t n, std::mt19937& rng, int steps = 6) {
  auto T = Matrix<Int>::identity(n, Int(0));
  std::uniform_int_distribution<int> idx(0, static_cast<int>(n) - 1), coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    Int c(coef(rng));
    for (std::size_t k = 0; k < n; ++k) T(static_cast<std::size_t>(i), k) += c * T(static_cast<std::size_t>(j), k);
  }
  return T;
}

inline Matrix<Int> random_upper(std::size_t n, std::mt19937& rng, int lo, int hi) {
  std::uniform_int_distribution<int> u(lo, hi);
  Matrix<Int> U(n, n, Int(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) U(i, j) = u(rng);
  return U;
}

}  // namespace testsupport
