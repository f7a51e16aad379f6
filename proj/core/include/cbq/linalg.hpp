#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cbq/rat.hpp"

namespace cbq {

using RatMatrix = std::vector<std::vector<Rat>>;

// Rank via fraction-free (Bareiss) elimination after clearing row denominators.
std::size_t rank(const RatMatrix& m);
// Basis of the right nullspace {x : m x = 0}.
std::vector<std::vector<Rat>> nullspace(const RatMatrix& m, std::size_t ncols);
// Solve m x = rhs; nullopt when inconsistent (free variables set to 0).
std::optional<std::vector<Rat>> solve(const RatMatrix& m, const std::vector<Rat>& rhs);

template <class T>
using Mat3 = std::array<std::array<T, 3>, 3>;

template <class T>
T det3(const Mat3<T>& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

// bᵀ g b
template <class T>
Mat3<T> congruence(const Mat3<T>& g, const Mat3<T>& b) {
  Mat3<T> gb, out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      T s = g[i][0] * b[0][j];
      for (int k = 1; k < 3; ++k) s = s + g[i][k] * b[k][j];
      gb[i][j] = s;
    }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      T s = b[0][i] * gb[0][j];
      for (int k = 1; k < 3; ++k) s = s + b[k][i] * gb[k][j];
      out[i][j] = s;
    }
  return out;
}

}  // namespace cbq
