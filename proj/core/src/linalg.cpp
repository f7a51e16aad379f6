#include "cbq/linalg.hpp"

#include <stdexcept>

namespace cbq {

std::size_t rank(const RatMatrix& m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    Int l = 1;
    for (const auto& x : m[i]) l = lcm(l, x.get_den());
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m[i][j].get_num() * (l / m[i][j].get_den());
  }
  Int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

namespace {
// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    Rat inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat k = a[i][c];
      for (std::size_t j = c; j < a[i].size(); ++j) a[i][j] -= k * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}
}  // namespace

std::vector<std::vector<Rat>> nullspace(const RatMatrix& m, std::size_t ncols) {
  RatMatrix a = m;
  auto piv = rref(a, ncols);
  std::vector<bool> is_piv(ncols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<Rat>> out;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    std::vector<Rat> v(ncols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<Rat>> solve(const RatMatrix& m, const std::vector<Rat>& rhs) {
  if (m.size() != rhs.size()) throw std::invalid_argument("solve: size mismatch");
  std::size_t cols = m.empty() ? 0 : m[0].size();
  RatMatrix a = m;
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(rhs[i]);
  auto piv = rref(a, cols);
  for (std::size_t r = piv.size(); r < a.size(); ++r)
    if (a[r][cols] != 0) return std::nullopt;
  std::vector<Rat> x(cols, 0);
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = a[r][cols];
  return x;
}

}  // namespace cbq
