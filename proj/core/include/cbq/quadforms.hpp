#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "cbq/bundles.hpp"
#include "cbq/qform.hpp"
#include "cbq/ratfunc.hpp"
#include "cbq/upoly.hpp"

namespace cbq {

class DegeneratePivot : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_zero_elem(const Rat& x) { return x == 0; }
inline bool is_zero_elem(const Poly& x) { return x.is_zero(); }
inline bool is_zero_elem(const RatFunc& x) { return x.is_zero(); }

template <class T>
struct DiagonalForm {
  std::array<T, 3> d;
  Mat3<T> basis;  // columns e1, e2, e3
};

// Orthogonal basis e1 = (1,0,0), e2 = (−α1, 2α0, 0),
// e3 = (α1α4 − 2α2α3, α1α2 − 2α0α4, 4α0α3 − α1²) with
// Q(e1) = α0, Q(e2) = α0(4α0α3 − α1²), Q(e3) = 4(4α0α3 − α1²)δ_Q.
// The congruence bᵀGb = diag(d) is checked before returning.
template <class T>
DiagonalForm<T> diagonalize(const QuadraticForm3<T>& q) {
  const auto& a = q.alpha;
  if (is_zero_elem(a[0])) throw DegeneratePivot("degenerate pivot: alpha0 = 0");
  T disc = a[0] * a[3] * Rat(4) - a[1] * a[1];
  if (is_zero_elem(disc)) throw DegeneratePivot("degenerate pivot: alpha1^2 - 4 alpha0 alpha3 = 0");
  DiagonalForm<T> out;
  T zero = a[0] * Rat(0), one = zero + Rat(1);
  out.d = {a[0], a[0] * disc, disc * q.delta() * Rat(4)};
  out.basis = {{{one, -a[1], a[1] * a[4] - a[2] * a[3] * Rat(2)},
                {zero, a[0] * Rat(2), a[1] * a[2] - a[0] * a[4] * Rat(2)},
                {zero, zero, disc}}};
  Mat3<T> c = congruence(q.gram(), out.basis);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      T expect = i == j ? out.d[i] : zero;
      if (!is_zero_elem(c[i][j] - expect)) throw std::logic_error("diagonalize: congruence check failed");
    }
  return out;
}

// Form with variables renamed y_i -> y_{perm[i]}.
template <class T>
QuadraticForm3<T> permute(const QuadraticForm3<T>& q, const std::array<int, 3>& perm) {
  // coefficient of new y_i y_j is the old coefficient of y_{perm[i]} y_{perm[j]}
  auto idx = [](int i, int j) {
    if (i > j) std::swap(i, j);
    static const int table[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    return table[i][j];
  };
  QuadraticForm3<T> out;
  for (int k = 0; k < 6; ++k) {
    auto [i, j] = kSigmaIndex[k];
    out.alpha[k] = q.alpha[idx(perm[i], perm[j])];
  }
  return out;
}

// a x² + b y² − z² over Q(t) (t = x0/x1), plus the data needed to certify it.
struct BrauerPair {
  RatFunc a, b;
  std::array<int, 3> perm{0, 1, 2};  // pivot permutation used
  bool normalized = false;           // a, b replaced by square-class representatives
  RatFunc raw_a, raw_b;              // −d0/d2, −d1/d2
  RatFunc scale_a, scale_b;          // a = raw_a·scale_a², b = raw_b·scale_b²
  DiagonalForm<RatFunc> diag;
  QuadraticForm3<RatFunc> fiber;     // permuted generic fiber
};

QuadraticForm3<RatFunc> generic_fiber(const ConicBundle& cb);
// Throws DegeneratePivot("cannot diagonalize generically") when all six
// permutations fail.
BrauerPair brauer_model(const ConicBundle& cb, bool normalize = true);
BrauerPair brauer_pair(const RatFunc& a, const RatFunc& b, bool normalize = true);
// Checks Sᵀ(−G/d2)S = diag(a, b, −1) with S = basis·diag(scale_a, scale_b, 1).
bool verify_brauer_congruence(const BrauerPair& bp);

// Square-class representative of a univariate rational function r ∈ Q(t)^×:
// c·∏ f_i over the odd-multiplicity monic square-free factors of num·den.
// Returns (rep, s) with rep = r·s².
std::pair<RatFunc, RatFunc> square_class(const RatFunc& r, const std::string& var = "t");

struct MestreModel {
  UPoly T;         // monic degree 8 in u, no u^7 term
  Rat c;           // 1/((c1² − 4c0c2)B)
  Rat shift;       // −A/(8B)
  Rat A, B;
  Rat square_value;          // c2 / ((−4a0c0 + b0²)c2 + a0c1² − b0c1d0 + d0²c0) = 1/B
  std::optional<Rat> xi;     // sqrt(square_value) when it is a square
  UPoly P;                   // −(4/c2)δ(t)
};
// Coefficients read with the (4,0,0) naming a_i, b_i, d_i, c0, c1, c2.
// Throws std::invalid_argument naming a failed precondition.
MestreModel mestre_normal_form(const ConicBundle& cb);
// The u^7 coefficient of R(u) = P(−A/(8B) − u) for fully symbolic coefficients.
RatFunc mestre_u7_symbolic();
bool u_delta_witness(const Rat& a0, const Rat& b0, const Rat& c0, const Rat& c1, const Rat& c2,
                     const Rat& d0, const Rat& xi);
// Random U^δ member: ξ and all coefficients but a0 drawn from [−9, 9], a0 solved
// from the cubic relation (projection from its double point). Returns (bundle, ξ).
std::pair<ConicBundle, Rat> u_delta_member(Rng& rng);

}  // namespace cbq
