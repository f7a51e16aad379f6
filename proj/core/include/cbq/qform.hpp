#pragma once

#include <array>

#include "cbq/linalg.hpp"
#include "cbq/rat.hpp"

namespace cbq {

// α0 y0² + α1 y0y1 + α2 y0y2 + α3 y1² + α4 y1y2 + α5 y2² over a commutative
// ring T containing 1/2 (Rat, Poly or RatFunc).
template <class T>
struct QuadraticForm3 {
  std::array<T, 6> alpha;

  const T& operator[](int i) const { return alpha[i]; }

  // Symmetric matrix G with Q(y) = yᵀ G y.
  Mat3<T> gram() const {
    const auto& a = alpha;
    const Rat h(1, 2);
    T b01 = a[1] * h, b02 = a[2] * h, b12 = a[4] * h;
    return {{{a[0], b01, b02}, {b01, a[3], b12}, {b02, b12, a[5]}}};
  }

  // δ_Q = α0α3α5 − ¼α0α4² − ¼α1²α5 + ¼α1α2α4 − ¼α2²α3 = det gram().
  T delta() const {
    const auto& a = alpha;
    const Rat q(1, 4);
    return a[0] * a[3] * a[5] - a[0] * a[4] * a[4] * q - a[1] * a[1] * a[5] * q +
           a[1] * a[2] * a[4] * q - a[2] * a[2] * a[3] * q;
  }
};

}  // namespace cbq
