#pragma once

#include <map>
#include <string>

#include "cbq/poly.hpp"

namespace cbq {

// Reduced quotient of polynomials; the denominator is primitive with a
// positive leading coefficient.
class RatFunc {
 public:
  RatFunc() : num_(), den_(Poly::constant(1)) {}
  RatFunc(const Rat& c) : num_(Poly::constant(c)), den_(Poly::constant(1)) {}  // NOLINT
  RatFunc(Poly p) : num_(std::move(p)), den_(Poly::constant(1, num_.vars())) {}  // NOLINT
  RatFunc(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rat constant_value() const;  // requires is_constant()
  Poly as_poly() const;        // requires is_polynomial()

  RatFunc operator-() const { return RatFunc(-num_, den_, true); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc pow(int n) const;
  RatFunc inverse() const;

  bool operator==(const RatFunc& o) const;
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  std::string str() const;

 private:
  RatFunc(Poly num, Poly den, bool /*already reduced*/) : num_(std::move(num)), den_(std::move(den)) {}
  Poly num_, den_;
};

// Exact value of p with every used variable replaced by a rational function.
RatFunc substitute(const Poly& p, const std::map<std::string, RatFunc>& assignment);

}  // namespace cbq
