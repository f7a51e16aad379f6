#include "cbq/ratfunc.hpp"

namespace cbq {

RatFunc::RatFunc(Poly num, Poly den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = Poly(merge(num.vars(), den.vars()));
    den_ = Poly::constant(1, num_.vars());
    return;
  }
  if (!den.is_constant()) {
    Poly g = gcd(num, den);
    if (!g.is_constant()) {
      num = *exact_div(num, g);
      den = *exact_div(den, g);
    }
  }
  Rat c = den.content();
  if (den.lc() < 0) c = -c;
  Rat inv = 1 / c;
  num_ = num * inv;
  den_ = den * inv;
}

Rat RatFunc::constant_value() const {
  if (!is_constant()) throw std::logic_error("not a constant: " + str());
  return num_.constant_term() / den_.constant_term();
}

Poly RatFunc::as_poly() const {
  if (!is_polynomial()) throw std::logic_error("not a polynomial: " + str());
  return num_ * (1 / den_.constant_term());
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.as_poly() + b.as_poly());
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.as_poly() * b.as_poly());
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return RatFunc(den_, num_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  return RatFunc(num_.pow(n), den_.pow(n), true);
}

bool RatFunc::operator==(const RatFunc& o) const { return num_ * o.den_ == o.num_ * den_; }

std::string RatFunc::str() const {
  if (is_polynomial()) return as_poly().str();
  auto wrap = [](const Poly& p) {
    std::string s = p.str();
    return p.nterms() > 1 ? "(" + s + ")" : s;
  };
  return wrap(num_) + "/" + wrap(den_);
}

RatFunc substitute(const Poly& p, const std::map<std::string, RatFunc>& assignment) {
  // Common denominator prod den_i^{deg_i}, so only one gcd at the end.
  std::vector<std::string> used = p.used_vars();
  std::map<std::string, Poly> nums;
  Poly den = Poly::constant(1);
  struct Slot {
    std::size_t idx;
    int deg;
    std::vector<Poly> num_pow, den_pow;
  };
  std::vector<Slot> slots;
  for (const auto& v : used) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw std::invalid_argument("substitute: no value for " + v);
    Slot s{*p.vars().index(v), p.degree(v), {}, {}};
    s.num_pow.push_back(Poly::constant(1));
    s.den_pow.push_back(Poly::constant(1));
    for (int k = 1; k <= s.deg; ++k) {
      s.num_pow.push_back(s.num_pow.back() * it->second.num());
      s.den_pow.push_back(s.den_pow.back() * it->second.den());
    }
    den = den * s.den_pow.back();
    slots.push_back(std::move(s));
  }
  Poly num;
  for (const auto& [e, c] : p.terms()) {
    Poly t = Poly::constant(c);
    for (const auto& s : slots) {
      int k = e[s.idx];
      t = t * s.num_pow[k] * s.den_pow[s.deg - k];
    }
    num += t;
  }
  return RatFunc(num, den);
}

}  // namespace cbq
