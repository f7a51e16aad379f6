#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cbq/poly.hpp"
#include "cbq/rat.hpp"

namespace cbq {

// Dense univariate polynomial over Q, coefficient i is the t^i coefficient.
// Always trimmed: no trailing zeros; the zero polynomial is empty.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }
  static UPoly constant(const Rat& c) { return UPoly(std::vector<Rat>{c}); }
  static UPoly x() { return UPoly(std::vector<Rat>{0, 1}); }

  // `p` must only involve `var`.
  static UPoly from_poly(const Poly& p, std::string_view var);
  Poly to_poly(const std::string& var, const VarList& vars) const;
  Poly to_poly(const std::string& var) const { return to_poly(var, VarList{var}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  Rat lc() const { return c_.empty() ? Rat(0) : c_.back(); }

  Rat eval(const Rat& x) const;
  UPoly derivative() const;
  UPoly monic() const;
  // Integer coefficients with gcd 1 and positive leading coefficient.
  UPoly primitive() const;
  std::vector<Int> integer_coeffs() const;  // of primitive()

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const Rat& s);
  bool operator==(const UPoly& o) const { return c_ == o.c_; }
  bool operator!=(const UPoly& o) const { return c_ != o.c_; }

  std::string str(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly gcd(const UPoly& a, const UPoly& b);  // monic; gcd(0,0) = 0

// Yun's algorithm. Factors monic, square-free, pairwise coprime; the
// constant factor is dropped.
std::vector<std::pair<UPoly, int>> squarefree_decompose(const UPoly& f);
std::vector<std::pair<Poly, int>> squarefree_decompose(const Poly& f);

// Rational roots repeated according to multiplicity, ascending.
std::vector<Rat> rational_roots(const UPoly& f);
std::vector<Rat> rational_roots(const Poly& f);

// ---------------------------------------------------------------- primes

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

struct PrimeWitness {
  std::uint64_t p = 0;
  std::optional<std::uint64_t> root;
  std::string note;
};

// Residue of a rational mod p; nullopt when p divides the denominator.
std::optional<std::uint64_t> mod_p(const Rat& q, std::uint64_t p);
// Coefficients of f mod p (low to high); nullopt when p divides a denominator
// or the leading coefficient.
std::optional<std::vector<std::uint64_t>> reduce_mod_p(const UPoly& f, std::uint64_t p);
std::vector<std::uint64_t> roots_mod_p(const std::vector<std::uint64_t>& f, std::uint64_t p);
// Legendre symbol (a|p) for odd prime p: 1, -1 or 0.
int legendre(std::uint64_t a, std::uint64_t p);
int legendre(const Int& a, std::uint64_t p);

// Distinct-degree test of f mod p for irreducibility (f monic mod p).
bool irreducible_mod_p(const std::vector<std::uint64_t>& f, std::uint64_t p);

// A prime p <= bound with f irreducible mod p, proving f irreducible over Q.
std::optional<PrimeWitness> modp_irreducible_witness(const UPoly& f,
                                                     std::uint64_t bound = 10000);

}  // namespace cbq
