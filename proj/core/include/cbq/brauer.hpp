#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cbq/quadforms.hpp"
#include "cbq/ratfunc.hpp"
#include "cbq/upoly.hpp"

namespace cbq {

// A closed point of P¹: a monic square-free f(t), or the point at infinity.
struct Place {
  enum class Kind { Finite, Infinity } kind = Kind::Finite;
  UPoly f;  // monic; unused at infinity
  enum class Irreducibility { Linear, Certified, Assumed } irreducibility = Irreducibility::Linear;
  std::optional<PrimeWitness> irreducibility_witness;

  static Place finite(const UPoly& f, std::uint64_t prime_bound = 10000);
  static Place infinity();
  bool is_infinity() const { return kind == Kind::Infinity; }
  int degree() const { return is_infinity() ? 1 : f.degree(); }
  std::string str() const;  // "t - 1", "t^2 + 1", "inf"
  bool operator==(const Place& o) const;
};

int valuation(const UPoly& p, const UPoly& f);  // multiplicity of f in p
int valuation(const RatFunc& r, const Place& place);

// r(1/s) written again in the variable t.
RatFunc at_infinity(const RatFunc& r);

struct ResidueClass {
  Place place;
  UPoly value;  // reduced modulo f (a constant for linear places and infinity)
  int va = 0, vb = 0;
  bool trivial = false;  // proved to be a square (always exact for rational values)
  bool is_rational() const { return value.degree() <= 0; }
  Rat rational_value() const { return value[0]; }
  std::string value_str() const;
};

// ∂_P(a, b) = (−1)^{v(a)v(b)} a^{v(b)} / b^{v(a)} reduced in the residue field.
ResidueClass residue2(const RatFunc& a, const RatFunc& b, const Place& place);
ResidueClass residue2(const BrauerPair& pair, const Place& place);

struct NonSquareWitness {
  PrimeWitness prime;  // p and a root r of f mod p (r = the rational value mod p when linear)
  bool exact = false;  // rational value decided exactly
};
// One-sided: a witness proves the value is not a square in the residue field.
std::optional<NonSquareWitness> nonsquare_witness(const ResidueClass& rc, std::uint64_t prime_bound = 10000);
// Re-checks a witness from scratch (Euler criterion, non-degeneracy of p).
bool verify_witness(const ResidueClass& rc, const NonSquareWitness& w);

// Places supporting div(a) ∪ div(b), pairwise coprime, linear factors split off,
// in canonical order (linear by root, then by degree and text), followed by ∞.
std::vector<Place> support_places(const RatFunc& a, const RatFunc& b, std::uint64_t prime_bound = 10000);
std::vector<ResidueClass> residues_all(const RatFunc& a, const RatFunc& b, std::uint64_t prime_bound = 10000);
std::vector<ResidueClass> residues_all(const BrauerPair& pair, std::uint64_t prime_bound = 10000);

struct NoSectionCertificate {
  ResidueClass residue;
  NonSquareWitness witness;
  std::string line() const;  // place=<poly|inf> residue=<...> prime=<p> root=<r>
};

struct CertificateSearch {
  std::optional<NoSectionCertificate> certificate;
  std::vector<ResidueClass> residues;
  BrauerPair model;
};
// Throws BundleError for bundles flagged rational-by-section.
CertificateSearch no_section_certificate(const ConicBundle& cb, std::uint64_t prime_bound = 10000);
CertificateSearch no_section_certificate(const BrauerPair& bp, std::uint64_t prime_bound = 10000);

// Order of vanishing in `var` at 0 of a (multivariate) rational function.
int order_at_zero(const RatFunc& r, const std::string& var = "t");

}  // namespace cbq
