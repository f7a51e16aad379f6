#include "cbq/brauer.hpp"
#include "doctest.h"

using namespace cbq;

namespace {
std::string fixture(const char* name) { return std::string(CBQ_FIXTURES_DIR) + "/" + name; }
const VarList T{"t"};
RatFunc R(const char* num, const char* den = "1") { return RatFunc(Poly::parse(num, T), Poly::parse(den, T)); }
UPoly U(const char* s) { return UPoly::from_poly(Poly::parse(s, T), "t"); }
}  // namespace

TEST_CASE("valuations") {
  CHECK(valuation(U("t^3 - t^2"), U("t")) == 2);
  CHECK(valuation(R("t^2 + 1", "t^7 + 3*t^5 + 3*t^3 + t"), Place::finite(U("t^2+1"))) == -2);
  CHECK(valuation(R("t^2 + 1", "t^5 - 3"), Place::infinity()) == 3);
  CHECK(at_infinity(R("t^2 + 1", "t - 3")) == R("1 + t^2", "t - 3*t^2"));
}

TEST_CASE("places") {
  auto ps = support_places(R("t^3 - t^2 - 2*t + 2", "t^3"), R("t^4 + 10*t^3 + 23*t^2 - 20*t - 50"));
  REQUIRE(ps.size() == 5);
  CHECK(ps[0].str() == "t + 5");
  CHECK(ps[1].str() == "t");
  CHECK(ps[2].str() == "t - 1");
  CHECK(ps[3].str() == "t^2 - 2");
  CHECK(ps[3].irreducibility == Place::Irreducibility::Certified);
  CHECK(ps[4].is_infinity());
}

TEST_CASE("tame symbol at rational places") {
  // (t, 3) at t = 0: residue 3^{-1}... value = (-1)^0 * t'^0 * 3^{-1}
  auto rc = residue2(R("t"), R("3"), Place::finite(U("t")));
  CHECK(rc.va == 1);
  CHECK(rc.vb == 0);
  CHECK(rc.rational_value() == Rat(1, 3));
  CHECK_FALSE(rc.trivial);
  // (t, t) at 0: (-1)^1 * 1 = -1
  CHECK(residue2(R("t"), R("t"), Place::finite(U("t"))).rational_value() == -1);
  // (t-1, t+1) at 1: value = 1/(b(1))^1 = 1/2
  CHECK(residue2(R("t-1"), R("t+1"), Place::finite(U("t-1"))).rational_value() == Rat(1, 2));
  // skew symmetry: ∂(b, a) = ∂(a, b)^{-1}
  auto ab = residue2(R("t^3 - 3*t^2", "t+1"), R("5*t^3", "2"), Place::finite(U("t")));
  auto ba = residue2(R("5*t^3", "2"), R("t^3 - 3*t^2", "t+1"), Place::finite(U("t")));
  CHECK(ab.rational_value() * ba.rational_value() == 1);
}

TEST_CASE("residue at a quadratic place and witness") {
  // (t^2 - 2, t): value t^{-1} mod t^2 - 2 = t/2; p = 7 has 3^2 = 2, 3/2 = 5 is a non-residue mod 7
  auto rc = residue2(R("t^2 - 2"), R("t"), Place::finite(U("t^2 - 2")));
  CHECK(rc.value == U("1/2*t"));
  auto w = nonsquare_witness(rc);
  REQUIRE(w);
  CHECK_FALSE(w->exact);
  CHECK(verify_witness(rc, *w));
  // a wrong root is rejected
  auto bad = *w;
  bad.prime.root = (*bad.prime.root + 1) % bad.prime.p;
  CHECK_FALSE(verify_witness(rc, bad));
  // t is a square times 2 in Q(√2)? t/2 mod (t^2 - 2) = 1/√2 which is not a square
  // but the value 2 t^2 = 4 is: no witness can exist
  auto sq = residue2(R("t^2 - 2"), R("1/4"), Place::finite(U("t^2 - 2")));
  CHECK(sq.trivial);
  CHECK_FALSE(nonsquare_witness(sq));
}

TEST_CASE("certificate for the (4,0,0) model with eight rational points") {
  auto s = no_section_certificate(load_bundle(fixture("eight_points_400.cb")));
  REQUIRE(s.certificate);
  CHECK(s.certificate->line() == "place=t residue=1/2 prime=3 root=0");
  CHECK(verify_witness(s.certificate->residue, s.certificate->witness));
  REQUIRE(s.residues.size() == 9);
  CHECK(s.residues.back().place.is_infinity());
  CHECK(s.residues.back().rational_value() == 256);
  CHECK(s.residues.back().trivial);
  for (std::size_t i = 0; i + 1 < s.residues.size(); ++i) CHECK(s.residues[i].rational_value() == Rat(1, 2));
}

TEST_CASE("split bundle and section bundle") {
  auto s = no_section_certificate(load_bundle(fixture("split_400.cb")));
  CHECK_FALSE(s.certificate);
  for (const auto& rc : s.residues) CHECK(rc.value == UPoly::constant(1));
  CHECK_THROWS_AS(no_section_certificate(load_bundle(fixture("section_400.cb"))), BundleError);
}

TEST_CASE("order at zero") {
  CHECK(order_at_zero(R("t^5 + t^7", "3 + t")) == 5);
  CHECK(order_at_zero(R("1 + t", "t^4")) == -4);
}

TEST_CASE("split pairs have trivial residues everywhere") {
  // the unit parts are squares even where their reductions mod f are not square polynomials
  RatFunc a = R("t^2 + t + 4", "t - 2");
  RatFunc s = R("-6*t^2 - t - 1", "5*t + 6");
  for (const auto& rc : residues_all(a, s * s)) CHECK(rc.trivial);
}
