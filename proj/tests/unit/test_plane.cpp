#include "cbq/families.hpp"
#include "cbq/plane.hpp"
#include "cbq/upoly.hpp"
#include "doctest.h"

using namespace cbq;

namespace {
std::string fixture(const char* name) { return std::string(CBQ_FIXTURES_DIR) + "/" + name; }
Poly P(const std::string& s) { return Poly::parse(s, plane_vars()); }
PlaneCurve curve(const std::string& s) { return PlaneCurve::make(P(s)); }

// Admissible U12 member: the nine relations plus b3 = -c3 and Delta != 0.
ConicBundle u12_admissible(Rng& rng) {
  auto spec = locus("U12");
  for (;;) {
    auto cb = locus_member(spec, rng);
    auto v = coefficient_values(cb);
    // impose b3 = -c3 by re-solving the dependent coefficients
    v["b3"] = -v["c3"];
    for (const auto& [n, e] : spec.solved) v[n] = e.eval(v);
    auto out = instantiate({4, 0, 0}, v);
    if (violated_relations(spec, out).empty() && u12_delta(out) != 0) return out;
  }
}
}  // namespace

TEST_CASE("multiplicity and tangent cone") {
  Poly cusp = P("w1^2*w2 - w0^3");
  CHECK(multiplicity_at(cusp, {0, 0, 1}) == 2);
  CHECK(multiplicity_at(cusp, {1, 1, 1}) == 1);
  CHECK(multiplicity_at(cusp, {1, 0, 0}) == 0);
  CHECK(tangent_cone(cusp, {0, 0, 1}).str() == "w1^2");
}

TEST_CASE("standard Cremona") {
  auto s = standard_cremona();
  // a general line goes to a conic through the three base points
  auto img = cremona_apply(s, curve("w0 + 2*w1 + 3*w2"));
  CHECK(img.degree == 2);
  CHECK(img.poly == P("3*w0*w1 + 2*w0*w2 + w1*w2"));
  // a coordinate line is contracted
  CHECK_THROWS_AS(cremona_apply(s, curve("w0")), Contracted);
  // involution up to scaling on a quartic with double points at the base points
  auto c4 = curve("w0^2*w1^2 + w1^2*w2^2 + w0^2*w2^2 + w0*w1*w2*w0 + 3*w0*w1*w2*w1");
  CHECK(cremona_apply(s, cremona_apply(s, c4)).poly == c4.poly);
  // degree law 2d - sum of multiplicities
  int m = 0;
  for (const std::vector<Rat>& p : {std::vector<Rat>{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) m += multiplicity_at(c4.poly, p);
  CHECK(cremona_apply(s, c4).degree == 2 * c4.degree - m);
}

TEST_CASE("Cremona inverse and base points") {
  for (const auto& m : {u12_phi1(), u12_phi2(), u12_phi3()}) {
    auto inv = cremona_inverse(m);
    Point3 p{3, -2, 5};
    auto q = apply_map(inv, apply_map(m, p));
    // proportional to p
    CHECK(q[0] * p[1] == q[1] * p[0]);
    CHECK(q[0] * p[2] == q[2] * p[0]);
  }
  CHECK(conics_through({Point3{0, 1, 0}, Point3{0, 0, 1}, Point3{1, 0, -1}}).size() == 3);
  for (const auto& p : {Point3{0, 1, 0}, Point3{0, 0, 1}, Point3{1, 0, -1}}) {
    auto v = apply_map(u12_phi1(), p);
    CHECK((v[0] == 0 && v[1] == 0 && v[2] == 0));
  }
  for (const auto& p : {Point3{2, 1, 1}, Point3{0, 1, 0}, Point3{1, 0, 0}}) {
    auto v = apply_map(u12_phi2(), p);
    CHECK((v[0] == 0 && v[1] == 0 && v[2] == 0));
  }
  CremonaMap degenerate{{P("w0^2"), P("w0*w1"), P("w0*w2")}, "not birational"};
  CHECK_THROWS_AS(cremona_inverse(degenerate), std::domain_error);
}

TEST_CASE("Hilbert symbols") {
  CHECK(hilbert_symbol(1, 1, 2) == 1);
  CHECK(hilbert_symbol(-1, -1, 2) == -1);
  CHECK(hilbert_symbol(-1, -1, 0) == -1);
  CHECK(hilbert_symbol(-1, -1, 3) == 1);
  CHECK(hilbert_symbol(2, 3, 3) == -1);
  CHECK(hilbert_symbol(2, 3, 2) == -1);
  CHECK(hilbert_symbol(5, 7, 5) == legendre(7, 5));
  CHECK(hilbert_symbol(frac(3, 4), 7, 7) == hilbert_symbol(3, 7, 7));
  // product formula
  Rng rng(5);
  std::uniform_int_distribution<int> d(-200, 200);
  for (int i = 0; i < 200; ++i) {
    Rat a(d(rng)), b(d(rng));
    if (a == 0 || b == 0) continue;
    int prod = 1;
    for (const auto& v : relevant_places(a, b)) prod *= hilbert_symbol(a, b, v);
    CHECK(prod == 1);
  }
}

TEST_CASE("conic points") {
  auto check_point = [](const ConicQ& c) {
    auto r = conic_has_point(c);
    REQUIRE(r.point);
    Point3 p{Rat((*r.point)[0]), Rat((*r.point)[1]), Rat((*r.point)[2])};
    CHECK(c.eval(p) == 0);
    return r;
  };
  auto r = check_point(ConicQ::parse("1,-2,3,2,1,1"));
  CHECK(r.status == ConicPoint::Status::Point);
  CHECK(*r.point == std::array<Int, 3>{1, 0, -1});
  check_point(ConicQ::parse("1,0,1,0,0,-1"));
  // no small point but solvable: x^2 + y^2 = 1009 z^2 style
  r = check_point(ConicQ::parse("1,0,1,0,0,-1009"));
  CHECK(r.status == ConicPoint::Status::Point);
  r = conic_has_point(ConicQ::parse("1,0,1,0,0,1"));
  CHECK(r.status == ConicPoint::Status::Obstructed);
  CHECK(std::find(r.obstructed_at.begin(), r.obstructed_at.end(), Int(0)) != r.obstructed_at.end());
  r = conic_has_point(ConicQ::parse("1,0,1,0,0,-3"));
  CHECK(r.status == ConicPoint::Status::Obstructed);
  r = conic_has_point(ConicQ::parse("1,0,-1,0,0,0"));
  CHECK(r.status == ConicPoint::Status::Degenerate);
  CHECK(*r.point == std::array<Int, 3>{0, 0, 1});
  check_point(ConicQ::parse("0,1,0,1,1,0"));
  CHECK_THROWS(ConicQ::parse("1,2,3"));
  CHECK_THROWS(ConicQ::parse("0,0,0,0,0,0"));
}

TEST_CASE("scroll images") {
  auto cb = load_bundle(fixture("example_211.cb"));
  auto x4 = scroll_image(cb);
  CHECK(x4.degree == 4);
  REQUIRE(x4.multiple_lines.size() == 1);
  CHECK(x4.multiple_lines[0].multiplicity == 2);
  Rng rng(3);
  auto b220 = random_bundle({2, 2, 0}, rng);
  auto x6 = scroll_image(b220);
  CHECK(x6.degree == 6);
  CHECK(x6.multiple_lines[0].multiplicity == 4);
  CHECK(x6.multiple_lines[1].multiplicity == 2);
  CHECK(tangent_cone(x6.poly, {0, 0, 1, 0}).total_degree() == 4);
  auto b400 = random_bundle({4, 0, 0}, rng);
  auto x8 = scroll_image(b400);
  CHECK(x8.degree == 8);
  CHECK(x8.multiple_lines[0].multiplicity == 6);
  CHECK_THROWS_AS(scroll_image(random_bundle({3, 1, 0}, rng)), BundleError);
}

TEST_CASE("bitangent plane section of the worked example") {
  auto t = tangent_2section_433222(load_bundle(fixture("example_211.cb")));
  CHECK(t.tangent_plane == Poly::parse("z2 + z3", space_vars()));
  REQUIRE(t.double_points.size() == 3);
  CHECK(t.double_points[2] == std::vector<Rat>{0, 0, 1, -1});
  CHECK(t.multiplicities == std::vector<int>{2, 2, 2});
  CHECK(t.C4.degree == 4);
  // independently: the image of C4 must contain [1:0:-1] and be smooth
  CHECK(t.image.eval({1, 0, -1}) == 0);
  CHECK(t.image.discriminant() != 0);
  CHECK(t.image.str() == "1,-2,3,2,1,1");
  // hypotheses
  auto v = coefficient_values(load_bundle(fixture("example_211.cb")));
  v["a1"] = 1;
  CHECK_THROWS_AS(tangent_2section_433222(instantiate({2, 1, 1}, v)), BundleError);
}

TEST_CASE("U12 Cremona chain") {
  Rng rng(11);
  for (int i = 0; i < 3; ++i) {
    auto cb = u12_admissible(rng);
    auto ch = chain_U12(cb);
    CHECK(ch.degrees == std::array<int, 4>{8, 6, 4, 2});
    CHECK(ch.multiplicities == std::array<int, 4>{2, 2, 2, 6});
    CHECK(ch.conic_matches_prediction);
    CHECK(ch.tangent_cone_q.total_degree() == 6);
    CHECK(ch.tangent_cone_q.nterms() == 1);
    // the reference C1 coefficients
    auto v = coefficient_values(cb);
    Rat D = ch.delta;
    Rat h = frac(1, 2);
    CHECK(ch.C1.poly.coeff({2, 3, 1}) == (-2 * v["a4"] + v["a5"] - 4 * v["a6"] - h * v["b2"] - h * v["c2"]) / D);
    CHECK(ch.C1.poly.coeff({0, 0, 6}) == (v["d0"] + v["g0"] + v["h0"]) / D);
    CHECK(ch.C2.poly.coeff({3, 0, 1}) == -4);
    CHECK(ch.C2.poly.coeff({0, 3, 1}) == -2 * v["a5"] / D);
  }
  // off the locus
  auto cb = u12_admissible(rng);
  auto v = coefficient_values(cb);
  v["a7"] += 1;
  CHECK_THROWS_AS(chain_U12(instantiate({4, 0, 0}, v)), BundleError);
}
