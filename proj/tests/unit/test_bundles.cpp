#include <random>

#include "cbq/bundles.hpp"
#include "cbq/quadforms.hpp"
#include "doctest.h"

using namespace cbq;

namespace {
std::string fixture(const char* name) { return std::string(CBQ_FIXTURES_DIR) + "/" + name; }

// independent cofactor expansion along the first row
Rat det_oracle(const Mat3<Rat>& m) {
  Rat s = 0;
  for (int j = 0; j < 3; ++j) {
    int c1 = (j + 1) % 3, c2 = (j + 2) % 3;
    s += m[0][j] * (m[1][c1] * m[2][c2] - m[1][c2] * m[2][c1]);
  }
  return s;
}
}  // namespace

TEST_CASE("validate") {
  auto v = validate_bundle(load_bundle(fixture("example_211.cb")));
  CHECK(v.bundle.twist == 0);
  CHECK(v.bundle.multidegree() == Multidegree{4, 3, 3, 2, 2, 2});
  CHECK_FALSE(v.bundle.rational_by_section);

  auto s = validate_bundle(load_bundle(fixture("section_400.cb")));
  CHECK(s.bundle.rational_by_section);

  try {
    validate_bundle(load_bundle(fixture("bad_degree.cb")));
    FAIL("expected a degree mismatch");
  } catch (const BundleError& e) {
    CHECK(std::string(e.what()).find("degree mismatch: sigma00") != std::string::npos);
  }

  // twisted input: every degree raised by 2 is normalized back
  ConicBundle cb = load_bundle(fixture("example_211.cb"));
  for (auto& s : cb.sigma) s = s * Poly::parse("x0^2", cb.vars());
  auto t = validate_bundle(cb);
  CHECK(t.original_twist == 2);
  CHECK(t.bundle.weights == Weights{3, 2, 2});
  CHECK(t.bundle.twist == 0);
  CHECK(validate_bundle(t.bundle).bundle.weights == t.bundle.weights);

  ConicBundle nh = load_bundle(fixture("example_211.cb"));
  nh.sigma[1] = nh.sigma[1] + Poly::parse("x0", nh.vars());
  CHECK_THROWS_AS(validate_bundle(nh), BundleError);
}

TEST_CASE("enumeration and Alcuin count") {
  auto e = multidegrees_for_discriminant(8);
  REQUIRE(e.size() == 4);
  std::vector<std::pair<Weights, Multidegree>> expect{{{4, 0, 0}, {8, 4, 4, 0, 0, 0}},
                                                      {{3, 1, 0}, {6, 4, 3, 2, 1, 0}},
                                                      {{2, 2, 0}, {4, 4, 2, 4, 2, 0}},
                                                      {{2, 1, 1}, {4, 3, 3, 2, 2, 2}}};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(e[i].weights == expect[i].first);
    CHECK(e[i].degrees == expect[i].second);
  }
  CHECK(multidegrees_for_discriminant(0).size() == 1);
  CHECK(multidegrees_for_discriminant(9).size() == 3);
  CHECK(alcuin_count(8) == 4);
  CHECK(alcuin_count(0) == 1);
  CHECK(alcuin_count(9) == 3);
  for (int n = 0; n <= 40; ++n) {
    // brute force over same-parity triples d00 >= d11 >= d22 >= 0
    std::uint64_t brute = 0;
    for (int x = 0; x <= n; ++x)
      for (int y = 0; y <= x; ++y) {
        int z = n - x - y;
        if (z >= 0 && z <= y && (x - y) % 2 == 0 && (y - z) % 2 == 0) ++brute;
      }
    CHECK(alcuin_count(n) == brute);
    CHECK(multidegrees_for_discriminant(n).size() == brute);
    CHECK(alcuin_closed_form(n) == brute);
  }
}

TEST_CASE("blow-up multidegree") {
  auto b = blowup_multidegree(4, 2, 1, 2);
  CHECK(b.degrees == std::vector<int>{4, 3, 3, 2, 2, 2});
  CHECK(b.last == 2);
  CHECK(b.exceptional == std::pair<int, int>{2, 2});
  CHECK(blowup_multidegree(5, 5, 1, 2).degrees == std::vector<int>{5});
  CHECK(blowup_multidegree(6, 4, 1, 2).str() == "(6,5,5,4,4,4; 2)");
  CHECK_THROWS(blowup_multidegree(4, 5, 1, 2));
}

TEST_CASE("discriminant") {
  ConicBundle cb = load_bundle(fixture("example_211.cb"));
  auto d = discriminant(cb);
  CHECK(d.degree == 8);
  CHECK(UPoly::from_poly(d.delta_affine, "t").degree() == 8);
  ConicBundle diag = cb;
  diag.sigma[1] = diag.sigma[2] = diag.sigma[4] = Poly(cb.vars());
  CHECK(discriminant(diag).delta_homogeneous == cb.sigma[0] * cb.sigma[3] * cb.sigma[5]);
  // independent determinant oracle at sample points
  for (int x = -3; x <= 3; ++x) {
    auto f = fiber_at(cb, x, 1);
    CHECK(det_oracle(f.gram()) == d.delta_affine.eval({{"t", Rat(x)}}));
  }
  CHECK(fiber_at(cb, 0, 1)[0] == 0);
}

TEST_CASE("fiber at a rational root of the discriminant is singular") {
  ConicBundle cb = load_bundle(fixture("eight_points_400.cb"));
  auto d = discriminant(cb);
  for (const Rat& r : rational_roots(d.delta_affine)) CHECK(det_oracle(fiber_at(cb, r, 1).gram()) == 0);
}

TEST_CASE("random bundles: degree-8 square-free discriminant equals det Gram") {
  Rng rng(1);
  for (Weights w : {Weights{2, 1, 1}, Weights{2, 2, 0}, Weights{3, 1, 0}, Weights{4, 0, 0}}) {
    for (int i = 0; i < 10; ++i) {
      ConicBundle cb = random_bundle(w, rng);
      auto d = discriminant(cb);
      CHECK(d.degree == 8);
      auto f = fiber_at(cb, Rat(3, 2), 1);
      CHECK(det_oracle(f.gram()) == d.delta_affine.eval({{"t", Rat(3, 2)}}));
    }
  }
}

TEST_CASE("diagonalize") {
  QuadraticForm3<Rat> unit{{1, 0, 0, 1, 0, 1}};
  auto d = diagonalize(unit);
  CHECK(d.d[0] == 1);
  CHECK(d.d[1] == 4);
  CHECK(d.d[2] == 16);
  CHECK(d.basis[1][1] == 2);
  CHECK(d.basis[2][2] == 4);
  CHECK_THROWS_AS(diagonalize(QuadraticForm3<Rat>{{1, 2, 0, 1, 0, 1}}), DegeneratePivot);
  CHECK_THROWS_AS(diagonalize(QuadraticForm3<Rat>{{0, 2, 0, 1, 0, 1}}), DegeneratePivot);

  VarList v{"p0", "p1", "p2", "p3", "p4", "p5"};
  QuadraticForm3<Poly> g;
  for (int i = 0; i < 6; ++i) g.alpha[i] = Poly::var("p" + std::to_string(i), v);
  auto s = diagonalize(g);  // congruence checked symbolically inside
  CHECK(s.d[1] == Poly::parse("4*p0^2*p3 - p0*p1^2", v));
  CHECK(s.d[2] == Poly::parse("4*p0*p3 - p1^2", v) * g.delta() * Rat(4));
}

TEST_CASE("brauer model: diagonal and eight-point shapes") {
  ConicBundle cb = load_bundle(fixture("eight_points_400.cb"));
  auto bp = brauer_model(cb);
  CHECK(bp.normalized);
  CHECK(bp.a == RatFunc(affine(cb.sigma[0])));
  CHECK(bp.b == RatFunc(Rat(2)));
  CHECK(verify_brauer_congruence(bp));
}

TEST_CASE("mestre") {
  std::map<std::string, Rat> v{{"a0", 1}, {"c0", -1}, {"c2", 1}, {"a8", 3}, {"a3", 1}, {"b2", 2}};
  ConicBundle cb = instantiate({4, 0, 0}, v, Naming::Mestre);
  auto m = mestre_normal_form(cb);
  CHECK(m.B == 4);
  CHECK(m.square_value == Rat(1, 4));
  REQUIRE(m.xi.has_value());
  CHECK(*m.xi == Rat(1, 2));
  CHECK(m.T.degree() == 8);
  CHECK(m.T[7] == 0);
  v["c1"] = 2;
  v["c0"] = 1;
  CHECK_THROWS_AS(mestre_normal_form(instantiate({4, 0, 0}, v, Naming::Mestre)), std::invalid_argument);
  CHECK(mestre_u7_symbolic().is_zero());

  CHECK(u_delta_witness(0, 0, 0, 0, 1, 0, 0));
  CHECK_FALSE(u_delta_witness(1, 0, 0, 0, 1, 0, 1));
  Rng rng(4);
  for (int i = 0; i < 5; ++i) {
    auto [m2, xi] = u_delta_member(rng);
    auto c = coefficient_values(m2, Naming::Mestre);
    CHECK(u_delta_witness(c["a0"], c["b0"], c["c0"], c["c1"], c["c2"], c["d0"], xi));
    auto mm = mestre_normal_form(m2);
    CHECK(mm.B == xi * xi);
    CHECK(mm.xi.has_value());
  }
}
