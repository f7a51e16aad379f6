#include "cbq/families.hpp"
#include "doctest.h"

using namespace cbq;

namespace {
AutParams random_aut(const Weights& w, Rng& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  for (;;) {
    auto a = aut_identity(w);
    for (const auto& n : aut_chart_coordinates(w)) a.entries[n] += d(rng);
    try {
      pullback(a, random_bundle(w, rng));
      return a;
    } catch (const BundleError&) {
      // singular linear part; draw again
    }
  }
}

bool same(const Poly& p, const std::string& s) { return (p - Poly::parse(s, p.vars())).trimmed().is_zero(); }

std::map<std::string, Poly> const_images(const AutParams& a) {
  std::map<std::string, Poly> e;
  for (const auto& [k, v] : a.entries) e[k] = Poly::constant(v);
  return aut_images(a.type, e);
}
}  // namespace

TEST_CASE("automorphism charts") {
  CHECK(aut_entry_names({2, 1, 1}).size() == 13);
  CHECK(aut_entry_names({2, 2, 0}).size() == 15);
  CHECK(aut_entry_names({4, 0, 0}).size() == 19);
  CHECK(aut_chart_coordinates({2, 1, 1}).size() == 11);
  CHECK(aut_chart_coordinates({2, 2, 0}).size() == 13);
  CHECK(aut_chart_coordinates({4, 0, 0}).size() == 17);
  CHECK_THROWS_AS(aut_entry_names({3, 1, 0}), BundleError);
}

TEST_CASE("pullback") {
  Rng rng(1);
  for (Weights w : {Weights{2, 1, 1}, Weights{2, 2, 0}, Weights{4, 0, 0}}) {
    auto cb = random_bundle(w, rng);
    auto id = pullback(aut_identity(w), cb);
    for (int k = 0; k < 6; ++k) CHECK(id.sigma[k] == cb.sigma[k]);

    // x-swap reverses every coefficient list
    AutParams sw = aut_identity(w);
    sw.entries["alpha00"] = 0;
    sw.entries["alpha11"] = 0;
    sw.entries["alpha01"] = 1;
    sw.entries["alpha10"] = 1;
    auto s = pullback(sw, cb);
    auto v0 = coefficient_values(cb), v1 = coefficient_values(s);
    auto md = cb.multidegree();
    for (int k = 0; k < 6; ++k) {
      auto names = coefficient_names(w, k);
      for (int i = 0; i <= md[k]; ++i) CHECK(v1[names[i]] == v0[names[md[k] - i]]);
    }

    // multidegree preserved, and the action composes
    auto g1 = random_aut(w, rng), g2 = random_aut(w, rng);
    auto lhs = pullback(g1, pullback(g2, cb));
    CHECK(lhs.multidegree() == cb.multidegree());
    auto i1 = const_images(g1), i2 = const_images(g2);
    std::map<std::string, Poly> composite;
    for (const auto& [k, p] : i2) composite[k] = p.compose(i1);
    auto rhs = pullback_general(cb, composite);
    for (int k = 0; k < 6; ++k) CHECK((lhs.sigma[k] - rhs[k]).trimmed().is_zero());
  }
}

TEST_CASE("pullback: y1 -> y1 + delta11 x0 y0 on (2,1,1)") {
  Rng rng(2);
  auto cb = random_bundle({2, 1, 1}, rng);
  auto a = aut_identity({2, 1, 1});
  a.entries["delta11"] = 3;
  auto p = pullback(a, cb);
  Poly x0 = Poly::var("x0", cb.vars());
  Poly d = x0 * Rat(3);
  // substitution by hand
  CHECK(p.sigma[0] == cb.sigma[0] + d * cb.sigma[1] + d * d * cb.sigma[3]);
  CHECK(p.sigma[1] == cb.sigma[1] + Rat(2) * d * cb.sigma[3]);
  CHECK(p.sigma[2] == cb.sigma[2] + d * cb.sigma[4]);
  CHECK(p.sigma[3] == cb.sigma[3]);
  CHECK(p.sigma[4] == cb.sigma[4]);
  CHECK(p.sigma[5] == cb.sigma[5]);
}

TEST_CASE("pullback errors") {
  Rng rng(3);
  auto cb = random_bundle({2, 1, 1}, rng);
  CHECK_THROWS_AS(pullback(aut_identity({4, 0, 0}), cb), BundleError);
  auto a = aut_identity({2, 1, 1});
  a.entries["alpha00"] = 0;
  CHECK_THROWS_AS(pullback(a, cb), BundleError);
  a = aut_identity({2, 1, 1});
  a.entries["gamma11"] = 0;
  CHECK_THROWS_AS(pullback(a, cb), BundleError);
}

TEST_CASE("locus members") {
  Rng rng(4);
  for (const auto& n : locus_names()) {
    auto spec = locus(n);
    auto cb = locus_member(spec, rng);
    CHECK(violated_relations(spec, cb).empty());
  }
  auto cb = locus_member(locus("U_433222"), rng);
  auto v = coefficient_values(cb);
  for (const char* c : {"a0", "a1", "a3", "a4"}) CHECK(v[c] == 0);
  CHECK(v["b0"] * v["c3"] - v["c0"] * v["b3"] == 0);
  CHECK(v["b0"] != 0);
  v = coefficient_values(locus_member(locus("U12"), rng));
  CHECK(v["b4"] == -v["c4"]);
  CHECK(v["a7"] == 0);
  CHECK(v["a8"] == 0);
  auto c2 = locus_member(locus("U_c2zero"), rng);
  CHECK(c2.sigma[5].is_zero());
  CHECK(c2.rational_by_section);
  // off-locus detection
  v = coefficient_values(locus_member(locus("U_442420"), rng));
  v["c2"] = 1;
  auto bad = violated_relations(locus("U_442420"), instantiate({2, 2, 0}, v));
  REQUIRE(bad.size() == 1);
  CHECK(bad[0] == "c2 = 0");
}

TEST_CASE("dominance ranks") {
  for (const auto& [n, w] : std::vector<std::pair<std::string, Weights>>{
           {"U_433222", {2, 1, 1}}, {"U_442420", {2, 2, 0}}, {"U_c2zero", {4, 0, 0}}, {"U12", {4, 0, 0}}}) {
    Rng rng(7);
    auto spec = locus(n);
    auto cb = locus_member(spec, rng);
    auto r = jacobian_rank_at_identity(spec, cb, 7);
    CHECK(r.rank == 21);
    CHECK(r.expected == 21);
    CHECK(r.group_columns == static_cast<int>(aut_chart_coordinates(w).size()));
    if (n == "U_c2zero") CHECK(r.normalizer != 21);
    auto s = jacobian_rank_at_identity(spec, cb, 7, GroupRestriction::ScalingOnly);
    CHECK(s.rank < 21);
    CHECK(s.rank <= s.locus_columns);
  }
  Rng rng(8);
  auto off = random_bundle({2, 2, 0}, rng);
  CHECK_THROWS_AS(jacobian_rank_at_identity(locus("U_442420"), off), BundleError);
}

TEST_CASE("deformation table") {
  auto t = deformation_table({2, 1, 1});
  CHECK(t.h1_end == 0);
  CHECK(t.h0_normal == 21);
  CHECK(t.h1_normal == 0);
  CHECK(deformation_table({2, 2, 0}).h1_end == 2);
  CHECK(deformation_table({3, 1, 0}).h1_end == 3);
  CHECK(deformation_table({4, 0, 0}).h1_end == 6);
  for (Weights w : {Weights{2, 2, 0}, Weights{3, 1, 0}, Weights{4, 0, 0}}) {
    CHECK(deformation_table(w).h0_normal == 21);
    CHECK(deformation_table(w).h1_normal == 0);
  }
  t = deformation_table({0, 0, 0});
  CHECK(t.h1_end == 0);
  CHECK(t.h0_normal == 5);
  for (int a = 0; a <= 6; ++a)
    for (int c = 0; c <= a; ++c) CHECK((deformation_table({a, c, 0}).h1_end == 0) == (a <= 1));
}

TEST_CASE("degenerations") {
  for (const auto& p : degeneration_pairs()) {
    auto r = verify_degeneration(p);
    for (const auto& c : r.checks) {
      INFO(p << ": " << c.name << " " << c.detail);
      CHECK(c.ok);
    }
  }
  auto r = verify_degeneration("211-220");
  CHECK(same(r.special_sigma.at("s02"), "c3*x1^2"));
  CHECK(r.special_multidegree == Multidegree{4, 4, 2, 4, 2, 0});
  CHECK(same(verify_degeneration("220->310").special_sigma.at("s12"), "g1*x0 + g2*x1"));
  CHECK(same(verify_degeneration("310-400").special_sigma.at("s11"), "d2"));
  CHECK_THROWS(verify_degeneration("400-211"));
}

TEST_CASE("(3,1,0) hypotheses") {
  std::map<std::string, Rat> v{{"a0", 1}, {"h0", 2}, {"c0", 1}, {"d0", 1}, {"g0", 0}, {"g1", 1}, {"d2", 3}};
  auto h = theorem_310_400_hypotheses(instantiate({3, 1, 0}, v));
  CHECK(h.value == 1);
  CHECK(h.s_condition);
  CHECK(h.holds());
  v["g0"] = 100;
  CHECK_FALSE(theorem_310_400_hypotheses(instantiate({3, 1, 0}, v)).holds());
  v = {{"a0", 1}, {"h0", 2}, {"c0", 1}};  // s11 = s12 = 0
  h = theorem_310_400_hypotheses(instantiate({3, 1, 0}, v));
  CHECK_FALSE(h.s_condition);
}
