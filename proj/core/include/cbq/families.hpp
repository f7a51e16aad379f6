#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cbq/bundles.hpp"
#include "cbq/poly.hpp"

namespace cbq {

// ---------------------------------------------------------------- automorphisms

// Entries of an automorphism of T_w, w one of (2,1,1), (2,2,0), (4,0,0):
//   (2,1,1): alpha00..alpha11, beta00, gamma11..gamma22, delta11, delta12, delta21, delta22
//   (2,2,0): alpha.., beta00..beta11, gamma22, delta11..delta13, theta11..theta13
//   (4,0,0): alpha.., beta00, gamma11..gamma22, delta11..delta15, delta21..delta25
// Missing entries are 0.
struct AutParams {
  Weights type;
  std::map<std::string, Rat> entries;
  Rat at(const std::string& name) const;
};

std::vector<std::string> aut_entry_names(const Weights& w);
// Entries minus the fixed chart coordinates alpha00 = beta00 = 1.
std::vector<std::string> aut_chart_coordinates(const Weights& w);
std::string aut_chart_description(const Weights& w);
AutParams aut_identity(const Weights& w);

// Images of x0, x1, y0, y1, y2, with entries given as polynomials (possibly in
// extra variables, e.g. an infinitesimal).
std::map<std::string, Poly> aut_images(const Weights& w, const std::map<std::string, Poly>& entries);

// σ_ij of an equation Σ σ_ij y_i y_j given over x0, x1, y0, y1, y2 and other variables.
std::array<Poly, 6> split_equation(const Poly& eq);

// φ*Q: substitute the automorphism into the equation and regroup.
// Throws BundleError on a type mismatch or a non-invertible linear part.
ConicBundle pullback(const AutParams& aut, const ConicBundle& cb);
// Same with arbitrary substitution images for x0, x1, y0, y1, y2.
std::array<Poly, 6> pullback_general(const ConicBundle& cb, const std::map<std::string, Poly>& images);

// ---------------------------------------------------------------- loci

struct LocusSpec {
  std::string name;
  Weights type;
  // Each relation is a polynomial in standard coefficient names that must vanish.
  std::vector<Poly> relations;
  std::vector<std::string> relation_text;
  // Dependent coefficients in solving order: name = expression in earlier names.
  std::vector<std::pair<std::string, Poly>> solved;
  std::map<std::string, Poly> solved_den;  // optional denominators of `solved`
  // Coefficients that must be nonzero for `solved` to make sense.
  std::vector<std::string> nonzero;
  bool sigma22_zero = false;  // rational by a section
  std::string note;
};

// "U_433222", "U_442420", "U_c2zero", "U12", "U_delta".
LocusSpec locus(const std::string& name);
std::vector<std::string> locus_names();
// Text of every relation that fails at cb (empty when cb lies on the locus).
std::vector<std::string> violated_relations(const LocusSpec& spec, const ConicBundle& cb);
// Random integer member; σ_ii ≡ 0 loci only require a square-free degree-8 discriminant.
ConicBundle locus_member(const LocusSpec& spec, Rng& rng, int attempts = 1000);

// ---------------------------------------------------------------- dominance

enum class GroupRestriction { Full, ScalingOnly };

struct DominanceReport {
  std::string locus;
  Weights type;
  std::uint64_t seed = 0;
  std::string chart;
  int group_columns = 0;
  int locus_columns = 0;
  int normalizer = 21;  // index k of the coefficient used for f_i / f_k
  std::string normalizer_note;
  int rank = 0;
  int expected = 21;
};

// Rank of the differential of (φ, Q) ↦ [φ*Q] at (id, cb), in the affine
// coordinates f_i / f_k.
DominanceReport jacobian_rank_at_identity(const LocusSpec& spec, const ConicBundle& cb, std::uint64_t seed = 0,
                                          GroupRestriction group = GroupRestriction::Full);

// ---------------------------------------------------------------- deformations

struct DeformationTable {
  Weights weights;
  int h1_end = 0;
  int h0_normal = 0;
  int h1_normal = 0;
};
DeformationTable deformation_table(const Weights& w);

// ---------------------------------------------------------------- degenerations

struct DegenerationCheck {
  std::string name;
  bool ok = false;
  std::string detail;  // first offending coefficient or identity on failure
};

struct DegenerationReport {
  std::string pair;  // "211-220", "220-310", "310-400"
  std::vector<DegenerationCheck> checks;
  Multidegree special_multidegree{};
  Multidegree expected_multidegree{};
  std::map<std::string, Poly> special_sigma;  // s00 .. s22 after pullback
  bool ok() const;
};

std::vector<std::string> degeneration_pairs();
DegenerationReport verify_degeneration(const std::string& pair);

// ---------------------------------------------------------------- (3,1,0) -> (4,0,0)

struct Hypotheses310 {
  bool s_condition = false;  // s12² − s11 s22 ≠ 0
  Rat value;                 // (a0h0 − c0²)d0 − g0²a0
  bool value_square = false;  // nonzero square
  bool holds() const { return s_condition && value_square; }
};
Hypotheses310 theorem_310_400_hypotheses(const ConicBundle& cb);

}  // namespace cbq
