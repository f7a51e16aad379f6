#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbq/bundles.hpp"
#include "cbq/poly.hpp"

namespace cbq {

const VarList& plane_vars();  // w0, w1, w2
const VarList& space_vars();  // z0, z1, z2, z3

using Point3 = std::array<Rat, 3>;

// Homogeneous in (w0,w1,w2), content 1, positive leading coefficient.
struct PlaneCurve {
  Poly poly;
  int degree = 0;
  static PlaneCurve make(const Poly& p);
  // p scaled so that the coefficient of `mono` is 1 (throws if it is 0).
  static Poly normalized_at(const Poly& p, const Exps& mono);
  std::string str() const { return poly.str(); }
};

// Multiplicity of a homogeneous polynomial at a projective point, read off as
// the lowest total degree after moving the point to the origin of an affine chart.
int multiplicity_at(const Poly& f, const std::vector<Rat>& point);
// Lowest-degree form at the point, in the remaining variables of that chart.
Poly tangent_cone(const Poly& f, const std::vector<Rat>& point);
// Multiplicity along the line through p and q, measured at two generic points.
int multiplicity_along_line(const Poly& f, const std::vector<Rat>& p, const std::vector<Rat>& q);

// ---------------------------------------------------------------- scroll images

struct MultipleLine {
  std::string name;             // "{z0 = z3 = 0}"
  std::vector<Rat> p, q;        // two points spanning the line
  int multiplicity = 0;
};

struct SurfaceModel {
  Poly poly;  // homogeneous in z0..z3
  int degree = 0;
  std::vector<MultipleLine> multiple_lines;
};

// (2,1,1): [x0y0 : x1y0 : y1 : y2];  (2,2,0), (4,0,0): [x0 : y1 : y2 : 1].
// Throws BundleError for other types. Line multiplicities are verified.
SurfaceModel scroll_image(const ConicBundle& cb);

// ---------------------------------------------------------------- Cremona maps

struct CremonaMap {
  std::array<Poly, 3> q;
  std::string base_description;
};

class Contracted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CremonaMap standard_cremona();  // [w1w2 : w0w2 : w0w1]
// Basis of the ternary quadrics through the given points (exact nullspace).
std::vector<Poly> conics_through(const std::vector<Point3>& pts);
// Quadrics r with r(q(w)) = λ(w)·w; throws std::domain_error when q is not birational.
CremonaMap cremona_inverse(const CremonaMap& m);
Point3 apply_map(const CremonaMap& m, const Point3& p);
Poly jacobian_determinant(const CremonaMap& m);
// Strict transform of the curve under the map: substitute the inverse quadrics,
// divide out factors shared with the inverse's Jacobian determinant to maximal
// power, remove content. Throws Contracted when the image is a point.
PlaneCurve cremona_apply(const CremonaMap& m, const PlaneCurve& curve);
// Same, with the inverse already known.
PlaneCurve cremona_apply_inverse(const CremonaMap& inverse, const PlaneCurve& curve);

// ---------------------------------------------------------------- conics over Q

// Coefficients in the order (w0², w0w1, w1², w0w2, w1w2, w2²).
struct ConicQ {
  std::array<Rat, 6> c;
  Poly poly() const;
  static ConicQ from_poly(const Poly& p);  // p a ternary quadric in w0,w1,w2
  static ConicQ parse(const std::string& csv);
  Rat eval(const Point3& p) const;
  Rat discriminant() const;  // det of the symmetric matrix
  std::string str() const;
};

// Place ∞ is encoded as p = 0.
int hilbert_symbol(const Rat& a, const Rat& b, const Int& p);
// Places where (a,b)_v can be -1: ∞, 2 and the primes dividing numerators and denominators.
std::vector<Int> relevant_places(const Rat& a, const Rat& b);

struct ConicPoint {
  enum class Status { Point, Obstructed, Undecided, Degenerate } status = Status::Undecided;
  std::optional<std::array<Int, 3>> point;  // primitive integer point
  std::vector<Int> obstructed_at;           // 0 means ∞
  std::uint64_t height_searched = 0;
  std::string note;
};
ConicPoint conic_has_point(const ConicQ& c, std::uint64_t height_bound = 10000);
std::string place_str(const Int& p);

// ---------------------------------------------------------------- reduction chains

// Maps of the U¹² reduction: the conics through {[0:1:0],[0:0:1],[1:0:-1]},
// through {[2:1:1],[0:1:0],[1:0:0]}, and the explicit map
// [-2(w0-w1)w2 + w0², w1², w0w1].
CremonaMap u12_phi1();
CremonaMap u12_phi2();
CremonaMap u12_phi3();

// Δ = a4 + 2a6 + ½b2 + ½c2 + ¼d0 + ¼g0 + ¼h0 in the standard (4,0,0) naming.
Rat u12_delta(const ConicBundle& cb);
// The conic predicted by the closed formulas in (a4,a5,a6,b2,c2,Δ).
ConicQ u12_predicted_conic(const ConicBundle& cb);

struct U12Chain {
  SurfaceModel X8;
  PlaneCurve C, C1, C2, C3;  // C1, C2, C3 normalized at w0²w1⁴, w0⁴, w0²
  Rat delta;
  std::array<int, 4> degrees{};
  std::array<int, 4> multiplicities{};  // at n3 = [1:0:-1], n1 = [0:0:1], [1:1:1], c = [0:1:0]
  Poly tangent_cone_q;                  // in the chart w1 = 1
  ConicQ conic;
  bool conic_matches_prediction = false;
};
// cb: concrete (4,0,0) bundle satisfying the nine U¹² relations and b3 = -c3,
// with Δ ≠ 0. Throws BundleError naming a violated relation, std::domain_error for Δ = 0.
U12Chain chain_U12(const ConicBundle& cb);
// Random member of U¹² with b3 = -c3 and Δ ≠ 0 (dependent coefficients re-solved).
ConicBundle u12_admissible_member(Rng& rng);

struct TangentSection433222 {
  SurfaceModel X4;
  Poly tangent_plane;                         // linear form in z0..z3
  std::vector<std::vector<Rat>> double_points;  // p', q', x in P³
  std::string plane_coordinates;              // which z is eliminated
  PlaneCurve C4;
  std::vector<int> multiplicities;            // of C4 at the three points
  ConicQ image;                               // image of C4 under [w0w1 : w0w2 : w1w2]
};
// cb of type (2,1,1) with a0 = a1 = a3 = a4 = 0, b0 ≠ 0 and b0c3 - c0b3 = 0.
// Throws BundleError when the hypotheses fail and std::domain_error
// ("splits into two sections") when C4 has a triple point.
TangentSection433222 tangent_2section_433222(const ConicBundle& cb);

}  // namespace cbq
