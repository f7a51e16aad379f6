#pragma once

#include <array>
#include <map>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cbq/poly.hpp"
#include "cbq/qform.hpp"

namespace cbq {

struct Weights {
  int a0 = 0, a1 = 0, a2 = 0;
  int operator[](int i) const { return i == 0 ? a0 : i == 1 ? a1 : a2; }
  bool operator==(const Weights&) const = default;
  std::string str() const;
};
Weights parse_weights(std::string_view text);  // "2,1,1" or "2 1 1"

// Order (d00, d01, d02, d11, d12, d22); the same order indexes ConicBundle::sigma.
using Multidegree = std::array<int, 6>;
inline constexpr std::array<std::pair<int, int>, 6> kSigmaIndex{
    {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};
std::string sigma_name(int k);  // "sigma01" etc.
std::string multidegree_str(const Multidegree& d);

Multidegree multidegree_of(const Weights& w, int m = 0);

class BundleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConicBundle {
  Weights weights;
  int twist = 0;  // common value m = d_ij − a_i − a_j; 0 after normalization
  std::array<Poly, 6> sigma;
  std::vector<std::string> params;
  bool rational_by_section = false;  // some σ_ii ≡ 0

  VarList vars() const;
  Multidegree multidegree() const { return multidegree_of(weights, twist); }
  int discriminant_degree() const;
  // Σ σ_ij y_i y_j over vars() + {y0,y1,y2}.
  Poly equation() const;
  std::string to_text() const;
};

ConicBundle parse_bundle(std::string_view text);
ConicBundle load_bundle(const std::string& path);

struct Validation {
  ConicBundle bundle;  // normalized
  int original_twist = 0;
  int twist_shift = 0;  // k with a_i ↦ a_i + k
  std::vector<std::string> notes;
};
// Throws BundleError on a degree mismatch or a non-homogeneous σ.
Validation validate_bundle(const ConicBundle& cb);

struct DiscriminantData {
  Poly delta_homogeneous;  // in x0, x1 (and parameters)
  Poly delta_affine;       // δ(t, 1)
  int degree = 0;
  bool degenerate = false;
};
QuadraticForm3<Poly> form_of(const ConicBundle& cb);
DiscriminantData discriminant(const ConicBundle& cb);

QuadraticForm3<Rat> fiber_at(const ConicBundle& cb, const Rat& x0, const Rat& x1);

// σ_ij(t, 1) with t renamed from x0; parameters kept.
Poly affine(const Poly& homogeneous_in_x);

// ---------------------------------------------------------------- types and counts

struct TypeEntry {
  Weights weights;
  int twist = 0;
  Multidegree degrees;
};
std::vector<TypeEntry> multidegrees_for_discriminant(int n);
std::uint64_t alcuin_count(int n);        // series coefficient
std::uint64_t alcuin_closed_form(int n);  // rounded formula, shifted to q^n

struct Blowup {
  std::vector<int> degrees;  // d, then d−1 (×C(h+1,1)), ..., m (×C(h+d−m, d−m))
  int last = 0;              // d − m
  std::pair<int, int> exceptional;
  std::string str() const;
};
Blowup blowup_multidegree(int d, int m, int h, int n);

// ---------------------------------------------------------------- generic members

enum class Naming { Standard, Mestre };
// Names of the coefficients of σ_k (index k in kSigmaIndex order), x0^{d−i}x1^i for i-th name.
std::vector<std::string> coefficient_names(const Weights& w, int k, Naming naming = Naming::Standard);
std::vector<std::string> all_coefficient_names(const Weights& w, Naming naming = Naming::Standard);
// Bundle whose coefficients are the named parameters.
ConicBundle symbolic_bundle(const Weights& w, Naming naming = Naming::Standard);
// Same shape with the given coefficient values (missing names are 0).
ConicBundle instantiate(const Weights& w, const std::map<std::string, Rat>& values,
                        Naming naming = Naming::Standard);
// Coefficient values of a concrete bundle under the naming.
std::map<std::string, Rat> coefficient_values(const ConicBundle& cb, Naming naming = Naming::Standard);

using Rng = std::mt19937_64;
// Uniform integer coefficients in [−9, 9], resampled until δ(t,1) has
// degree d_S exactly and is square-free.
ConicBundle random_bundle(const Weights& w, Rng& rng, int attempts = 1000);
bool has_good_discriminant(const ConicBundle& cb);

}  // namespace cbq
