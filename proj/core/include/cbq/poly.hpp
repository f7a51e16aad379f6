#pragma once

#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cbq/rat.hpp"

namespace cbq {

// Ordered, immutable list of variable names. Cheap to copy.
class VarList {
 public:
  VarList();
  VarList(std::initializer_list<std::string> names);
  explicit VarList(std::vector<std::string> names);

  std::size_t size() const { return names_->size(); }
  const std::string& operator[](std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }
  std::optional<std::size_t> index(std::string_view name) const;
  bool contains(std::string_view name) const { return index(name).has_value(); }

  bool operator==(const VarList& o) const;
  bool operator!=(const VarList& o) const { return !(*this == o); }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

// Union of two lists, keeping the order of `a` and appending new names of `b`.
VarList merge(const VarList& a, const VarList& b);

using Exps = std::vector<int>;

// Graded lexicographic order; the comparator sorts descending so that
// begin() is the leading term.
struct GrlexDesc {
  bool operator()(const Exps& a, const Exps& b) const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& msg)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class Poly {
 public:
  using Terms = std::map<Exps, Rat, GrlexDesc>;

  Poly() = default;
  explicit Poly(VarList vars) : vars_(std::move(vars)) {}
  Poly(VarList vars, Terms terms);

  static Poly constant(const Rat& c, VarList vars = {});
  static Poly var(std::string_view name, const VarList& vars);
  static Poly monomial(const VarList& vars, Exps e, const Rat& c = 1);
  static Poly parse(std::string_view text, const VarList& vars);

  const VarList& vars() const { return vars_; }
  const Terms& terms() const { return terms_; }
  std::size_t nterms() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat constant_term() const;
  Rat coeff(const Exps& e) const;
  Rat lc() const;
  Exps lm() const;

  int total_degree() const;  // -1 for the zero polynomial
  int degree(std::string_view name) const;
  int degree(std::size_t idx) const;
  bool uses(std::string_view name) const { return degree(name) > 0; }
  std::vector<std::string> used_vars() const;
  bool is_homogeneous() const;
  // Degree if homogeneous in the given subset of variables, else nullopt.
  std::optional<int> homogeneous_degree(const std::vector<std::string>& subset) const;

  // Re-express over `vars`, which must contain every variable in use.
  Poly with_vars(const VarList& vars) const;
  Poly trimmed() const;  // drop unused variables

  std::string str() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rat& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
  friend Poly operator*(const Rat& c, Poly a) { return a *= c; }
  friend Poly operator+(Poly a, const Rat& c) { return a += constant(c, a.vars()); }
  friend Poly operator-(Poly a, const Rat& c) { return a -= constant(c, a.vars()); }
  Poly pow(unsigned n) const;

  Poly diff(std::string_view name) const;
  Poly subs(const std::map<std::string, Rat>& values) const;
  Rat eval(const std::map<std::string, Rat>& values) const;  // must cover all used vars
  Poly compose(const std::map<std::string, Poly>& images) const;

  // Coefficients with respect to monomials in `sub` (exponent vectors
  // indexed like `sub`), each a polynomial in the remaining variables.
  std::map<Exps, Poly, GrlexDesc> coefficients_in(const std::vector<std::string>& sub) const;
  // Coefficients of powers of one variable.
  std::map<int, Poly> coefficients_in(std::string_view name) const;

  Rat content() const;     // positive; p / content has coprime integer coefficients
  Poly primitive() const;  // p / content, sign fixed so lc > 0
  Poly monic() const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

 private:
  void add_term(const Exps& e, const Rat& c);
  VarList vars_;
  Terms terms_;
};

std::optional<Poly> exact_div(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);  // primitive, positive lc; gcd(0,0) = 0
Poly lcm(const Poly& a, const Poly& b);

}  // namespace cbq
