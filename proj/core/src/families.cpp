#include "cbq/families.hpp"

#include <algorithm>
#include <numeric>

#include "cbq/linalg.hpp"
#include "cbq/quadforms.hpp"
#include "cbq/upoly.hpp"

namespace cbq {

namespace {

const VarList& cox_vars() {
  static const VarList v{"x0", "x1", "y0", "y1", "y2"};
  return v;
}

bool is_type(const Weights& w, int a0, int a1, int a2) { return w == Weights{a0, a1, a2}; }

void require_aut_type(const Weights& w) {
  if (!is_type(w, 2, 1, 1) && !is_type(w, 2, 2, 0) && !is_type(w, 4, 0, 0))
    throw BundleError("automorphisms are implemented for (2,1,1), (2,2,0), (4,0,0); got " + w.str());
}

std::string idx(const std::string& base, int i, int j) { return base + std::to_string(i) + std::to_string(j); }

}  // namespace

// ---------------------------------------------------------------- automorphisms

Rat AutParams::at(const std::string& name) const {
  auto it = entries.find(name);
  return it == entries.end() ? Rat(0) : it->second;
}

std::vector<std::string> aut_entry_names(const Weights& w) {
  require_aut_type(w);
  std::vector<std::string> n{"alpha00", "alpha01", "alpha10", "alpha11"};
  if (is_type(w, 2, 2, 0)) {
    for (const char* s : {"beta00", "beta01", "beta10", "beta11", "gamma22"}) n.push_back(s);
    for (int i = 1; i <= 3; ++i) n.push_back(idx("delta", 1, i));
    for (int i = 1; i <= 3; ++i) n.push_back(idx("theta", 1, i));
    return n;
  }
  for (const char* s : {"beta00", "gamma11", "gamma12", "gamma21", "gamma22"}) n.push_back(s);
  int m = is_type(w, 2, 1, 1) ? 2 : 5;
  for (int r = 1; r <= 2; ++r)
    for (int i = 1; i <= m; ++i) n.push_back(idx("delta", r, i));
  return n;
}

std::vector<std::string> aut_chart_coordinates(const Weights& w) {
  auto n = aut_entry_names(w);
  n.erase(std::remove_if(n.begin(), n.end(), [](const std::string& s) { return s == "alpha00" || s == "beta00"; }),
          n.end());
  return n;
}

std::string aut_chart_description(const Weights& w) {
  return "alpha00 = beta00 = 1 (" + std::to_string(aut_chart_coordinates(w).size()) + " affine coordinates)";
}

AutParams aut_identity(const Weights& w) {
  require_aut_type(w);
  AutParams a{w, {{"alpha00", 1}, {"alpha11", 1}, {"beta00", 1}, {"gamma22", 1}}};
  if (is_type(w, 2, 2, 0))
    a.entries["beta11"] = 1;
  else
    a.entries["gamma11"] = 1;
  return a;
}

std::map<std::string, Poly> aut_images(const Weights& w, const std::map<std::string, Poly>& entries) {
  require_aut_type(w);
  VarList vars = cox_vars();
  for (const auto& [k, p] : entries) vars = merge(vars, p.vars());
  auto E = [&](const std::string& n) {
    auto it = entries.find(n);
    return it == entries.end() ? Poly(vars) : it->second.with_vars(vars);
  };
  auto V = [&](const char* n) { return Poly::var(n, vars); };
  Poly x0 = V("x0"), x1 = V("x1"), y0 = V("y0"), y1 = V("y1"), y2 = V("y2");
  std::map<std::string, Poly> im;
  im["x0"] = E("alpha00") * x0 + E("alpha01") * x1;
  im["x1"] = E("alpha10") * x0 + E("alpha11") * x1;
  auto binary = [&](int deg, int i) { return x0.pow(deg - i) * x1.pow(i); };
  if (is_type(w, 2, 2, 0)) {
    im["y0"] = E("beta00") * y0 + E("beta01") * y1;
    im["y1"] = E("beta10") * y0 + E("beta11") * y1;
    Poly t = E("gamma22") * y2;
    for (int i = 1; i <= 3; ++i)
      t += binary(2, i - 1) * (E(idx("delta", 1, i)) * y0 + E(idx("theta", 1, i)) * y1);
    im["y2"] = t;
    return im;
  }
  im["y0"] = E("beta00") * y0;
  int m = is_type(w, 2, 1, 1) ? 2 : 5;
  for (int r = 1; r <= 2; ++r) {
    Poly t = E(idx("gamma", r, 1)) * y1 + E(idx("gamma", r, 2)) * y2;
    for (int i = 1; i <= m; ++i) t += binary(m - 1, i - 1) * E(idx("delta", r, i)) * y0;
    im[r == 1 ? "y1" : "y2"] = t;
  }
  return im;
}

std::array<Poly, 6> split_equation(const Poly& eq) {
  std::array<Poly, 6> s;
  auto co = eq.coefficients_in(std::vector<std::string>{"y0", "y1", "y2"});
  for (int k = 0; k < 6; ++k) s[k] = Poly(eq.vars());
  for (const auto& [e, c] : co) {
    if (e[0] + e[1] + e[2] != 2) throw std::logic_error("split_equation: not quadratic in y");
    int i = -1, j = -1;
    for (int a = 0; a < 3; ++a)
      for (int r = 0; r < e[a]; ++r) (i < 0 ? i : j) = a;
    for (int k = 0; k < 6; ++k)
      if (kSigmaIndex[k] == std::pair<int, int>{i, j}) s[k] = c;
  }
  for (auto& p : s) p = p.trimmed();
  return s;
}

std::array<Poly, 6> pullback_general(const ConicBundle& cb, const std::map<std::string, Poly>& images) {
  return split_equation(cb.equation().compose(images));
}

ConicBundle pullback(const AutParams& aut, const ConicBundle& cb) {
  if (!(aut.type == cb.weights)) throw BundleError("pullback: automorphism of " + aut.type.str() +
                                                   " applied to a bundle of type " + cb.weights.str());
  if (cb.twist != 0) throw BundleError("pullback: bundle must be normalized (twist 0)");
  for (const auto& [k, v] : aut.entries) {
    auto names = aut_entry_names(aut.type);
    if (std::find(names.begin(), names.end(), k) == names.end())
      throw BundleError("pullback: unknown automorphism entry " + k);
  }
  auto a = [&](const char* n) { return aut.at(n); };
  if (a("alpha00") * a("alpha11") - a("alpha01") * a("alpha10") == 0)
    throw BundleError("pullback: the x-part is not invertible");
  if (is_type(aut.type, 2, 2, 0)) {
    if (a("beta00") * a("beta11") - a("beta01") * a("beta10") == 0 || a("gamma22") == 0)
      throw BundleError("pullback: the y-part is not invertible");
  } else if (a("beta00") == 0 || a("gamma11") * a("gamma22") - a("gamma12") * a("gamma21") == 0) {
    throw BundleError("pullback: the y-part is not invertible");
  }
  std::map<std::string, Poly> e;
  for (const auto& [k, v] : aut.entries) e[k] = Poly::constant(v);
  auto s = pullback_general(cb, aut_images(aut.type, e));
  ConicBundle out = cb;
  VarList v = cb.vars();
  for (int k = 0; k < 6; ++k) out.sigma[k] = s[k].with_vars(v);
  return out;
}

// ---------------------------------------------------------------- loci

namespace {

Poly parse_in(const std::string& s, const Weights& w) {
  VarList v(all_coefficient_names(w));
  return Poly::parse(s, v);
}

const char* kU12[][2] = {
    {"a7", "0"},
    {"a8", "0"},
    {"b4", "-c4"},
    {"b1", "-b3 - c1 - c3 - d0 - g0 - h0"},
    {"a3", "-2*a5 - 1/2*b2 - 1/2*c2"},
    {"a1", "a5 + 1/2*b2 + 1/2*c2 + 1/2*d0 + 1/2*g0 + 1/2*h0"},
    {"a2", "-2*a4 - 3*a6 - 1/2*b2 - 1/2*c2 + 1/4*d0 + 1/4*g0 + 1/4*h0"},
    {"a0", "a1 - a2 + a3 - a4 + a5 - a6 + a7"},
    {"b0", "-g0 - 2*a1 - b1 - b2 - c1 - c0 - c4 - b4 - 2*a7 - h0 - d0 - 2*a5 - c3 - b3 - 2*a3 - c2"},
};

}  // namespace

std::vector<std::string> locus_names() { return {"U_433222", "U_442420", "U_c2zero", "U12", "U_delta"}; }

LocusSpec locus(const std::string& name) {
  LocusSpec s;
  s.name = name;
  auto zero = [&](const char* c) {
    s.relations.push_back(parse_in(c, s.type));
    s.relation_text.push_back(std::string(c) + " = 0");
    s.solved.emplace_back(c, Poly(VarList(all_coefficient_names(s.type))));
  };
  if (name == "U_433222") {
    s.type = {2, 1, 1};
    for (const char* c : {"a0", "a4", "a1", "a3"}) zero(c);
    s.relations.push_back(parse_in("b0*c3 - c0*b3", s.type));
    s.relation_text.push_back("b0*c3 - c0*b3 = 0");
    s.solved_den = {{"c3", parse_in("b0", s.type)}};
    s.solved.emplace_back("c3", parse_in("b3*c0", s.type));
    s.nonzero = {"b0"};
    s.note = "p, q on the bundle with a common tangent plane; c3 = b3*c0/b0";
  } else if (name == "U_442420") {
    s.type = {2, 2, 0};
    for (const char* c : {"a3", "a4", "c2"}) zero(c);
    s.note = "p on the bundle and the double line in its tangent plane";
  } else if (name == "U_c2zero") {
    s.type = {4, 0, 0};
    zero("h0");
    s.sigma22_zero = true;
    s.note = "sigma22 = 0 (the coefficient called c2 in the Mestre naming): rational by a section";
  } else if (name == "U12") {
    s.type = {4, 0, 0};
    for (const auto& r : kU12) {
      s.relations.push_back(parse_in(r[0], s.type) - parse_in(r[1], s.type));
      s.relation_text.push_back(std::string(r[0]) + " = " + r[1]);
      s.solved.emplace_back(r[0], parse_in(r[1], s.type));
    }
    s.note = "nine linear relations; the Cremona chain additionally needs b3 = -c3 and Delta != 0";
  } else if (name == "U_delta") {
    s.type = {4, 0, 0};
    s.note = "leading coefficient of -(4/c2) delta is a square (checked through the Mestre model)";
  } else {
    throw std::invalid_argument("unknown locus " + name);
  }
  return s;
}

std::vector<std::string> violated_relations(const LocusSpec& spec, const ConicBundle& cb) {
  if (!(cb.weights == spec.type) || cb.twist != 0)
    return {"type " + spec.type.str() + " required, got " + cb.weights.str()};
  if (!cb.params.empty()) return {"bundle is not concrete"};
  auto v = coefficient_values(cb);
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < spec.relations.size(); ++i)
    if (spec.relations[i].eval(v) != 0) bad.push_back(spec.relation_text[i]);
  for (const auto& n : spec.nonzero)
    if (v[n] == 0) bad.push_back(n + " != 0");
  if (spec.name == "U_delta") {
    try {
      if (!mestre_normal_form(cb).xi) bad.push_back("Mestre square condition");
    } catch (const std::exception& e) {
      bad.push_back(std::string("Mestre model: ") + e.what());
    }
  }
  return bad;
}

namespace {

bool squarefree_degree8(const ConicBundle& cb) {
  auto d = discriminant(cb);
  if (d.degenerate) return false;
  UPoly f = UPoly::from_poly(d.delta_affine, "t");
  if (f.degree() != 8) return false;
  return gcd(f, f.derivative()).degree() == 0;
}

}  // namespace

ConicBundle locus_member(const LocusSpec& spec, Rng& rng, int attempts) {
  if (spec.name == "U_delta") return u_delta_member(rng).first;
  std::uniform_int_distribution<int> coef(-9, 9);
  auto names = all_coefficient_names(spec.type);
  for (int a = 0; a < attempts; ++a) {
    std::map<std::string, Rat> v;
    for (const auto& n : names) v[n] = coef(rng);
    for (const auto& n : spec.nonzero)
      while (v[n] == 0) v[n] = coef(rng);
    for (const auto& [n, e] : spec.solved) {
      Rat den = 1;
      if (auto it = spec.solved_den.find(n); it != spec.solved_den.end()) den = it->second.eval(v);
      v[n] = e.eval(v) / den;
    }
    Int l = 1;
    for (const auto& [n, x] : v) l = lcm(l, Int(x.get_den()));
    for (auto& [n, x] : v) x *= l;
    ConicBundle cb = instantiate(spec.type, v);
    if (!violated_relations(spec, cb).empty()) throw std::logic_error("locus_member: relation check failed");
    if (spec.sigma22_zero) {
      cb.rational_by_section = true;
      if (squarefree_degree8(cb)) return cb;
    } else if (has_good_discriminant(cb)) {
      return cb;
    }
  }
  throw BundleError("locus_member: no admissible sample for " + spec.name);
}

// ---------------------------------------------------------------- dominance

namespace {

// The 22 coefficients of σ in the standard order, as polynomials in the extra variables.
std::vector<Poly> coefficient_vector(const std::array<Poly, 6>& s, const Multidegree& d) {
  std::vector<Poly> out;
  for (int k = 0; k < 6; ++k) {
    auto co = s[k].coefficients_in(std::vector<std::string>{"x0", "x1"});
    for (int i = 0; i <= d[k]; ++i) {
      auto it = co.find(Exps{d[k] - i, i});
      out.push_back(it == co.end() ? Poly() : it->second);
    }
  }
  return out;
}

Rat first_order(const Poly& p) {
  if (p.is_zero() || !p.vars().contains("eps")) return 0;
  return p.diff("eps").subs({{"eps", 0}}).constant_term();
}

}  // namespace

DominanceReport jacobian_rank_at_identity(const LocusSpec& spec, const ConicBundle& cb, std::uint64_t seed,
                                          GroupRestriction group) {
  auto bad = violated_relations(spec, cb);
  if (!bad.empty()) throw BundleError("bundle is off " + spec.name + ": " + bad.front());
  DominanceReport r;
  r.locus = spec.name;
  r.type = spec.type;
  r.seed = seed;
  const Weights& w = spec.type;
  auto md = cb.multidegree();
  auto names = all_coefficient_names(w);
  const std::size_t n = names.size();
  auto vals = coefficient_values(cb);
  std::vector<Rat> f;
  for (const auto& nm : names) f.push_back(vals[nm]);

  // group directions
  std::vector<std::vector<std::string>> dirs;
  if (group == GroupRestriction::Full) {
    for (const auto& c : aut_chart_coordinates(w)) dirs.push_back({c});
    r.chart = aut_chart_description(w);
  } else {
    dirs.push_back(is_type(w, 2, 2, 0) ? std::vector<std::string>{"beta11", "gamma22"}
                                       : std::vector<std::string>{"gamma11", "gamma22"});
    r.chart = "scaling subgroup y1, y2 -> lambda y1, lambda y2";
  }
  VarList ev{"eps"};
  Poly eps = Poly::var("eps", ev);
  std::vector<std::vector<Rat>> cols;
  for (const auto& d : dirs) {
    std::map<std::string, Poly> e;
    for (const auto& [k, v] : aut_identity(w).entries) e[k] = Poly::constant(v, ev);
    for (const auto& c : d) e[c] = (e.count(c) ? e[c] : Poly(ev)) + eps;
    auto coeffs = coefficient_vector(pullback_general(cb, aut_images(w, e)), md);
    std::vector<Rat> col;
    for (const auto& c : coeffs) col.push_back(first_order(c));
    cols.push_back(col);
  }
  r.group_columns = static_cast<int>(cols.size());

  // tangent directions of the (affine cone over the) locus
  RatMatrix jac;
  for (const auto& rel : spec.relations) {
    std::vector<Rat> row;
    for (const auto& nm : names) row.push_back(rel.vars().contains(nm) ? rel.diff(nm).eval(vals) : Rat(0));
    jac.push_back(row);
  }
  std::vector<std::vector<Rat>> tangent;
  if (jac.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rat> e(n, 0);
      e[i] = 1;
      tangent.push_back(e);
    }
  } else {
    tangent = nullspace(jac, n);
  }
  r.locus_columns = static_cast<int>(tangent.size());
  for (auto& t : tangent) cols.push_back(t);

  // de-projectivize
  int k = static_cast<int>(n) - 1;
  if (f[k] == 0) {
    while (k >= 0 && f[k] == 0) --k;
    if (k < 0) throw BundleError("zero bundle");
    r.normalizer_note = "f_" + std::to_string(n - 1) + " = 0; normalized by f_" + std::to_string(k);
  } else {
    r.normalizer_note = "normalized by f_" + std::to_string(k);
  }
  r.normalizer = k;
  RatMatrix m;
  for (std::size_t i = 0; i < n; ++i) {
    if (static_cast<int>(i) == k) continue;
    Rat ratio = f[i] / f[k];
    std::vector<Rat> row;
    for (const auto& c : cols) row.push_back(c[i] - ratio * c[k]);
    m.push_back(row);
  }
  r.rank = static_cast<int>(rank(m));
  r.expected = static_cast<int>(n) - 1;
  return r;
}

// ---------------------------------------------------------------- deformations

DeformationTable deformation_table(const Weights& w) {
  DeformationTable t{w};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int d = w[i] - w[j];
      if (d >= 2) t.h1_end += d - 1;
    }
  t.h0_normal = -1;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      int d = w[i] + w[j];
      t.h0_normal += std::max(0, d + 1);
      t.h1_normal += std::max(0, -d - 1);
    }
  return t;
}

// ---------------------------------------------------------------- degenerations

namespace {

std::vector<std::string> range_names(const std::string& base, int n) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back(base + std::to_string(i));
  return v;
}

struct Ctx {
  VarList vars;
  Poly P(const std::string& s) const { return Poly::parse(s, vars); }
  std::vector<Poly> list(const std::vector<std::string>& s) const {
    std::vector<Poly> out;
    for (const auto& x : s) out.push_back(P(x));
    return out;
  }
};

std::map<std::string, Poly> as_images(const std::vector<Poly>& p, const std::string& base) {
  std::map<std::string, Poly> m;
  for (std::size_t i = 0; i < p.size(); ++i) m[base + std::to_string(i)] = p[i];
  return m;
}

// 2×2 minors of a 2×n matrix vanish after substitution.
DegenerationCheck minors_vanish(const std::string& name, const std::array<std::vector<Poly>, 2>& m,
                                const std::map<std::string, Poly>& sub) {
  DegenerationCheck c{name, true, ""};
  const std::size_t n = m[0].size();
  for (std::size_t i = 0; i < n && c.ok; ++i)
    for (std::size_t j = i + 1; j < n && c.ok; ++j) {
      Poly minor = (m[0][i] * m[1][j] - m[0][j] * m[1][i]).compose(sub);
      if (!minor.is_zero()) {
        c.ok = false;
        c.detail = "minor (" + std::to_string(i) + "," + std::to_string(j) + ") = " + minor.trimmed().str();
      }
    }
  return c;
}

DegenerationCheck maps_agree(const std::string& name, const std::vector<Poly>& lhs, const std::vector<Poly>& rhs) {
  DegenerationCheck c{name, true, ""};
  for (std::size_t i = 0; i < lhs.size(); ++i)
    if (!(lhs[i] - rhs[i]).trimmed().is_zero()) {
      c.ok = false;
      c.detail = "component " + std::to_string(i) + ": " + lhs[i].trimmed().str() + " vs " + rhs[i].trimmed().str();
      break;
    }
  return c;
}

const char* kSNames[6] = {"s00", "s01", "s02", "s11", "s12", "s22"};

DegenerationCheck sigma_match(const std::string& name, const std::array<Poly, 6>& got,
                              const std::array<std::string, 6>& expected, const Ctx& cx) {
  DegenerationCheck c{name, true, ""};
  for (int k = 0; k < 6 && c.ok; ++k) {
    Poly diff = (got[k] - cx.P(expected[k])).trimmed();
    if (!diff.is_zero()) {
      c.ok = false;
      c.detail = std::string(kSNames[k]) + ": got " + got[k].trimmed().str() + ", expected " + expected[k];
    }
  }
  return c;
}

std::array<Poly, 6> pull_quadric(const Poly& q, const std::vector<Poly>& param) {
  return split_equation(q.compose(as_images(param, "z")));
}

Multidegree x_degrees(const std::array<Poly, 6>& s) {
  Multidegree d{};
  for (int k = 0; k < 6; ++k) {
    if (s[k].is_zero()) {
      d[k] = -1;
      continue;
    }
    auto h = s[k].homogeneous_degree({"x0", "x1"});
    d[k] = h ? *h : -2;
  }
  return d;
}

VarList ctx_vars(const std::vector<std::string>& extra, const std::vector<std::string>& params) {
  std::vector<std::string> v{"x0", "x1", "y0", "y1", "y2"};
  v.insert(v.end(), extra.begin(), extra.end());
  v.insert(v.end(), params.begin(), params.end());
  return VarList(v);
}

void finish(DegenerationReport& r, const std::array<Poly, 6>& special, const Multidegree& expected) {
  r.special_multidegree = x_degrees(special);
  r.expected_multidegree = expected;
  for (int k = 0; k < 6; ++k) r.special_sigma[kSNames[k]] = special[k].trimmed();
  DegenerationCheck c{"specialized multidegree " + multidegree_str(expected), r.special_multidegree == expected, ""};
  if (!c.ok) c.detail = "got " + multidegree_str(r.special_multidegree);
  r.checks.push_back(c);
}

DegenerationReport degeneration_211_220() {
  DegenerationReport r;
  r.pair = "211-220";
  auto Zs = range_names("Z", 10), zs = range_names("z", 7);
  std::vector<std::string> extra = Zs;
  extra.insert(extra.end(), zs.begin(), zs.end());
  for (const char* s : {"A", "B", "a", "b"}) extra.push_back(s);
  Ctx cx{ctx_vars(extra, all_coefficient_names({2, 1, 1}))};
  auto F = cx.list({"y0*x0^3", "y0*x0^2*x1", "y0*x0*x1^2", "y0*x1^3", "y1*x0^2", "y1*x0*x1", "y1*x1^2", "y2*x0^2",
                    "y2*x0*x1", "y2*x1^2"});
  auto G = cx.list({"y0*x0^3", "y0*x0^2*x1", "y0*x0*x1^2", "y0*x1^3", "y1*x0^3", "y1*x0^2*x1", "y1*x0*x1^2",
                    "y1*x1^3", "y2*x0", "y2*x1"});
  auto f = cx.list({"x0^2*y0", "x0*x1*y0", "x1^2*y0", "x0*y1", "x1*y1", "x0*y2", "x1*y2"});
  auto g = cx.list({"x0^2*y0", "x0*x1*y0", "x1^2*y0", "x0^2*y1", "x0*x1*y1", "x1^2*y1", "y2"});
  std::array<std::vector<Poly>, 2> M{cx.list({"Z0", "Z1", "Z2", "Z4", "Z5", "A*Z6 + B*Z7", "Z8"}),
                                     cx.list({"Z1", "Z2", "Z3", "Z5", "Z6", "A*Z7 + B*Z8", "Z9"})};
  std::array<std::vector<Poly>, 2> N{cx.list({"z0", "z1", "z3", "a^2*z4 + b*z5"}),
                                     cx.list({"z1", "z2", "z4", "a*z5 + b^2*z6"})};
  auto at = [&](std::map<std::string, Poly> m, const char* p, int pv, const char* q, int qv) {
    m[p] = cx.P(std::to_string(pv));
    m[q] = cx.P(std::to_string(qv));
    return m;
  };
  r.checks.push_back(minors_vanish("minors of M_{0,1} vanish on F", M, at(as_images(F, "Z"), "A", 0, "B", 1)));
  r.checks.push_back(minors_vanish("minors of M_{1,0} vanish on G", M, at(as_images(G, "Z"), "A", 1, "B", 0)));
  r.checks.push_back(minors_vanish("minors of N_{0,1} vanish on f", N, at(as_images(f, "z"), "a", 0, "b", 1)));
  r.checks.push_back(minors_vanish("minors of N_{1,0} vanish on g", N, at(as_images(g, "z"), "a", 1, "b", 0)));
  auto pr = cx.list({"Z1", "Z2", "Z3", "Z5", "Z6", "A*Z7 + B*Z8", "Z9"});
  auto compose_all = [&](const std::vector<Poly>& lin, const std::map<std::string, Poly>& sub) {
    std::vector<Poly> out;
    for (const auto& l : lin) out.push_back(l.compose(sub));
    return out;
  };
  auto times_x1 = [&](std::vector<Poly> v) {
    for (auto& p : v) p = p * cx.P("x1");
    return v;
  };
  r.checks.push_back(maps_agree("pr_{0,1} o F = x1 * f", compose_all(pr, at(as_images(F, "Z"), "A", 0, "B", 1)),
                                times_x1(f)));
  r.checks.push_back(maps_agree("pr_{1,0} o G = x1 * g", compose_all(pr, at(as_images(G, "Z"), "A", 1, "B", 0)),
                                times_x1(g)));
  Poly Q = cx.P(
      "a0*z0^2 + a1*z0*z1 + a2*z1^2 + a3*z1*z2 + a4*z2^2 + b0*z0*z3 + b1*z1*z3 + b2*z2*z3 + d0*z3^2"
      " + b3*z2*z4 + d1*z3*z4 + d2*z4^2 + c0*z0*z5 + c1*z1*z5 + c2*z2*z5 + g0*z3*z5 + g1*z4*z5"
      " + h0*z5^2 + c3*z2*z6 + g2*z4*z6 + h1*z5*z6 + h2*z6^2");
  r.checks.push_back(sigma_match("f*Q is the (2,1,1) bundle", pull_quadric(Q, f),
                                 {"a0*x0^4 + a1*x0^3*x1 + a2*x0^2*x1^2 + a3*x0*x1^3 + a4*x1^4",
                                  "b0*x0^3 + b1*x0^2*x1 + b2*x0*x1^2 + b3*x1^3",
                                  "c0*x0^3 + c1*x0^2*x1 + c2*x0*x1^2 + c3*x1^3", "d0*x0^2 + d1*x0*x1 + d2*x1^2",
                                  "g0*x0^2 + g1*x0*x1 + g2*x1^2", "h0*x0^2 + h1*x0*x1 + h2*x1^2"},
                                 cx));
  auto special = pull_quadric(Q, g);
  r.checks.push_back(sigma_match(
      "g*Q matches the (2,2,0) coefficient list", special,
      {"a0*x0^4 + a1*x0^3*x1 + a2*x0^2*x1^2 + a3*x0*x1^3 + a4*x1^4",
       "b0*x0^4 + b1*x0^3*x1 + b2*x0^2*x1^2 + b3*x0*x1^3 + c0*x0^2*x1^2 + c1*x0*x1^3 + c2*x1^4", "c3*x1^2",
       "d0*x0^4 + d1*x0^3*x1 + d2*x0^2*x1^2 + g0*x0^2*x1^2 + g1*x0*x1^3 + h0*x1^4", "g2*x0*x1 + h1*x1^2", "h2"},
      cx));
  finish(r, special, {4, 4, 2, 4, 2, 0});
  return r;
}

DegenerationReport degeneration_220_310() {
  DegenerationReport r;
  r.pair = "220-310";
  auto zs = range_names("z", 7);
  std::vector<std::string> extra = zs;
  extra.push_back("a");
  extra.push_back("b");
  std::vector<std::string> params = range_names("a", 5);
  for (auto [c, n] : std::vector<std::pair<std::string, int>>{{"b", 5}, {"c", 3}, {"d", 5}, {"g", 3}, {"h", 1}})
    for (const auto& x : range_names(c, n)) params.push_back(x);
  Ctx cx{ctx_vars(extra, params)};
  std::array<std::vector<Poly>, 2> M{cx.list({"z0", "z1", "a*z2 + b*z3", "z4"}),
                                     cx.list({"z1", "z2", "a*z3 + b*z4", "z5"})};
  auto p220 = cx.list({"x0^2*y0", "x0*x1*y0", "x1^2*y0", "x0^2*y1", "x0*x1*y1", "x1^2*y1", "y2"});
  auto g310 = cx.list({"x0^3*y0", "x0^2*x1*y0", "x0*x1^2*y0", "x1^3*y0", "x0*y1", "x1*y1", "y2"});
  auto at = [&](std::map<std::string, Poly> m, int av, int bv) {
    m["a"] = cx.P(std::to_string(av));
    m["b"] = cx.P(std::to_string(bv));
    return m;
  };
  r.checks.push_back(minors_vanish("minors of M_{0,1} vanish on the (2,2,0) parametrization", M,
                                   at(as_images(p220, "z"), 0, 1)));
  r.checks.push_back(minors_vanish("minors of M_{1,0} vanish on g", M, at(as_images(g310, "z"), 1, 0)));
  Poly G = cx.P(
      "a0*z0^2 + a1*z0*z1 + a2*z1^2 + a3*z1*z2 + a4*z2^2 + b0*z0*z3 + b1*z1*z3 + b2*z2*z3 + b3*z2*z4 + b4*z2*z5"
      " + c0*z0*z6 + c1*z1*z6 + c2*z2*z6 + d0*z3^2 + d1*z3*z4 + d2*z4^2 + d3*z4*z5 + d4*z5^2"
      " + g0*z3*z6 + g1*z4*z6 + g2*z5*z6 + h0*z6^2");
  r.checks.push_back(sigma_match(
      "pullback of G is the (2,2,0) bundle", pull_quadric(G, p220),
      {"a0*x0^4 + a1*x0^3*x1 + a2*x0^2*x1^2 + a3*x0*x1^3 + a4*x1^4",
       "b0*x0^4 + b1*x0^3*x1 + b2*x0^2*x1^2 + b3*x0*x1^3 + b4*x1^4", "c0*x0^2 + c1*x0*x1 + c2*x1^2",
       "d0*x0^4 + d1*x0^3*x1 + d2*x0^2*x1^2 + d3*x0*x1^3 + d4*x1^4", "g0*x0^2 + g1*x0*x1 + g2*x1^2", "h0"},
      cx));
  auto special = pull_quadric(G, g310);
  r.checks.push_back(sigma_match(
      "g*G matches the (3,1,0) coefficient list", special,
      {"a0*x0^6 + a1*x0^5*x1 + a2*x0^4*x1^2 + a3*x0^3*x1^3 + a4*x0^2*x1^4 + b0*x0^3*x1^3 + b1*x0^2*x1^4 + "
       "b2*x0*x1^5 + d0*x1^6",
       "b3*x0^2*x1^2 + b4*x0*x1^3 + d1*x0*x1^3", "c0*x0^3 + c1*x0^2*x1 + c2*x0*x1^2 + g0*x1^3",
       "d2*x0^2 + d3*x0*x1 + d4*x1^2", "g1*x0 + g2*x1", "h0"},
      cx));
  finish(r, special, {6, 4, 3, 2, 1, 0});
  return r;
}

DegenerationReport degeneration_310_400() {
  DegenerationReport r;
  r.pair = "310-400";
  auto zs = range_names("z", 7);
  std::vector<std::string> extra = zs;
  extra.push_back("a");
  extra.push_back("b");
  std::vector<std::string> params = all_coefficient_names({3, 1, 0});
  Ctx cx{ctx_vars(extra, params)};
  std::array<std::vector<Poly>, 2> M{cx.list({"z0", "z1", "z2", "a*z3 + b*z4"}),
                                     cx.list({"z1", "z2", "z3", "a*z4 + b*z5"})};
  auto p310 = cx.list({"x0^3*y0", "x0^2*x1*y0", "x0*x1^2*y0", "x1^3*y0", "x0*y1", "x1*y1", "y2"});
  auto g400 = cx.list({"x0^4*y0", "x0^3*x1*y0", "x0^2*x1^2*y0", "x0*x1^3*y0", "x1^4*y0", "y1", "y2"});
  auto at = [&](std::map<std::string, Poly> m, int av, int bv) {
    m["a"] = cx.P(std::to_string(av));
    m["b"] = cx.P(std::to_string(bv));
    return m;
  };
  r.checks.push_back(minors_vanish("minors of M_{0,1} vanish on the (3,1,0) parametrization", M,
                                   at(as_images(p310, "z"), 0, 1)));
  r.checks.push_back(minors_vanish("minors of M_{1,0} vanish on g", M, at(as_images(g400, "z"), 1, 0)));
  Poly G = cx.P(
      "a0*z0^2 + a1*z0*z1 + a2*z1^2 + a3*z1*z2 + a4*z2^2 + a5*z2*z3 + a6*z3^2"
      " + b0*z0*z4 + b1*z1*z4 + b2*z2*z4 + b3*z3*z4 + b4*z3*z5"
      " + c0*z0*z6 + c1*z1*z6 + c2*z2*z6 + c3*z3*z6"
      " + d0*z4^2 + d1*z4*z5 + d2*z5^2 + g0*z4*z6 + g1*z5*z6 + h0*z6^2");
  r.checks.push_back(sigma_match(
      "pullback of G is the (3,1,0) bundle", pull_quadric(G, p310),
      {"a0*x0^6 + a1*x0^5*x1 + a2*x0^4*x1^2 + a3*x0^3*x1^3 + a4*x0^2*x1^4 + a5*x0*x1^5 + a6*x1^6",
       "b0*x0^4 + b1*x0^3*x1 + b2*x0^2*x1^2 + b3*x0*x1^3 + b4*x1^4",
       "c0*x0^3 + c1*x0^2*x1 + c2*x0*x1^2 + c3*x1^3", "d0*x0^2 + d1*x0*x1 + d2*x1^2", "g0*x0 + g1*x1", "h0"},
      cx));
  auto special = pull_quadric(G, g400);
  r.checks.push_back(sigma_match(
      "g*G matches the (4,0,0) coefficient list", special,
      {"a0*x0^8 + a1*x0^7*x1 + a2*x0^6*x1^2 + a3*x0^5*x1^3 + a4*x0^4*x1^4 + a5*x0^3*x1^5 + a6*x0^2*x1^6"
       " + b0*x0^4*x1^4 + b1*x0^3*x1^5 + b2*x0^2*x1^6 + b3*x0*x1^7 + d0*x1^8",
       "b4*x0*x1^3 + d1*x1^4", "c0*x0^4 + c1*x0^3*x1 + c2*x0^2*x1^2 + c3*x0*x1^3 + g0*x1^4", "d2", "g1", "h0"},
      cx));
  finish(r, special, {8, 4, 4, 0, 0, 0});
  return r;
}

}  // namespace

bool DegenerationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const DegenerationCheck& c) { return c.ok; });
}

std::vector<std::string> degeneration_pairs() { return {"211-220", "220-310", "310-400"}; }

DegenerationReport verify_degeneration(const std::string& pair) {
  std::string p = pair;
  p.erase(std::remove_if(p.begin(), p.end(), [](char c) { return c == '>' || c == ','; }), p.end());
  std::replace(p.begin(), p.end(), '_', '-');
  if (p == "211-220") return degeneration_211_220();
  if (p == "220-310") return degeneration_220_310();
  if (p == "310-400") return degeneration_310_400();
  throw std::invalid_argument("unknown degeneration " + pair + " (expected 211-220, 220-310 or 310-400)");
}

// ---------------------------------------------------------------- (3,1,0) -> (4,0,0)

Hypotheses310 theorem_310_400_hypotheses(const ConicBundle& cb) {
  if (!(cb.weights == Weights{3, 1, 0}) || cb.twist != 0) throw BundleError("a (3,1,0) bundle is required");
  Hypotheses310 h;
  const Poly& s11 = cb.sigma[3];
  const Poly& s12 = cb.sigma[4];
  const Poly& s22 = cb.sigma[5];
  h.s_condition = !(s12 * s12 - s11 * s22).is_zero();
  auto v = coefficient_values(cb);
  h.value = (v["a0"] * v["h0"] - v["c0"] * v["c0"]) * v["d0"] - v["g0"] * v["g0"] * v["a0"];
  h.value_square = h.value != 0 && is_square_rat(h.value);
  return h;
}

}  // namespace cbq
