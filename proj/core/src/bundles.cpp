#include "cbq/bundles.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "cbq/upoly.hpp"

namespace cbq {

std::string Weights::str() const {
  return "(" + std::to_string(a0) + "," + std::to_string(a1) + "," + std::to_string(a2) + ")";
}

Weights parse_weights(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::replace(s.begin(), s.end(), '(', ' ');
  std::replace(s.begin(), s.end(), ')', ' ');
  std::istringstream is(s);
  Weights w;
  std::string rest;
  if (!(is >> w.a0 >> w.a1 >> w.a2) || (is >> rest))
    throw BundleError("weights must be three integers: '" + std::string(text) + "'");
  return w;
}

std::string sigma_name(int k) {
  auto [i, j] = kSigmaIndex[k];
  return "sigma" + std::to_string(i) + std::to_string(j);
}

std::string multidegree_str(const Multidegree& d) {
  std::string s = "(";
  for (int k = 0; k < 6; ++k) s += (k ? "," : "") + std::to_string(d[k]);
  return s + ")";
}

Multidegree multidegree_of(const Weights& w, int m) {
  Multidegree d;
  for (int k = 0; k < 6; ++k) d[k] = w[kSigmaIndex[k].first] + w[kSigmaIndex[k].second] + m;
  return d;
}

VarList ConicBundle::vars() const {
  std::vector<std::string> v{"x0", "x1"};
  v.insert(v.end(), params.begin(), params.end());
  return VarList(std::move(v));
}

int ConicBundle::discriminant_degree() const {
  auto d = multidegree();
  return d[0] + d[3] + d[5];
}

Poly ConicBundle::equation() const {
  std::vector<std::string> names = vars().names();
  for (const char* y : {"y0", "y1", "y2"}) names.emplace_back(y);
  VarList v(names);
  Poly eq(v);
  for (int k = 0; k < 6; ++k) {
    auto [i, j] = kSigmaIndex[k];
    eq += sigma[k].with_vars(v) * Poly::var("y" + std::to_string(i), v) * Poly::var("y" + std::to_string(j), v);
  }
  return eq;
}

std::string ConicBundle::to_text() const {
  std::ostringstream os;
  os << "weights = " << weights.a0 << " " << weights.a1 << " " << weights.a2 << "\n";
  if (!params.empty()) {
    os << "params =";
    for (const auto& p : params) os << " " << p;
    os << "\n";
  }
  for (int k = 0; k < 6; ++k) os << sigma_name(k) << " = " << sigma[k].str() << "\n";
  return os.str();
}

namespace {
std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
}  // namespace

ConicBundle parse_bundle(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::optional<Weights> weights;
  std::vector<std::string> params;
  std::map<std::string, std::pair<std::string, int>> sig;  // name -> (text, line)
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw BundleError("line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "weights") {
      weights = parse_weights(val);
    } else if (key == "params") {
      std::istringstream ps(val);
      std::string p;
      while (ps >> p) {
        if (p == "x0" || p == "x1" || p == "t" || p[0] == 'y')
          throw BundleError("line " + std::to_string(lineno) + ": reserved parameter name " + p);
        params.push_back(p);
      }
    } else if (key.rfind("sigma", 0) == 0) {
      bool known = false;
      for (int k = 0; k < 6; ++k) known |= key == sigma_name(k);
      if (!known) throw BundleError("line " + std::to_string(lineno) + ": unknown key " + key);
      sig[key] = {val, lineno};
    } else {
      throw BundleError("line " + std::to_string(lineno) + ": unknown key " + key);
    }
  }
  if (!weights) throw BundleError("missing 'weights' line");
  ConicBundle cb;
  cb.weights = *weights;
  cb.params = params;
  VarList v = cb.vars();
  for (int k = 0; k < 6; ++k) {
    auto it = sig.find(sigma_name(k));
    if (it == sig.end()) throw BundleError("missing " + sigma_name(k));
    try {
      cb.sigma[k] = Poly::parse(it->second.first, v);
    } catch (const ParseError& e) {
      throw BundleError("line " + std::to_string(it->second.second) + ": " + sigma_name(k) + ": " + e.what());
    }
  }
  return cb;
}

ConicBundle load_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BundleError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_bundle(ss.str());
}

Validation validate_bundle(const ConicBundle& cb) {
  const Weights& w = cb.weights;
  if (!(w.a0 >= w.a1 && w.a1 >= w.a2))
    throw BundleError("weights " + w.str() + " must satisfy a0 >= a1 >= a2");
  const std::vector<std::string> xs{"x0", "x1"};
  std::array<std::optional<int>, 6> m;
  std::map<int, int> votes;
  for (int k = 0; k < 6; ++k) {
    const Poly& s = cb.sigma[k];
    for (const auto& v : s.used_vars())
      if (v != "x0" && v != "x1" && std::find(cb.params.begin(), cb.params.end(), v) == cb.params.end())
        throw BundleError(sigma_name(k) + " uses undeclared variable " + v);
    if (s.is_zero()) continue;
    auto d = s.homogeneous_degree(xs);
    if (!d) throw BundleError(sigma_name(k) + " is not homogeneous in x0, x1");
    auto [i, j] = kSigmaIndex[k];
    m[k] = *d - w[i] - w[j];
    ++votes[*m[k]];
  }
  if (votes.empty()) throw BundleError("all sigma_ij are zero");
  int mode = std::max_element(votes.begin(), votes.end(), [](auto& a, auto& b) {
               return a.second < b.second;
             })->first;
  // Prefer the twist given by σ00 on ties; it carries the top weight.
  if (m[0] && votes[*m[0]] == votes[mode]) mode = *m[0];
  for (int k = 0; k < 6; ++k)
    if (m[k] && *m[k] != mode) {
      auto [i, j] = kSigmaIndex[k];
      throw BundleError("degree mismatch: " + sigma_name(k) + " has degree " +
                        std::to_string(*m[k] + w[i] + w[j]) + ", expected " +
                        std::to_string(mode + w[i] + w[j]));
    }
  Validation out;
  out.bundle = cb;
  out.original_twist = mode;
  out.bundle.twist = mode;
  if (mode % 2 == 0 && mode != 0) {
    int k = mode / 2;
    Weights nw{w.a0 + k, w.a1 + k, w.a2 + k};
    if (nw.a2 < 0) throw BundleError("twist would make weights negative: " + nw.str());
    out.bundle.weights = nw;
    out.bundle.twist = 0;
    out.twist_shift = k;
    out.notes.push_back("re-twisted by O(" + std::to_string(k) + "): weights " + w.str() + " -> " + nw.str());
  } else if (mode % 2 != 0) {
    out.notes.push_back("odd twist m = " + std::to_string(mode) + " kept (no normalization to m = 0)");
  }
  if (out.bundle.weights.a2 < 0) throw BundleError("weights must be non-negative");
  out.bundle.rational_by_section = false;
  for (int k : {0, 3, 5})
    if (cb.sigma[k].is_zero()) {
      out.bundle.rational_by_section = true;
      out.notes.push_back(sigma_name(k) + " = 0: rational-by-section");
    }
  return out;
}

QuadraticForm3<Poly> form_of(const ConicBundle& cb) {
  VarList v = cb.vars();
  QuadraticForm3<Poly> q;
  for (int k = 0; k < 6; ++k) q.alpha[k] = cb.sigma[k].with_vars(v);
  return q;
}

Poly affine(const Poly& p) {
  std::vector<std::string> names{"t"};
  for (const auto& n : p.vars().names())
    if (n != "x0" && n != "x1" && n != "t") names.push_back(n);
  VarList v(names);
  Poly q = p.subs({{"x1", Rat(1)}});
  return q.compose({{"x0", Poly::var("t", v)}}).with_vars(v);
}

DiscriminantData discriminant(const ConicBundle& cb) {
  DiscriminantData d;
  d.delta_homogeneous = form_of(cb).delta();
  d.delta_affine = affine(d.delta_homogeneous);
  d.degenerate = d.delta_homogeneous.is_zero();
  d.degree = d.degenerate ? -1 : *d.delta_homogeneous.homogeneous_degree({"x0", "x1"});
  return d;
}

QuadraticForm3<Rat> fiber_at(const ConicBundle& cb, const Rat& x0, const Rat& x1) {
  if (x0 == 0 && x1 == 0) throw BundleError("fiber_at: (0,0) is not a point of P^1");
  QuadraticForm3<Rat> q;
  for (int k = 0; k < 6; ++k) q.alpha[k] = cb.sigma[k].eval({{"x0", x0}, {"x1", x1}});
  return q;
}

// ---------------------------------------------------------------- counts

std::vector<TypeEntry> multidegrees_for_discriminant(int n) {
  std::vector<TypeEntry> out;
  if (n < 0) return out;
  for (int d00 = n; d00 >= 0; --d00)
    for (int d11 = std::min(d00, n - d00); d11 >= 0; --d11) {
      int d22 = n - d00 - d11;
      if (d22 > d11 || d22 < 0) continue;
      if ((d00 - d11) % 2 || (d11 - d22) % 2) continue;
      TypeEntry e;
      if (n % 2 == 0) {
        e.weights = {d00 / 2, d11 / 2, d22 / 2};
        e.twist = 0;
      } else {
        e.weights = {(d00 - d22) / 2, (d11 - d22) / 2, 0};
        e.twist = d22;
      }
      e.degrees = multidegree_of(e.weights, e.twist);
      out.push_back(e);
    }
  return out;
}

std::uint64_t alcuin_count(int n) {
  if (n < 0) return 0;
  std::vector<std::uint64_t> c(n + 1, 0);
  c[0] = 1;
  for (int part : {2, 3, 4})
    for (int i = part; i <= n; ++i) c[i] += c[i - part];
  return c[n];
}

std::uint64_t alcuin_closed_form(int n) {
  // rd(m²/12) − ⌊m/4⌋⌊(m+2)/4⌋ counts q^{m−3}.
  std::int64_t m = n + 3;
  std::int64_t rd = (m * m + 6) / 12;
  return static_cast<std::uint64_t>(rd - (m / 4) * ((m + 2) / 4));
}

std::string Blowup::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < degrees.size(); ++i) s += (i ? "," : "") + std::to_string(degrees[i]);
  return s + "; " + std::to_string(last) + ")";
}

Blowup blowup_multidegree(int d, int m, int h, int n) {
  if (m < 0 || m > d || h < 0 || h > n) throw std::out_of_range("blowup_multidegree: parameter out of range");
  auto binom = [](int a, int b) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), a, b);
    return static_cast<int>(r.get_si());
  };
  Blowup b;
  b.degrees.push_back(d);
  for (int k = 1; k <= d - m; ++k)
    for (int r = 0; r < binom(h + k, k); ++r) b.degrees.push_back(d - k);
  b.last = d - m;
  b.exceptional = {m, d - m};
  return b;
}

// ---------------------------------------------------------------- generic members

std::vector<std::string> coefficient_names(const Weights& w, int k, Naming naming) {
  static const char* standard = "abcdgh";
  int deg = multidegree_of(w)[k];
  std::vector<std::string> out;
  if (naming == Naming::Mestre) {
    if (!(w == Weights{4, 0, 0})) throw BundleError("Mestre naming applies to type (4,0,0) only");
    static const char* letters = "abd";
    if (k == 3 || k == 4 || k == 5) return {"c" + std::to_string(k - 3)};
    char l = letters[k];
    for (int i = 0; i <= deg; ++i) out.push_back(std::string(1, l) + std::to_string(i));
    return out;
  }
  for (int i = 0; i <= deg; ++i) out.push_back(std::string(1, standard[k]) + std::to_string(i));
  return out;
}

std::vector<std::string> all_coefficient_names(const Weights& w, Naming naming) {
  std::vector<std::string> out;
  for (int k = 0; k < 6; ++k) {
    auto n = coefficient_names(w, k, naming);
    out.insert(out.end(), n.begin(), n.end());
  }
  return out;
}

namespace {
Poly binary_form(const VarList& v, int deg, const std::vector<Poly>& coeffs) {
  Poly p(v);
  auto i0 = *v.index("x0"), i1 = *v.index("x1");
  for (int i = 0; i <= deg; ++i) {
    Exps e(v.size(), 0);
    e[i0] = deg - i;
    e[i1] = i;
    p += coeffs[i] * Poly::monomial(v, e);
  }
  return p;
}
}  // namespace

ConicBundle symbolic_bundle(const Weights& w, Naming naming) {
  ConicBundle cb;
  cb.weights = w;
  cb.params = all_coefficient_names(w, naming);
  VarList v = cb.vars();
  auto d = multidegree_of(w);
  for (int k = 0; k < 6; ++k) {
    std::vector<Poly> cs;
    for (const auto& n : coefficient_names(w, k, naming)) cs.push_back(Poly::var(n, v));
    cb.sigma[k] = binary_form(v, d[k], cs);
  }
  return cb;
}

ConicBundle instantiate(const Weights& w, const std::map<std::string, Rat>& values, Naming naming) {
  ConicBundle cb;
  cb.weights = w;
  VarList v = cb.vars();
  auto d = multidegree_of(w);
  for (int k = 0; k < 6; ++k) {
    std::vector<Poly> cs;
    for (const auto& n : coefficient_names(w, k, naming)) {
      auto it = values.find(n);
      cs.push_back(Poly::constant(it == values.end() ? Rat(0) : it->second, v));
    }
    cb.sigma[k] = binary_form(v, d[k], cs);
  }
  cb.rational_by_section = cb.sigma[0].is_zero() || cb.sigma[3].is_zero() || cb.sigma[5].is_zero();
  return cb;
}

std::map<std::string, Rat> coefficient_values(const ConicBundle& cb, Naming naming) {
  std::map<std::string, Rat> out;
  auto d = cb.multidegree();
  for (int k = 0; k < 6; ++k) {
    auto names = coefficient_names(cb.weights, k, naming);
    const Poly& s = cb.sigma[k];
    auto i0 = *s.vars().index("x0"), i1 = *s.vars().index("x1");
    for (int i = 0; i <= d[k]; ++i) {
      Exps e(s.vars().size(), 0);
      e[i0] = d[k] - i;
      e[i1] = i;
      out[names[i]] = s.coeff(e);
    }
  }
  return out;
}

bool has_good_discriminant(const ConicBundle& cb) {
  if (cb.sigma[0].is_zero() || cb.sigma[3].is_zero() || cb.sigma[5].is_zero()) return false;
  Poly da = discriminant(cb).delta_affine;
  if (da.used_vars().size() > 1) return false;
  UPoly f = UPoly::from_poly(da, "t");
  if (f.degree() != cb.discriminant_degree()) return false;
  return gcd(f, f.derivative()).degree() == 0;
}

ConicBundle random_bundle(const Weights& w, Rng& rng, int attempts) {
  std::uniform_int_distribution<int> coef(-9, 9);
  auto names = all_coefficient_names(w);
  for (int a = 0; a < attempts; ++a) {
    std::map<std::string, Rat> vals;
    for (const auto& n : names) vals[n] = coef(rng);
    ConicBundle cb = instantiate(w, vals);
    if (has_good_discriminant(cb)) return cb;
  }
  throw BundleError("random_bundle: no admissible sample in " + std::to_string(attempts) + " attempts");
}

}  // namespace cbq
