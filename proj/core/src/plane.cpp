#include "cbq/plane.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cbq/families.hpp"
#include "cbq/linalg.hpp"
#include "cbq/quadforms.hpp"

namespace cbq {

const VarList& plane_vars() {
  static const VarList v{"w0", "w1", "w2"};
  return v;
}

const VarList& space_vars() {
  static const VarList v{"z0", "z1", "z2", "z3"};
  return v;
}

namespace {

Poly W(int i) { return Poly::var("w" + std::to_string(i), plane_vars()); }

std::vector<std::string> coordinate_names(const Poly& f, std::size_t n) {
  if (f.vars().size() < n) throw std::invalid_argument("point has more coordinates than the polynomial has variables");
  std::vector<std::string> names(f.vars().names().begin(), f.vars().names().begin() + n);
  return names;
}

// f moved so that `point` sits at the origin of the chart x_i = 1; returns the
// coefficients grouped by monomials in the coordinates.
std::pair<std::map<Exps, Poly, GrlexDesc>, std::vector<std::string>> localize(const Poly& f,
                                                                              const std::vector<Rat>& point) {
  auto names = coordinate_names(f, point.size());
  std::size_t i = 0;
  while (i < point.size() && point[i] == 0) ++i;
  if (i == point.size()) throw std::invalid_argument("the zero vector is not a projective point");
  std::map<std::string, Poly> images;
  std::vector<std::string> local;
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (j == i) {
      images[names[j]] = Poly::constant(1, f.vars());
    } else {
      images[names[j]] = Poly::var(names[j], f.vars()) + point[j] / point[i];
      local.push_back(names[j]);
    }
  }
  Poly g = f.compose(images);
  return {g.coefficients_in(local), local};
}

int total(const Exps& e) {
  int s = 0;
  for (int x : e) s += x;
  return s;
}

std::vector<Exps> monomials(int nvars, int deg) {
  std::vector<Exps> out;
  if (nvars == 1) return {Exps{deg}};
  for (int a = deg; a >= 0; --a)
    for (auto rest : monomials(nvars - 1, deg - a)) {
      rest.insert(rest.begin(), a);
      out.push_back(rest);
    }
  return out;
}

const std::vector<Exps>& quadric_monomials() {
  // w0², w0w1, w0w2, w1², w1w2, w2²
  static const std::vector<Exps> m = monomials(3, 2);
  return m;
}

Poly mono(const Exps& e, const Rat& c = 1) { return Poly::monomial(plane_vars(), e, c); }

}  // namespace

PlaneCurve PlaneCurve::make(const Poly& p) {
  Poly q = p.trimmed();
  for (const auto& v : q.vars().names())
    if (!plane_vars().contains(v)) throw std::invalid_argument("plane curve in unexpected variable " + v);
  q = q.with_vars(plane_vars());
  if (q.is_zero()) throw std::invalid_argument("plane curve: zero polynomial");
  if (!q.is_homogeneous()) throw std::invalid_argument("plane curve: not homogeneous");
  return PlaneCurve{q.primitive(), q.total_degree()};
}

Poly PlaneCurve::normalized_at(const Poly& p, const Exps& m) {
  Rat c = p.coeff(m);
  if (c == 0) throw std::domain_error("normalizing coefficient vanishes");
  return p * (1 / c);
}

int multiplicity_at(const Poly& f, const std::vector<Rat>& point) {
  if (f.is_zero()) throw std::invalid_argument("multiplicity of the zero polynomial");
  auto [co, local] = localize(f, point);
  int m = -1;
  for (const auto& [e, c] : co) m = (m < 0) ? total(e) : std::min(m, total(e));
  return m;
}

Poly tangent_cone(const Poly& f, const std::vector<Rat>& point) {
  int m = multiplicity_at(f, point);
  auto [co, local] = localize(f, point);
  Poly out(f.vars());
  VarList lv(local);
  for (const auto& [e, c] : co)
    if (total(e) == m) out += Poly::monomial(lv, e, 1).with_vars(merge(lv, c.vars())) * c;
  return out.trimmed();
}

int multiplicity_along_line(const Poly& f, const std::vector<Rat>& p, const std::vector<Rat>& q) {
  int m = -1;
  for (Rat lam : {frac(2, 7), frac(-5, 3)}) {
    std::vector<Rat> x(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) x[i] = p[i] + lam * q[i];
    int k = multiplicity_at(f, x);
    m = (m < 0) ? k : std::min(m, k);
  }
  return m;
}

// ---------------------------------------------------------------- scroll images

SurfaceModel scroll_image(const ConicBundle& cb) {
  const Weights& w = cb.weights;
  auto Z = [](int i) { return Poly::var("z" + std::to_string(i), space_vars()); };
  SurfaceModel out;
  auto d = cb.multidegree();
  auto vars_ok = [&](const Poly& p) {
    for (const auto& v : p.used_vars())
      if (v != "x0" && v != "x1") throw BundleError("scroll_image needs a concrete bundle (found parameter " + v + ")");
  };
  for (const auto& s : cb.sigma) vars_ok(s);
  if (w == Weights{2, 1, 1} && cb.twist == 0) {
    // [x0y0 : x1y0 : y1 : y2]
    std::map<std::string, Poly> xy{{"x0", Z(0)}, {"x1", Z(1)}};
    std::array<Poly, 3> Y{Poly::constant(1, space_vars()), Z(2), Z(3)};
    Poly X(space_vars());
    for (int k = 0; k < 6; ++k) {
      auto [i, j] = kSigmaIndex[k];
      X += cb.sigma[k].compose(xy).trimmed().with_vars(space_vars()) * Y[i] * Y[j];
    }
    out.poly = X;
    out.multiple_lines.push_back({"{z0 = z1 = 0}", {0, 0, 1, 0}, {0, 0, 0, 1}, 2});
  } else if ((w == Weights{2, 2, 0} || w == Weights{4, 0, 0}) && cb.twist == 0) {
    // [x0 : y1 : y2 : 1] on the chart x1 = y0 = 1, homogenized by z3
    std::map<std::string, Poly> xy{{"x0", Z(0)}, {"x1", Z(3)}};
    std::array<Poly, 3> Y{Poly::constant(1, space_vars()), Z(1), Z(2)};
    int D = 0;
    for (int k = 0; k < 6; ++k) {
      auto [i, j] = kSigmaIndex[k];
      if (!cb.sigma[k].is_zero()) D = std::max(D, d[k] + (i > 0) + (j > 0));
    }
    Poly X(space_vars());
    for (int k = 0; k < 6; ++k) {
      auto [i, j] = kSigmaIndex[k];
      int pad = D - d[k] - (i > 0) - (j > 0);
      X += cb.sigma[k].compose(xy).trimmed().with_vars(space_vars()) * Y[i] * Y[j] * Z(3).pow(pad);
    }
    out.poly = X;
    if (w == Weights{2, 2, 0}) {
      out.multiple_lines.push_back({"{z0 = z3 = 0}", {0, 1, 0, 0}, {0, 0, 1, 0}, 4});
      out.multiple_lines.push_back({"{z1 = z3 = 0}", {1, 0, 0, 0}, {0, 0, 1, 0}, 2});
    } else {
      out.multiple_lines.push_back({"{z0 = z3 = 0}", {0, 1, 0, 0}, {0, 0, 1, 0}, 6});
    }
  } else {
    throw BundleError("scroll_image: unsupported type " + w.str() +
                      " (types (2,1,1), (2,2,0), (4,0,0) only; (3,1,0) uses a hyperplane section)");
  }
  out.degree = out.poly.total_degree();
  // record the measured multiplicity, which is what callers check against
  for (auto& l : out.multiple_lines) l.multiplicity = multiplicity_along_line(out.poly, l.p, l.q);
  return out;
}

// ---------------------------------------------------------------- Cremona maps

CremonaMap standard_cremona() {
  return {{W(1) * W(2), W(0) * W(2), W(0) * W(1)}, "coordinate points [1:0:0], [0:1:0], [0:0:1]"};
}

std::vector<Poly> conics_through(const std::vector<Point3>& pts) {
  const auto& ms = quadric_monomials();
  RatMatrix m;
  for (const auto& p : pts) {
    std::vector<Rat> row;
    for (const auto& e : ms) row.push_back(mono(e).eval({{"w0", p[0]}, {"w1", p[1]}, {"w2", p[2]}}));
    m.push_back(row);
  }
  std::vector<Poly> out;
  for (const auto& v : nullspace(m, ms.size())) {
    Poly q(plane_vars());
    for (std::size_t i = 0; i < ms.size(); ++i) q += mono(ms[i], v[i]);
    out.push_back(q.primitive());
  }
  return out;
}

Point3 apply_map(const CremonaMap& m, const Point3& p) {
  std::map<std::string, Rat> at{{"w0", p[0]}, {"w1", p[1]}, {"w2", p[2]}};
  return {m.q[0].eval(at), m.q[1].eval(at), m.q[2].eval(at)};
}

Poly jacobian_determinant(const CremonaMap& m) {
  Mat3<Poly> j;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) j[r][c] = m.q[r].with_vars(plane_vars()).diff("w" + std::to_string(c));
  return det3(j);
}

CremonaMap cremona_inverse(const CremonaMap& m) {
  const auto& q2 = quadric_monomials();
  auto q3 = monomials(3, 3);
  auto q4 = monomials(3, 4);
  std::map<Exps, std::size_t> row_of;
  for (std::size_t i = 0; i < q4.size(); ++i) row_of[q4[i]] = i;
  std::map<std::string, Poly> sub{{"w0", m.q[0].with_vars(plane_vars())},
                                  {"w1", m.q[1].with_vars(plane_vars())},
                                  {"w2", m.q[2].with_vars(plane_vars())}};
  std::vector<Poly> composed;
  for (const auto& e : q2) composed.push_back(mono(e).compose(sub).with_vars(plane_vars()));
  // unknowns: r[k][i] (18), then λ over cubic monomials (10)
  const std::size_t nr = 18, ncols = nr + q3.size(), nrows = 3 * q4.size();
  RatMatrix a(nrows, std::vector<Rat>(ncols, 0));
  for (int k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < q2.size(); ++i)
      for (const auto& [e, c] : composed[i].terms()) a[k * q4.size() + row_of.at(e)][k * 6 + i] += c;
    for (std::size_t j = 0; j < q3.size(); ++j) {
      Exps e = q3[j];
      e[k] += 1;
      a[k * q4.size() + row_of.at(e)][nr + j] -= 1;
    }
  }
  auto ns = nullspace(a, ncols);
  if (ns.size() != 1) throw std::domain_error("quadratic map is not birational (inverse space of dimension " +
                                              std::to_string(ns.size()) + ")");
  CremonaMap inv;
  for (int k = 0; k < 3; ++k) {
    Poly r(plane_vars());
    for (std::size_t i = 0; i < 6; ++i) r += mono(q2[i], ns[0][k * 6 + i]);
    inv.q[k] = r;
  }
  Rat c = 0;
  for (const auto& r : inv.q)
    if (!r.is_zero()) {
      c = r.content();
      break;
    }
  for (auto& r : inv.q) r = r * (1 / c);
  inv.base_description = "inverse of " + m.base_description;
  return inv;
}

PlaneCurve cremona_apply_inverse(const CremonaMap& inv, const PlaneCurve& curve) {
  std::map<std::string, Poly> sub{{"w0", inv.q[0]}, {"w1", inv.q[1]}, {"w2", inv.q[2]}};
  Poly t = curve.poly.compose(sub).with_vars(plane_vars());
  if (t.is_zero()) throw Contracted("contracted: the curve vanishes identically under the map");
  Poly j = jacobian_determinant(inv);
  for (;;) {
    Poly g = gcd(t, j);
    if (g.total_degree() <= 0) break;
    t = *exact_div(t, g);
  }
  if (t.total_degree() <= 0) throw Contracted("contracted: the image of the curve is a point");
  return PlaneCurve::make(t);
}

PlaneCurve cremona_apply(const CremonaMap& m, const PlaneCurve& curve) {
  return cremona_apply_inverse(cremona_inverse(m), curve);
}

// ---------------------------------------------------------------- conics

Poly ConicQ::poly() const {
  const auto& ms = quadric_monomials();  // w0², w0w1, w0w2, w1², w1w2, w2²
  static const int order[6] = {0, 1, 3, 2, 4, 5};  // ConicQ index -> ms index
  Poly p(plane_vars());
  for (int i = 0; i < 6; ++i) p += mono(ms[order[i]], c[i]);
  return p;
}

ConicQ ConicQ::from_poly(const Poly& p) {
  Poly q = p.trimmed();
  for (const auto& v : q.vars().names())
    if (!plane_vars().contains(v)) throw std::invalid_argument("conic in unexpected variable " + v);
  q = q.with_vars(plane_vars());
  if (q.is_zero() || !q.is_homogeneous() || q.total_degree() != 2)
    throw std::invalid_argument("not a ternary quadric: " + p.str());
  const auto& ms = quadric_monomials();
  static const int order[6] = {0, 1, 3, 2, 4, 5};
  ConicQ out;
  for (int i = 0; i < 6; ++i) out.c[i] = q.coeff(ms[order[i]]);
  return out;
}

ConicQ ConicQ::parse(const std::string& csv) {
  ConicQ out;
  std::stringstream ss(csv);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }),
               item.end());
    if (i >= 6) throw std::invalid_argument("conic needs exactly six coefficients");
    out.c[i++] = parse_rat(item);
  }
  if (i != 6) throw std::invalid_argument("conic needs exactly six coefficients");
  if (std::all_of(out.c.begin(), out.c.end(), [](const Rat& x) { return x == 0; }))
    throw std::invalid_argument("conic is identically zero");
  return out;
}

Rat ConicQ::eval(const Point3& p) const {
  return c[0] * p[0] * p[0] + c[1] * p[0] * p[1] + c[2] * p[1] * p[1] + c[3] * p[0] * p[2] + c[4] * p[1] * p[2] +
         c[5] * p[2] * p[2];
}

namespace {
QuadraticForm3<Rat> form(const ConicQ& c) { return {{c.c[0], c.c[1], c.c[3], c.c[2], c.c[4], c.c[5]}}; }
}  // namespace

Rat ConicQ::discriminant() const { return form(*this).delta(); }

std::string ConicQ::str() const {
  std::string s;
  for (int i = 0; i < 6; ++i) s += (i ? "," : "") + to_string(c[i]);
  return s;
}

std::string place_str(const Int& p) { return p == 0 ? "inf" : to_string(p); }

namespace {

// Integer in the square class of q ≠ 0.
Int square_class_int(const Rat& q) { return q.get_num() * q.get_den(); }

int valuation_int(Int& z, const Int& p) {
  int v = 0;
  while (z % p == 0) {
    z /= p;
    ++v;
  }
  return v;
}

int legendre_big(const Int& a, const Int& p) { return mpz_legendre(Int(a % p).get_mpz_t(), p.get_mpz_t()); }

}  // namespace

int hilbert_symbol(const Rat& a, const Rat& b, const Int& p) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: arguments must be nonzero");
  if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
  Int u = square_class_int(a), v = square_class_int(b);
  int al = valuation_int(u, p), be = valuation_int(v, p);
  if (p == 2) {
    auto eps = [](const Int& x) { return Int(((x % 4) + 4) % 4) == 3 ? 1 : 0; };
    auto omega = [](const Int& x) {
      Int r = ((x % 8) + 8) % 8;
      return (r == 3 || r == 5) ? 1 : 0;
    };
    int e = eps(u) * eps(v) + al * omega(v) + be * omega(u);
    return e % 2 ? -1 : 1;
  }
  int s = 1;
  if ((al * be) % 2 && Int(p % 4) == 3) s = -s;
  if (be % 2) s *= legendre_big(u, p);
  if (al % 2) s *= legendre_big(v, p);
  return s;
}

std::vector<Int> relevant_places(const Rat& a, const Rat& b) {
  std::vector<Int> out{0, 2};
  for (const Int& z : {Int(a.get_num()), Int(a.get_den()), Int(b.get_num()), Int(b.get_den())})
    for (const auto& [p, e] : factor_integer(z))
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  std::sort(out.begin() + 1, out.end());
  return out;
}

namespace {

std::array<Int, 3> primitive_point(const Point3& p) {
  Int l = 1;
  for (const auto& x : p) l = lcm(l, Int(x.get_den()));
  std::array<Int, 3> z;
  Int g = 0;
  for (int i = 0; i < 3; ++i) {
    z[i] = Int(p[i] * l);
    g = gcd(g, z[i]);
  }
  for (auto& x : z) x /= g;
  for (const auto& x : z)
    if (x != 0) {
      if (x < 0)
        for (auto& y : z) y = -y;
      break;
    }
  return z;
}

Point3 to_point(const std::array<Int, 3>& z) { return {Rat(z[0]), Rat(z[1]), Rat(z[2])}; }

// Small-height points in the original coordinates, ordered by height.
std::optional<std::array<Int, 3>> direct_search(const ConicQ& c, long h_max) {
  Int l = 1;
  for (const auto& x : c.c) l = lcm(l, Int(x.get_den()));
  std::array<long, 6> k;
  for (int i = 0; i < 6; ++i) {
    Int v = Int(Rat(c.c[i] * l));
    if (!v.fits_slong_p() || abs(v) > Int(1L << 40)) return std::nullopt;
    k[i] = v.get_si();
  }
  auto val = [&](long x, long y, long z) {
    __int128 s = (__int128)k[0] * x * x + (__int128)k[1] * x * y + (__int128)k[2] * y * y +
                 (__int128)k[3] * x * z + (__int128)k[4] * y * z + (__int128)k[5] * z * z;
    return s;
  };
  // within a height, points with more zero coordinates come first
  for (long h = 1; h <= h_max; ++h)
    for (int nonzero = 1; nonzero <= 3; ++nonzero)
      for (long x = h; x >= 0; --x)
        for (long y = h; y >= -h; --y)
          for (long z = h; z >= -h; --z) {
            if (std::max({std::labs(x), std::labs(y), std::labs(z)}) != h) continue;
            if ((x != 0) + (y != 0) + (z != 0) != nonzero) continue;
            if (x == 0 && (y < 0 || (y == 0 && z < 0))) continue;
            if (std::gcd(std::gcd(x, std::labs(y)), std::labs(z)) != 1) continue;
            if (val(x, y, z) == 0) return std::array<Int, 3>{Int(x), Int(y), Int(z)};
          }
  return std::nullopt;
}

// Removes square factors: q = s²·r; returns (r, s).
std::pair<Int, Int> squarefree_split(const Int& q) {
  Int r = q < 0 ? Int(-1) : Int(1), s = 1;
  for (const auto& [p, e] : factor_integer(q)) {
    for (int i = 0; i < e / 2; ++i) s *= p;
    if (e % 2) r *= p;
  }
  return {r, s};
}

std::optional<Int> isqrt_exact(const Int& n) {
  if (n < 0) return std::nullopt;
  Int r = sqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

}  // namespace

ConicPoint conic_has_point(const ConicQ& c, std::uint64_t height_bound) {
  if (std::all_of(c.c.begin(), c.c.end(), [](const Rat& x) { return x == 0; }))
    throw std::invalid_argument("conic is identically zero");
  ConicPoint out;
  auto found = [&](const Point3& p, const std::string& note) {
    out.status = ConicPoint::Status::Point;
    out.point = primitive_point(p);
    if (c.eval(to_point(*out.point)) != 0) throw std::logic_error("conic_has_point: point check failed");
    out.note = note;
    return out;
  };
  auto q = form(c);
  auto g = q.gram();
  RatMatrix gm{{g[0][0], g[0][1], g[0][2]}, {g[1][0], g[1][1], g[1][2]}, {g[2][0], g[2][1], g[2][2]}};
  std::size_t r = rank(gm);
  if (r < 3) {
    auto ns = nullspace(gm, 3);
    out.status = ConicPoint::Status::Degenerate;
    out.point = primitive_point({ns[0][0], ns[0][1], ns[0][2]});
    if (r == 1) {
      out.note = "rank 1: a double line; the returned point lies on it";
    } else {
      // the two lines are defined over Q iff −(product of the two nonzero eigen-directions) is a square
      Rat m = 0;
      for (int i = 0; i < 3 && m == 0; ++i)
        for (int j = i + 1; j < 3 && m == 0; ++j) m = g[i][i] * g[j][j] - g[i][j] * g[i][j];
      out.note = is_square_rat(-m) ? "rank 2: splits into two lines over Q; the returned point is their intersection"
                                   : "rank 2: two conjugate lines; the returned point is their intersection";
    }
    return out;
  }
  // rational points visible without any work
  if (c.c[0] == 0) return found({1, 0, 0}, "coordinate point");
  if (c.c[2] == 0) return found({0, 1, 0}, "coordinate point");
  if (c.c[5] == 0) return found({0, 0, 1}, "coordinate point");

  static const std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}}};
  std::optional<DiagonalForm<Rat>> diag;
  std::array<int, 3> used{};
  for (const auto& p : perms) {
    auto qp = permute(q, p);
    Rat disc = 4 * qp.alpha[0] * qp.alpha[3] - qp.alpha[1] * qp.alpha[1];
    if (disc == 0) {
      // the binary restriction is a square of a rational linear form
      Point3 y{-qp.alpha[1], 2 * qp.alpha[0], 0}, w;
      for (int i = 0; i < 3; ++i) w[p[i]] = y[i];
      return found(w, "zero of a degenerate binary restriction");
    }
    diag = diagonalize(qp);
    used = p;
    break;
  }
  const auto& d = diag->d;
  Rat a = -d[0] / d[2], b = -d[1] / d[2];
  int product = 1;
  for (const Int& v : relevant_places(a, b)) {
    int s = hilbert_symbol(a, b, v);
    product *= s;
    if (s < 0) out.obstructed_at.push_back(v);
  }
  if (product != 1) throw std::logic_error("Hilbert symbols violate the product formula");
  if (!out.obstructed_at.empty()) {
    out.status = ConicPoint::Status::Obstructed;
    out.note = "locally obstructed";
    return out;
  }
  if (auto p = direct_search(c, std::min<long>(20, static_cast<long>(height_bound))))
    return found(to_point(*p), "small-height search");
  // d0 X² + d1 Y² + d2 Z² = 0 with square-free integer coefficients
  Int den = 1;
  for (const auto& x : d) den = lcm(den, Int(x.get_den()));
  std::array<Int, 3> k, s;
  for (int i = 0; i < 3; ++i) std::tie(k[i], s[i]) = squarefree_split(Int(d[i] * den));
  for (std::uint64_t h = 0; h <= height_bound; ++h) {
    out.height_searched = h;
    for (long x = -static_cast<long>(h); x <= static_cast<long>(h); ++x)
      for (long z : {-static_cast<long>(h), static_cast<long>(h)})
        for (int swap = 0; swap < 2; ++swap) {
          long X = swap ? z : x, Z = swap ? x : z;
          if (swap && (std::labs(x) == static_cast<long>(h))) continue;  // corners once
          if (X == 0 && Z == 0) continue;
          Int num = -(k[0] * X * X + k[2] * Z * Z);
          if (num % k[1] != 0) continue;
          auto y = isqrt_exact(Int(num / k[1]));
          if (!y) continue;
          Point3 v{Rat(X) / s[0], Rat(*y) / s[1], Rat(Z) / s[2]}, yp, w;
          for (int i = 0; i < 3; ++i) {
            yp[i] = 0;
            for (int j = 0; j < 3; ++j) yp[i] += diag->basis[i][j] * v[j];
          }
          for (int i = 0; i < 3; ++i) w[used[i]] = yp[i];
          return found(w, "search on the diagonal model");
        }
  }
  out.status = ConicPoint::Status::Undecided;
  out.note = "locally solvable everywhere, no point up to height " + std::to_string(height_bound);
  return out;
}

// ---------------------------------------------------------------- U¹² chain

CremonaMap u12_phi1() {
  return {{W(0) * W(0) + W(0) * W(2), W(0) * W(1), W(1) * W(2)}, "conics through [0:1:0], [0:0:1], [1:0:-1]"};
}

CremonaMap u12_phi2() {
  Poly w22 = W(2) * W(2);
  return {{W(0) * W(1) - 2 * w22, W(0) * W(2) - 2 * w22, W(1) * W(2) - w22},
          "conics through [2:1:1], [0:1:0], [1:0:0]"};
}

CremonaMap u12_phi3() {
  return {{W(0) * W(0) - 2 * W(0) * W(2) + 2 * W(1) * W(2), W(1) * W(1), W(0) * W(1)},
          "[-2(w0-w1)w2 + w0^2, w1^2, w0w1]"};
}

Rat u12_delta(const ConicBundle& cb) {
  auto v = coefficient_values(cb);
  return v["a4"] + 2 * v["a6"] + frac(1, 2) * (v["b2"] + v["c2"]) + frac(1, 4) * (v["d0"] + v["g0"] + v["h0"]);
}

ConicQ u12_predicted_conic(const ConicBundle& cb) {
  auto v = coefficient_values(cb);
  Rat D = u12_delta(cb);
  if (D == 0) throw std::domain_error("Delta = 0");
  const Rat h = frac(1, 2);
  return {{1, -v["a5"] / D, v["a6"] / D, (-2 * v["a4"] + v["a5"] - 4 * v["a6"] - h * v["b2"] - h * v["c2"]) / D,
           (v["a5"] - 2 * v["a6"]) / D, (v["a4"] - v["a5"] + 3 * v["a6"]) / D}};
}

U12Chain chain_U12(const ConicBundle& cb) {
  if (!(cb.weights == Weights{4, 0, 0}) || cb.twist != 0) throw BundleError("chain_U12 needs a (4,0,0) bundle");
  if (!cb.params.empty()) throw BundleError("chain_U12 needs a concrete bundle");
  auto bad = violated_relations(locus("U12"), cb);
  auto v = coefficient_values(cb);
  if (v["b3"] + v["c3"] != 0) bad.push_back("b3 = -c3 (tangency of H at p3)");
  if (!bad.empty()) throw BundleError("relation violated: " + bad.front());
  U12Chain out;
  out.delta = u12_delta(cb);
  if (out.delta == 0) throw std::domain_error("Delta = 0");
  out.X8 = scroll_image(cb);
  auto pw = [](int i) { return Poly::var("w" + std::to_string(i), plane_vars()); };
  Poly c = out.X8.poly.compose({{"z0", pw(0)}, {"z1", pw(1)}, {"z2", pw(1)}, {"z3", pw(2)}});
  out.C = PlaneCurve::make(c);
  out.C.poly = PlaneCurve::normalized_at(out.C.poly, {8, 0, 0});
  const std::vector<std::vector<Rat>> pts{{1, 0, -1}, {0, 0, 1}, {1, 1, 1}, {0, 1, 0}};
  for (int i = 0; i < 4; ++i) out.multiplicities[i] = multiplicity_at(out.C.poly, pts[i]);
  out.tangent_cone_q = tangent_cone(out.C.poly, pts[3]);
  out.C1 = cremona_apply(u12_phi1(), out.C);
  out.C1.poly = PlaneCurve::normalized_at(out.C1.poly, {2, 4, 0});
  out.C2 = cremona_apply(u12_phi2(), out.C1);
  out.C2.poly = PlaneCurve::normalized_at(out.C2.poly, {4, 0, 0});
  out.C3 = cremona_apply(u12_phi3(), out.C2);
  out.C3.poly = PlaneCurve::normalized_at(out.C3.poly, {2, 0, 0});
  out.degrees = {out.C.degree, out.C1.degree, out.C2.degree, out.C3.degree};
  out.conic = ConicQ::from_poly(out.C3.poly);
  auto pred = u12_predicted_conic(cb);
  out.conic_matches_prediction = out.conic.c == pred.c;
  return out;
}

// ---------------------------------------------------------------- bitangent plane section

TangentSection433222 tangent_2section_433222(const ConicBundle& cb) {
  if (!(cb.weights == Weights{2, 1, 1}) || cb.twist != 0) throw BundleError("tangent section needs a (2,1,1) bundle");
  auto v = coefficient_values(cb);
  for (const char* n : {"a0", "a1", "a3", "a4"})
    if (v[n] != 0) throw BundleError(std::string("hypothesis fails: ") + n + " != 0");
  if (v["b0"] == 0) throw BundleError("hypothesis fails: b0 = 0");
  if (v["b0"] * v["c3"] - v["c0"] * v["b3"] != 0) throw BundleError("tangency condition fails: b0*c3 - c0*b3 != 0");

  TangentSection433222 out;
  out.X4 = scroll_image(cb);
  const Poly& X = out.X4.poly;
  auto grad = [&](const std::vector<Rat>& p) {
    std::map<std::string, Rat> at;
    for (int i = 0; i < 4; ++i) at["z" + std::to_string(i)] = p[i];
    std::vector<Rat> g;
    for (int i = 0; i < 4; ++i) g.push_back(X.diff("z" + std::to_string(i)).eval(at));
    return g;
  };
  std::vector<Rat> p1{1, 0, 0, 0}, p2{0, 1, 0, 0};
  auto g1 = grad(p1), g2 = grad(p2);
  if (rank(RatMatrix{g1, g2}) != 1) throw BundleError("tangent planes at p' and q' differ");
  Poly plane(space_vars());
  const auto& gp = std::any_of(g1.begin(), g1.end(), [](const Rat& x) { return x != 0; }) ? g1 : g2;
  for (int i = 0; i < 4; ++i) plane += Poly::var("z" + std::to_string(i), space_vars()) * gp[i];
  out.tangent_plane = plane.primitive();
  Rat b0 = v["b0"], c0 = v["c0"];
  out.double_points = {p1, p2, {0, 0, c0, -b0}};
  if (out.double_points[2][2] < 0 || (out.double_points[2][2] == 0 && out.double_points[2][3] < 0))
    for (auto& x : out.double_points[2]) x = -x;

  auto pw = [](int i) { return Poly::var("w" + std::to_string(i), plane_vars()); };
  Poly c4;
  if (c0 != 0) {
    out.plane_coordinates = "(w0,w1,w2) = (z0,z1,z2), z3 = -(b0/c0) z2";
    c4 = X.compose({{"z0", pw(0)}, {"z1", pw(1)}, {"z2", pw(2)}, {"z3", pw(2) * (-b0 / c0)}});
  } else {
    out.plane_coordinates = "(w0,w1,w2) = (z0,z1,z3), z2 = 0";
    c4 = X.compose({{"z0", pw(0)}, {"z1", pw(1)}, {"z2", Poly::constant(0, plane_vars())}, {"z3", pw(2)}});
  }
  out.C4 = PlaneCurve::make(c4);
  for (const std::vector<Rat>& p : {std::vector<Rat>{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})
    out.multiplicities.push_back(multiplicity_at(out.C4.poly, p));
  if (*std::max_element(out.multiplicities.begin(), out.multiplicities.end()) >= 3)
    throw std::domain_error("C4 has a triple point: it splits into two sections, so the bundle is rational");
  // base points are the coordinate points; this labelling lists the image
  // coefficients of C4 in reverse monomial order
  auto pw0 = pw(0), pw1 = pw(1), pw2 = pw(2);
  CremonaMap crem{{pw0 * pw1, pw0 * pw2, pw1 * pw2}, "[w0w1 : w0w2 : w1w2]"};
  PlaneCurve img = cremona_apply(crem, out.C4);
  if (img.degree != 2) throw std::domain_error("C4 does not map to a conic (image degree " + std::to_string(img.degree) + ")");
  Poly p = img.poly;
  if (p.coeff({2, 0, 0}) != 0) p = PlaneCurve::normalized_at(p, {2, 0, 0});
  out.image = ConicQ::from_poly(p);
  return out;
}

ConicBundle u12_admissible_member(Rng& rng) {
  const auto spec = locus("U12");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto v = coefficient_values(locus_member(spec, rng));
    v["b3"] = -v["c3"];
    for (const auto& [n, e] : spec.solved) v[n] = e.eval(v);
    auto cb = instantiate({4, 0, 0}, v);
    if (violated_relations(spec, cb).empty() && u12_delta(cb) != 0) return cb;
  }
  throw std::runtime_error("u12_admissible_member: no admissible sample");
}

}  // namespace cbq
