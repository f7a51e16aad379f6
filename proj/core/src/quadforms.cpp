#include "cbq/quadforms.hpp"

#include <algorithm>

namespace cbq {

QuadraticForm3<RatFunc> generic_fiber(const ConicBundle& cb) {
  QuadraticForm3<RatFunc> q;
  for (int k = 0; k < 6; ++k) q.alpha[k] = RatFunc(affine(cb.sigma[k]));
  return q;
}

std::pair<RatFunc, RatFunc> square_class(const RatFunc& r, const std::string& var) {
  if (r.is_zero()) throw std::domain_error("square_class of zero");
  UPoly n = UPoly::from_poly(r.num(), var), d = UPoly::from_poly(r.den(), var);
  UPoly nd = n * d;
  Rat c = nd.lc();
  Rat cls = square_class_rep(c);
  UPoly rep = UPoly::constant(cls), half = UPoly::constant(1);
  for (const auto& [g, m] : squarefree_decompose(nd)) {
    if (m % 2) rep = rep * g;
    for (int i = 0; i < m / 2; ++i) half = half * g;
  }
  Rat root = *rat_sqrt(cls / c);
  VarList v{var};
  RatFunc s(d.to_poly(var, v) * root, half.to_poly(var, v));
  return {RatFunc(rep.to_poly(var, v)), s};
}

BrauerPair brauer_pair(const RatFunc& a, const RatFunc& b, bool normalize) {
  BrauerPair bp;
  bp.raw_a = a;
  bp.raw_b = b;
  bp.a = a;
  bp.b = b;
  bp.scale_a = RatFunc(Rat(1));
  bp.scale_b = RatFunc(Rat(1));
  auto univariate = [](const RatFunc& r) {
    auto u1 = r.num().used_vars(), u2 = r.den().used_vars();
    for (const auto& v : u1)
      if (v != "t") return false;
    for (const auto& v : u2)
      if (v != "t") return false;
    return true;
  };
  if (normalize && univariate(a) && univariate(b)) {
    std::tie(bp.a, bp.scale_a) = square_class(a);
    std::tie(bp.b, bp.scale_b) = square_class(b);
    bp.normalized = true;
  }
  return bp;
}

BrauerPair brauer_model(const ConicBundle& cb, bool normalize) {
  QuadraticForm3<RatFunc> q = generic_fiber(cb);
  std::array<int, 3> perm{0, 1, 2};
  std::string last_error;
  do {
    QuadraticForm3<RatFunc> qp = permute(q, perm);
    try {
      DiagonalForm<RatFunc> dg = diagonalize(qp);
      if (dg.d[2].is_zero()) throw DegeneratePivot("degenerate generic fiber");
      BrauerPair bp = brauer_pair(-dg.d[0] / dg.d[2], -dg.d[1] / dg.d[2], normalize);
      bp.perm = perm;
      bp.diag = std::move(dg);
      bp.fiber = std::move(qp);
      return bp;
    } catch (const DegeneratePivot& e) {
      last_error = e.what();
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw DegeneratePivot("cannot diagonalize generically (" + last_error + ")");
}

bool verify_brauer_congruence(const BrauerPair& bp) {
  Mat3<RatFunc> s = bp.diag.basis;
  for (int i = 0; i < 3; ++i) {
    s[i][0] = s[i][0] * bp.scale_a;
    s[i][1] = s[i][1] * bp.scale_b;
  }
  Mat3<RatFunc> g = bp.fiber.gram();
  RatFunc k = -(bp.diag.d[2].inverse());
  for (auto& row : g)
    for (auto& x : row) x = x * k;
  Mat3<RatFunc> c = congruence(g, s);
  std::array<RatFunc, 3> expect{bp.a, bp.b, RatFunc(Rat(-1))};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (c[i][j] != (i == j ? expect[i] : RatFunc(Rat(0)))) return false;
  return true;
}

// ---------------------------------------------------------------- Mestre

MestreModel mestre_normal_form(const ConicBundle& cb) {
  if (!(cb.weights == Weights{4, 0, 0})) throw std::invalid_argument("mestre: bundle must have type (4,0,0)");
  auto v = coefficient_values(cb, Naming::Mestre);
  const Rat &c0 = v["c0"], &c1 = v["c1"], &c2 = v["c2"];
  if (c2 == 0) throw std::invalid_argument("mestre: hypothesis c2 != 0 fails");
  Rat disc = c1 * c1 - 4 * c0 * c2;
  if (disc == 0) throw std::invalid_argument("mestre: hypothesis c1^2 - 4 c0 c2 != 0 fails");
  MestreModel m;
  m.P = UPoly::from_poly(discriminant(cb).delta_affine, "t") * (Rat(-4) / c2);
  if (m.P.degree() != 8) throw std::invalid_argument("mestre: leading coefficient B of -(4/c2) delta vanishes");
  m.B = m.P[8];
  m.A = m.P[7];
  m.shift = -m.A / (8 * m.B);
  // R(u) = P(shift − u) by Horner in u
  UPoly lin(std::vector<Rat>{m.shift, -1});
  UPoly R;
  for (int k = 8; k >= 0; --k) R = R * lin + UPoly::constant(m.P[k]);
  m.T = R * (1 / m.B);
  if (m.T.degree() != 8 || m.T.lc() != 1 || m.T[7] != 0) throw std::logic_error("mestre: normal form check failed");
  m.c = 1 / (disc * m.B);
  const Rat &a0 = v["a0"], &b0 = v["b0"], &d0 = v["d0"];
  Rat den = (-4 * a0 * c0 + b0 * b0) * c2 + a0 * c1 * c1 - b0 * c1 * d0 + d0 * d0 * c0;
  if (den == 0) throw std::logic_error("mestre: B numerator vanishes");
  m.square_value = c2 / den;
  m.xi = rat_sqrt(m.square_value);
  return m;
}

RatFunc mestre_u7_symbolic() {
  ConicBundle cb = symbolic_bundle({4, 0, 0}, Naming::Mestre);
  Poly delta = discriminant(cb).delta_affine;
  auto co = delta.coefficients_in("t");
  RatFunc k(Poly::constant(-4, delta.vars()), Poly::var("c2", delta.vars()));
  RatFunc P8 = RatFunc(co[8]) * k, P7 = RatFunc(co[7]) * k;
  RatFunc s = -P7 / (P8 * RatFunc(Rat(8)));
  // R(u) = Σ P_k (s − u)^k; only k = 7, 8 reach u^7.
  return -(P7 + P8 * s * RatFunc(Rat(8)));
}

bool u_delta_witness(const Rat& a0, const Rat& b0, const Rat& c0, const Rat& c1, const Rat& c2,
                     const Rat& d0, const Rat& xi) {
  Rat z = xi * xi * c2 - (b0 * b0 - 4 * a0 * c0) * c2 - a0 * c1 * c1 + b0 * c1 * d0 - d0 * d0 * c0;
  return z == 0;
}

std::pair<ConicBundle, Rat> u_delta_member(Rng& rng) {
  std::uniform_int_distribution<int> coef(-9, 9);
  Weights w{4, 0, 0};
  auto names = all_coefficient_names(w, Naming::Mestre);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::map<std::string, Rat> v;
    for (const auto& n : names) v[n] = coef(rng);
    Rat xi = coef(rng);
    const Rat &b0 = v["b0"], &c0 = v["c0"], &c1 = v["c1"], &c2 = v["c2"], &d0 = v["d0"];
    Rat disc = c1 * c1 - 4 * c0 * c2;
    if (c2 == 0 || disc == 0 || xi == 0) continue;
    v["a0"] = (xi * xi * c2 - b0 * b0 * c2 + b0 * c1 * d0 - d0 * d0 * c0) / disc;
    ConicBundle cb = instantiate(w, v, Naming::Mestre);
    if (!has_good_discriminant(cb)) continue;
    return {cb, xi};
  }
  throw std::runtime_error("u_delta_member: no admissible sample");
}

}  // namespace cbq
