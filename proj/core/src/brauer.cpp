#include "cbq/brauer.hpp"

#include <algorithm>

namespace cbq {

namespace {

UPoly upoly(const Poly& p) { return UPoly::from_poly(p, "t"); }

UPoly mulmod(const UPoly& a, const UPoly& b, const UPoly& f) { return divmod(a * b, f).second; }

// Inverse of a modulo f via the extended Euclidean algorithm.
UPoly invmod(const UPoly& a, const UPoly& f) {
  UPoly r0 = f, r1 = divmod(a, f).second, s0, s1 = UPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw std::domain_error("invmod: not invertible modulo " + f.str());
  return divmod(s0 * (1 / r0.lc()), f).second;
}

UPoly powmod(UPoly a, int e, const UPoly& f) {
  if (e < 0) {
    a = invmod(a, f);
    e = -e;
  }
  UPoly r = divmod(UPoly::constant(1), f).second;
  a = divmod(a, f).second;
  while (e) {
    if (e & 1) r = mulmod(r, a, f);
    a = mulmod(a, a, f);
    e >>= 1;
  }
  return r;
}

UPoly reversed(const UPoly& p) {
  auto c = p.coeffs();
  std::reverse(c.begin(), c.end());
  return UPoly(c);
}

void require_univariate(const RatFunc& r) {
  for (const Poly* p : {&r.num(), &r.den()})
    for (const auto& v : p->used_vars())
      if (v != "t") throw std::invalid_argument("residues need a rational function of t alone, got " + r.str());
}

// Unit part of p at f (p with every factor f removed), and the multiplicity stripped.
std::pair<UPoly, int> strip(UPoly p, const UPoly& f) {
  int v = 0;
  for (;;) {
    auto [q, r] = divmod(p, f);
    if (!r.is_zero()) break;
    p = std::move(q);
    ++v;
  }
  return {p, v};
}

}  // namespace

Place Place::finite(const UPoly& f, std::uint64_t prime_bound) {
  if (f.degree() < 1) throw std::invalid_argument("place of degree < 1");
  Place p;
  p.f = f.monic();
  if (f.degree() == 1) {
    p.irreducibility = Irreducibility::Linear;
  } else if (auto w = modp_irreducible_witness(p.f, prime_bound)) {
    p.irreducibility = Irreducibility::Certified;
    p.irreducibility_witness = *w;
  } else {
    p.irreducibility = Irreducibility::Assumed;
  }
  return p;
}

Place Place::infinity() {
  Place p;
  p.kind = Kind::Infinity;
  return p;
}

std::string Place::str() const { return is_infinity() ? "inf" : f.str("t"); }

bool Place::operator==(const Place& o) const { return kind == o.kind && (is_infinity() || f == o.f); }

int valuation(const UPoly& p, const UPoly& f) {
  if (p.is_zero()) throw std::domain_error("valuation of zero");
  return strip(p, f).second;
}

namespace {
bool is_square_upoly(const UPoly& p) {
  if (p.is_zero() || !is_square_rat(p.lc())) return false;
  for (const auto& [f, m] : squarefree_decompose(p))
    if (m % 2) return false;
  return true;
}
}  // namespace

RatFunc at_infinity(const RatFunc& r) {
  require_univariate(r);
  UPoly n = upoly(r.num()), d = upoly(r.den());
  int shift = d.degree() - n.degree();
  UPoly rn = reversed(n), rd = reversed(d);
  std::vector<Rat> mono(std::abs(shift) + 1, 0);
  mono.back() = 1;
  UPoly s(mono);
  if (shift >= 0)
    rn = rn * s;
  else
    rd = rd * s;
  return RatFunc(rn.to_poly("t"), rd.to_poly("t"));
}

int valuation(const RatFunc& r, const Place& place) {
  if (r.is_zero()) throw std::domain_error("valuation of zero");
  require_univariate(r);
  if (place.is_infinity()) return upoly(r.den()).degree() - upoly(r.num()).degree();
  return valuation(upoly(r.num()), place.f) - valuation(upoly(r.den()), place.f);
}

std::string ResidueClass::value_str() const { return is_rational() ? to_string(rational_value()) : value.str("t"); }

ResidueClass residue2(const RatFunc& a0, const RatFunc& b0, const Place& place) {
  if (a0.is_zero() || b0.is_zero()) throw std::domain_error("residue of a pair with a zero entry");
  require_univariate(a0);
  require_univariate(b0);
  RatFunc a = place.is_infinity() ? at_infinity(a0) : a0;
  RatFunc b = place.is_infinity() ? at_infinity(b0) : b0;
  UPoly f = place.is_infinity() ? UPoly::x() : place.f;
  auto [an, van] = strip(upoly(a.num()), f);
  auto [ad, vad] = strip(upoly(a.den()), f);
  auto [bn, vbn] = strip(upoly(b.num()), f);
  auto [bd, vbd] = strip(upoly(b.den()), f);
  ResidueClass rc;
  rc.place = place;
  rc.va = van - vad;
  rc.vb = vbn - vbd;
  auto red = [&](const UPoly& u) { return divmod(u, f).second; };
  UPoly ua = mulmod(red(an), invmod(red(ad), f), f);
  UPoly ub = mulmod(red(bn), invmod(red(bd), f), f);
  UPoly v = mulmod(powmod(ua, rc.vb, f), powmod(ub, -rc.va, f), f);
  if ((rc.va * rc.vb) % 2) v = -v;
  rc.value = v;
  // The class is ua^(vb mod 2) ub^(va mod 2); it is a square whenever the
  // contributing unit parts are already squares in Q(t).
  bool sq = true;
  if (rc.vb % 2) sq = sq && is_square_upoly(an) && is_square_upoly(ad);
  if (rc.va % 2) sq = sq && is_square_upoly(bn) && is_square_upoly(bd);
  rc.trivial = sq || (rc.is_rational() && is_square_rat(rc.rational_value()));
  return rc;
}

ResidueClass residue2(const BrauerPair& pair, const Place& place) { return residue2(pair.a, pair.b, place); }

namespace {

std::optional<std::uint64_t> root_for_place(const Place& place, std::uint64_t p) {
  if (place.is_infinity()) return 0;
  return mod_p(-place.f[0], p);
}

bool squarefree_mod_p(const std::vector<std::uint64_t>& f, std::uint64_t p) {
  // distinct roots over F_p suffice for our use: check f and f' share no root
  // by a gcd computed through root enumeration of f.
  std::vector<std::uint64_t> df;
  for (std::size_t i = 1; i < f.size(); ++i) df.push_back(static_cast<std::uint64_t>((static_cast<unsigned __int128>(f[i]) * i) % p));
  for (auto r : roots_mod_p(f, p)) {
    std::uint64_t v = 0;
    for (auto it = df.rbegin(); it != df.rend(); ++it) v = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v) * r + *it) % p);
    if (v == 0) return false;
  }
  return true;
}

std::optional<std::uint64_t> eval_mod_p(const UPoly& v, std::uint64_t r, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (int i = v.degree(); i >= 0; --i) {
    auto c = mod_p(v[i], p);
    if (!c) return std::nullopt;
    acc = static_cast<std::uint64_t>((static_cast<unsigned __int128>(acc) * r + *c) % p);
  }
  return acc;
}

}  // namespace

std::optional<NonSquareWitness> nonsquare_witness(const ResidueClass& rc, std::uint64_t prime_bound) {
  if (rc.is_rational()) {
    Rat q = rc.rational_value();
    if (is_square_rat(q)) return std::nullopt;
    NonSquareWitness w;
    w.exact = true;
    w.prime.note = "exact: not a square in Q";
    for (std::uint64_t p : primes_up_to(prime_bound)) {
      if (p == 2) continue;
      auto qp = mod_p(q, p);
      if (!qp || *qp == 0 || legendre(*qp, p) != -1) continue;
      w.prime.p = p;
      w.prime.root = root_for_place(rc.place, p);
      break;
    }
    return w;
  }
  for (std::uint64_t p : primes_up_to(prime_bound)) {
    if (p == 2) continue;
    auto fp = reduce_mod_p(rc.place.f, p);
    if (!fp || !squarefree_mod_p(*fp, p)) continue;
    for (auto r : roots_mod_p(*fp, p)) {
      auto v = eval_mod_p(rc.value, r, p);
      if (!v || *v == 0) continue;
      if (legendre(*v, p) == -1) return NonSquareWitness{{p, r, "non-residue at a degree-1 prime"}, false};
    }
  }
  return std::nullopt;
}

bool verify_witness(const ResidueClass& rc, const NonSquareWitness& w) {
  if (rc.is_rational()) {
    Rat q = rc.rational_value();
    if (is_square_rat(q)) return false;
    if (w.prime.p == 0) return w.exact;
    auto qp = mod_p(q, w.prime.p);
    return is_prime(w.prime.p) && w.prime.p != 2 && qp && legendre(*qp, w.prime.p) == -1;
  }
  std::uint64_t p = w.prime.p;
  if (!is_prime(p) || p == 2 || !w.prime.root) return false;
  auto fp = reduce_mod_p(rc.place.f, p);
  if (!fp || !squarefree_mod_p(*fp, p)) return false;
  auto roots = roots_mod_p(*fp, p);
  if (std::find(roots.begin(), roots.end(), *w.prime.root) == roots.end()) return false;
  auto v = eval_mod_p(rc.value, *w.prime.root, p);
  return v && *v != 0 && legendre(*v, p) == -1;
}

std::vector<Place> support_places(const RatFunc& a, const RatFunc& b, std::uint64_t prime_bound) {
  require_univariate(a);
  require_univariate(b);
  std::vector<UPoly> base;
  for (const Poly* p : {&a.num(), &a.den(), &b.num(), &b.den()})
    for (auto& [g, m] : squarefree_decompose(upoly(*p))) base.push_back(g);
  // coprime refinement
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < base.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < base.size() && !changed; ++j) {
        UPoly g = gcd(base[i], base[j]);
        if (g.degree() < 1) continue;
        UPoly x = divmod(base[i], g).first.monic(), y = divmod(base[j], g).first.monic();
        base.erase(base.begin() + j);
        base.erase(base.begin() + i);
        for (UPoly* q : {&g, &x, &y})
          if (q->degree() >= 1) base.push_back(*q);
        changed = true;
      }
  }
  std::vector<Rat> roots;
  std::vector<UPoly> rest;
  for (const UPoly& g : base) {
    UPoly r = g;
    for (const Rat& x : rational_roots(g)) {
      roots.push_back(x);
      r = divmod(r, UPoly(std::vector<Rat>{-x, 1})).first;
    }
    if (r.degree() >= 1) rest.push_back(r.monic());
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  std::sort(rest.begin(), rest.end(), [](const UPoly& x, const UPoly& y) {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    return x.str() < y.str();
  });
  std::vector<Place> out;
  for (const Rat& x : roots) out.push_back(Place::finite(UPoly(std::vector<Rat>{-x, 1}), prime_bound));
  for (const UPoly& g : rest) out.push_back(Place::finite(g, prime_bound));
  out.push_back(Place::infinity());
  return out;
}

std::vector<ResidueClass> residues_all(const RatFunc& a, const RatFunc& b, std::uint64_t prime_bound) {
  std::vector<ResidueClass> out;
  for (const Place& p : support_places(a, b, prime_bound)) out.push_back(residue2(a, b, p));
  return out;
}

std::vector<ResidueClass> residues_all(const BrauerPair& pair, std::uint64_t prime_bound) {
  return residues_all(pair.a, pair.b, prime_bound);
}

std::string NoSectionCertificate::line() const {
  std::string s = "place=" + residue.place.str() + " residue=" + residue.value_str();
  s += " prime=" + (witness.prime.p ? std::to_string(witness.prime.p) : std::string("exact"));
  s += " root=" + (witness.prime.root ? std::to_string(*witness.prime.root) : std::string("-"));
  return s;
}

CertificateSearch no_section_certificate(const BrauerPair& bp, std::uint64_t prime_bound) {
  CertificateSearch out;
  out.model = bp;
  out.residues = residues_all(bp, prime_bound);
  for (const auto& rc : out.residues) {
    if (rc.trivial) continue;
    if (auto w = nonsquare_witness(rc, prime_bound)) {
      out.certificate = NoSectionCertificate{rc, *w};
      break;
    }
  }
  return out;
}

CertificateSearch no_section_certificate(const ConicBundle& cb, std::uint64_t prime_bound) {
  for (int k : {0, 3, 5})
    if (cb.sigma[k].is_zero())
      throw BundleError(sigma_name(k) + " = 0: the bundle has a rational section");
  return no_section_certificate(brauer_model(cb), prime_bound);
}

int order_at_zero(const RatFunc& r, const std::string& var) {
  if (r.is_zero()) throw std::domain_error("order of zero");
  auto low = [&](const Poly& p) {
    auto co = p.coefficients_in(var);
    return co.begin()->first;
  };
  return low(r.num()) - low(r.den());
}

}  // namespace cbq
