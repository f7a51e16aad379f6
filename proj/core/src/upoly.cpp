#include "cbq/upoly.hpp"

#include <algorithm>
#include <set>

namespace cbq {

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::from_poly(const Poly& p, std::string_view var) {
  std::vector<Rat> c;
  auto idx = p.vars().index(var);
  for (const auto& [e, k] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] && (!idx || i != *idx))
        throw std::invalid_argument("not univariate in " + std::string(var) + ": " + p.str());
    std::size_t d = idx ? e[*idx] : 0;
    if (c.size() <= d) c.resize(d + 1);
    c[d] += k;
  }
  return UPoly(std::move(c));
}

Poly UPoly::to_poly(const std::string& var, const VarList& vars) const {
  auto idx = vars.index(var);
  if (!idx) throw std::invalid_argument("variable not in list: " + var);
  Poly::Terms t;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    Exps e(vars.size(), 0);
    e[*idx] = static_cast<int>(i);
    t.emplace(std::move(e), c_[i]);
  }
  return Poly(vars, std::move(t));
}

Rat UPoly::eval(const Rat& x) const {
  Rat r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

UPoly UPoly::derivative() const {
  std::vector<Rat> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const { return is_zero() ? *this : *this * (1 / lc()); }

UPoly UPoly::primitive() const {
  if (is_zero()) return *this;
  Int g = 0, l = 1;
  for (const auto& c : c_) {
    g = gcd(g, c.get_num());
    l = lcm(l, c.get_den());
  }
  Rat s(l, g);
  if (lc() < 0) s = -s;
  return *this * s;
}

std::vector<Int> UPoly::integer_coeffs() const {
  std::vector<Int> out;
  for (const auto& c : primitive().c_) out.push_back(c.get_num());
  return out;
}

UPoly UPoly::operator-() const { return *this * Rat(-1); }

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rat> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const Rat& s) {
  std::vector<Rat> c = a.c_;
  for (auto& x : c) x *= s;
  return UPoly(std::move(c));
}

std::string UPoly::str(const std::string& var) const { return to_poly(var).str(); }

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  std::vector<Rat> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<Rat> q(a.degree() - db + 1);
  Rat inv = 1 / b.lc();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    Rat k = r[i] * inv;
    q[i - db] = k;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= k * b[j];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.primitive();
  }
  return x.monic();
}

std::vector<std::pair<UPoly, int>> squarefree_decompose(const UPoly& f) {
  std::vector<std::pair<UPoly, int>> out;
  if (f.degree() <= 0) return out;
  UPoly fp = f.derivative();
  UPoly a = gcd(f, fp);
  UPoly b = divmod(f, a).first;
  UPoly c = divmod(fp, a).first;
  UPoly d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    UPoly g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g.monic(), i);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
  }
  return out;
}

std::vector<std::pair<Poly, int>> squarefree_decompose(const Poly& f) {
  auto used = f.used_vars();
  if (used.size() > 1) throw std::invalid_argument("squarefree_decompose: not univariate");
  std::vector<std::pair<Poly, int>> out;
  if (used.empty()) return out;
  for (auto& [g, m] : squarefree_decompose(UPoly::from_poly(f, used[0])))
    out.emplace_back(g.to_poly(used[0], f.vars()), m);
  return out;
}

namespace {
std::vector<Int> divisors(Int n) {
  n = abs(n);
  std::vector<Int> small, large;
  for (Int d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}
}  // namespace

std::vector<Rat> rational_roots(const UPoly& f0) {
  std::vector<Rat> out;
  if (f0.is_zero()) return out;
  UPoly f = f0;
  // zero roots first, so that the constant term is nonzero
  while (f.degree() > 0 && f[0] == 0) {
    out.push_back(0);
    f = divmod(f, UPoly::x()).first;
  }
  while (f.degree() > 0) {
    auto z = f.integer_coeffs();
    bool found = false;
    for (const Int& p : divisors(z.front())) {
      for (const Int& q : divisors(z.back())) {
        for (int s : {1, -1}) {
          Rat r(p * s, q);
          r.canonicalize();
          if (r.get_den() != q) continue;  // seen as a reduced candidate already
          if (f.eval(r) == 0) {
            out.push_back(r);
            f = divmod(f, UPoly(std::vector<Rat>{-r, 1})).first;
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rat> rational_roots(const Poly& f) {
  auto used = f.used_vars();
  if (used.size() > 1) throw std::invalid_argument("rational_roots: not univariate");
  if (used.empty()) return {};
  return rational_roots(UPoly::from_poly(f, used[0]));
}

// ---------------------------------------------------------------- primes

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  Int z(static_cast<unsigned long>(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<bool> sieve(bound + 1, true);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) sieve[j] = false;
  }
  return out;
}

std::optional<std::uint64_t> mod_p(const Rat& q, std::uint64_t p) {
  Int P(static_cast<unsigned long>(p));
  Int d = q.get_den() % P;
  if (d == 0) return std::nullopt;
  Int inv;
  mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), P.get_mpz_t());
  Int r = (q.get_num() * inv) % P;
  if (r < 0) r += P;
  return r.get_ui();
}

std::optional<std::vector<std::uint64_t>> reduce_mod_p(const UPoly& f, std::uint64_t p) {
  std::vector<std::uint64_t> out;
  for (const auto& c : f.coeffs()) {
    auto r = mod_p(c, p);
    if (!r) return std::nullopt;
    out.push_back(*r);
  }
  if (out.empty() || out.back() == 0) return std::nullopt;
  return out;
}

namespace {
using U64 = std::uint64_t;
using Fp = std::vector<U64>;

U64 mulm(U64 a, U64 b, U64 p) { return static_cast<U64>((static_cast<unsigned __int128>(a) * b) % p); }
U64 powm(U64 a, U64 e, U64 p) {
  U64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}
U64 invm(U64 a, U64 p) { return powm(a, p - 2, p); }

void trim(Fp& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Fp mod_poly(Fp a, const Fp& m, U64 p) {
  trim(a);
  std::size_t dm = m.size() - 1;
  U64 inv = invm(m.back(), p);
  while (a.size() > dm && !a.empty()) {
    U64 k = mulm(a.back(), inv, p);
    std::size_t sh = a.size() - 1 - dm;
    for (std::size_t j = 0; j <= dm; ++j) a[sh + j] = (a[sh + j] + p - mulm(k, m[j], p)) % p;
    trim(a);
  }
  return a;
}

Fp mul_mod(const Fp& a, const Fp& b, const Fp& m, U64 p) {
  if (a.empty() || b.empty()) return {};
  Fp c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulm(a[i], b[j], p)) % p;
  return mod_poly(std::move(c), m, p);
}

Fp pow_mod(Fp base, U64 e, const Fp& m, U64 p) {
  Fp r = mod_poly(Fp{1}, m, p);
  base = mod_poly(std::move(base), m, p);
  while (e) {
    if (e & 1) r = mul_mod(r, base, m, p);
    base = mul_mod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

Fp gcd_p(Fp a, Fp b, U64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Fp r = mod_poly(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}
}  // namespace

std::vector<std::uint64_t> roots_mod_p(const std::vector<std::uint64_t>& f, std::uint64_t p) {
  std::vector<std::uint64_t> out;
  Fp g = f;
  trim(g);
  if (g.size() < 2) return out;
  if (g.size() > 3 && p > 64) {
    // no root unless gcd(f, x^p - x) is nontrivial
    Fp h = pow_mod(Fp{0, 1}, p, g, p);
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    if (!h.empty() && gcd_p(g, h, p).size() < 2) return out;
  }
  for (U64 r = 0; r < p; ++r) {
    U64 v = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) v = (mulm(v, r, p) + *it) % p;
    if (v == 0) out.push_back(r);
  }
  return out;
}

int legendre(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  return powm(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int legendre(const Int& a, std::uint64_t p) {
  Int P(static_cast<unsigned long>(p));
  Int r = a % P;
  if (r < 0) r += P;
  return legendre(r.get_ui(), p);
}

bool irreducible_mod_p(const std::vector<std::uint64_t>& f0, std::uint64_t p) {
  Fp f = f0;
  trim(f);
  if (f.size() < 2) return false;
  std::size_t n = f.size() - 1;
  if (n == 1) return true;
  Fp x{0, 1};
  Fp h = mod_poly(x, f, p);
  for (std::size_t i = 1; i <= n / 2; ++i) {
    h = pow_mod(h, p, f, p);
    Fp d = h;
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = (d[1] + p - 1) % p;
    Fp g = gcd_p(f, d, p);
    if (g.size() > 1) return false;
  }
  return true;
}

std::optional<PrimeWitness> modp_irreducible_witness(const UPoly& f, std::uint64_t bound) {
  if (f.degree() < 1) return std::nullopt;
  if (f.degree() == 1) return PrimeWitness{2, std::nullopt, "degree 1"};
  UPoly g = f.primitive();
  for (U64 p : primes_up_to(bound)) {
    auto red = reduce_mod_p(g, p);
    if (!red) continue;
    if (irreducible_mod_p(*red, p)) return PrimeWitness{p, std::nullopt, "irreducible mod p"};
  }
  return std::nullopt;
}

}  // namespace cbq
