#include "cbq/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cbq {

// ---------------------------------------------------------------- VarList

VarList::VarList() : names_(std::make_shared<const std::vector<std::string>>()) {}
VarList::VarList(std::initializer_list<std::string> names)
    : names_(std::make_shared<const std::vector<std::string>>(names)) {}
VarList::VarList(std::vector<std::string> names)
    : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {}

std::optional<std::size_t> VarList::index(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i)
    if ((*names_)[i] == name) return i;
  return std::nullopt;
}

bool VarList::operator==(const VarList& o) const {
  return names_ == o.names_ || *names_ == *o.names_;
}

VarList merge(const VarList& a, const VarList& b) {
  if (a == b) return a;
  std::vector<std::string> out = a.names();
  bool added = false;
  for (const auto& n : b.names())
    if (!a.contains(n)) {
      out.push_back(n);
      added = true;
    }
  if (!added) return a;
  return VarList(std::move(out));
}

bool GrlexDesc::operator()(const Exps& a, const Exps& b) const {
  int da = 0, db = 0;
  for (int e : a) da += e;
  for (int e : b) db += e;
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

// ---------------------------------------------------------------- Poly basics

Poly::Poly(VarList vars, Terms terms) : vars_(std::move(vars)), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

Poly Poly::constant(const Rat& c, VarList vars) {
  Poly p(std::move(vars));
  if (c != 0) p.terms_.emplace(Exps(p.vars_.size(), 0), c);
  return p;
}

Poly Poly::var(std::string_view name, const VarList& vars) {
  auto i = vars.index(name);
  if (!i) throw std::invalid_argument("unknown variable " + std::string(name));
  Exps e(vars.size(), 0);
  e[*i] = 1;
  return monomial(vars, e, 1);
}

Poly Poly::monomial(const VarList& vars, Exps e, const Rat& c) {
  Poly p(vars);
  if (c != 0) p.terms_.emplace(std::move(e), c);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (int e : terms_.begin()->first)
    if (e) return false;
  return true;
}

Rat Poly::constant_term() const { return coeff(Exps(vars_.size(), 0)); }

Rat Poly::coeff(const Exps& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

Rat Poly::lc() const { return terms_.empty() ? Rat(0) : terms_.begin()->second; }
Exps Poly::lm() const { return terms_.empty() ? Exps(vars_.size(), 0) : terms_.begin()->first; }

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (int e : terms_.begin()->first) d += e;
  return d;
}

int Poly::degree(std::size_t idx) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
  return d;
}

int Poly::degree(std::string_view name) const {
  auto i = vars_.index(name);
  if (!i) return terms_.empty() ? -1 : 0;
  return degree(*i);
}

std::vector<std::string> Poly::used_vars() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (degree(i) > 0) out.push_back(vars_[i]);
  return out;
}

bool Poly::is_homogeneous() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    if (d < 0)
      d = s;
    else if (s != d)
      return false;
  }
  return true;
}

std::optional<int> Poly::homogeneous_degree(const std::vector<std::string>& subset) const {
  std::vector<std::size_t> idx;
  for (const auto& n : subset)
    if (auto i = vars_.index(n)) idx.push_back(*i);
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto i : idx) s += e[i];
    if (d < 0)
      d = s;
    else if (s != d)
      return std::nullopt;
  }
  return d < 0 ? 0 : d;
}

Poly Poly::with_vars(const VarList& vars) const {
  if (vars == vars_) return *this;
  std::vector<int> map(vars_.size(), -1);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto j = vars.index(vars_[i]);
    if (j)
      map[i] = static_cast<int>(*j);
    else if (degree(i) > 0)
      throw std::invalid_argument("variable " + vars_[i] + " missing from target list");
  }
  Poly out(vars);
  for (const auto& [e, c] : terms_) {
    Exps f(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (map[i] >= 0) f[map[i]] = e[i];
    out.terms_.emplace(std::move(f), c);
  }
  return out;
}

Poly Poly::trimmed() const { return with_vars(VarList(used_vars())); }

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool neg = c < 0;
    Rat a = abs(c);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      os << to_string(a);
    else if (a == 1)
      os << mono;
    else
      os << to_string(a) << "*" << mono;
  }
  return os.str();
}

// ---------------------------------------------------------------- parsing

namespace {
struct Parser {
  std::string_view s;
  const VarList& vars;
  std::size_t i = 0;

  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool at_end() {
    ws();
    return i >= s.size();
  }
  Int integer() {
    ws();
    std::size_t st = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (st == i) throw ParseError(st, "expected integer");
    return Int(std::string(s.substr(st, i - st)));
  }
  Poly factor() {
    ws();
    if (i >= s.size()) throw ParseError(i, "unexpected end of input");
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      Int n = integer();
      ws();
      Int d = 1;
      if (i < s.size() && s[i] == '/') {
        ++i;
        std::size_t at = i;
        d = integer();
        if (d == 0) throw ParseError(at, "zero denominator");
      }
      return Poly::constant(frac(n, d), vars);
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t st = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string name(s.substr(st, i - st));
      if (!vars.contains(name)) throw ParseError(st, "unknown variable '" + name + "'");
      Poly v = Poly::var(name, vars);
      ws();
      if (i < s.size() && s[i] == '^') {
        ++i;
        Int e = integer();
        if (!e.fits_uint_p()) throw ParseError(i, "exponent too large");
        v = v.pow(static_cast<unsigned>(e.get_ui()));
      }
      return v;
    }
    throw ParseError(i, std::string("unexpected character '") + ch + "'");
  }
  Poly term() {
    Poly t = factor();
    for (;;) {
      ws();
      if (i < s.size() && s[i] == '*') {
        ++i;
        t = t * factor();
      } else {
        return t;
      }
    }
  }
  Poly expr() {
    Poly acc(vars);
    ws();
    bool first = true;
    for (;;) {
      ws();
      int sgn = 1;
      bool had_sign = false;
      while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        if (s[i] == '-') sgn = -sgn;
        had_sign = true;
        ++i;
        ws();
      }
      if (!first && !had_sign) {
        if (i >= s.size()) break;
        throw ParseError(i, "expected '+' or '-'");
      }
      if (i >= s.size()) {
        if (had_sign || first) throw ParseError(i, "unexpected end of input");
        break;
      }
      Poly t = term();
      if (sgn < 0)
        acc -= t;
      else
        acc += t;
      first = false;
      if (at_end()) break;
    }
    return acc;
  }
};
}  // namespace

Poly Poly::parse(std::string_view text, const VarList& vars) {
  Parser p{text, vars};
  return p.expr();
}

// ---------------------------------------------------------------- arithmetic

void Poly::add_term(const Exps& e, const Rat& c) {
  if (c == 0) return;
  auto [it, ins] = terms_.emplace(e, c);
  if (!ins) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.vars_ != vars_) {
    VarList m = merge(vars_, o.vars_);
    *this = with_vars(m);
    Poly b = o.with_vars(m);
    for (const auto& [e, c] : b.terms_) add_term(e, c);
    return *this;
  }
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.vars_ != vars_) return *this += -o;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.vars_ != b.vars_) {
    VarList m = merge(a.vars_, b.vars_);
    return a.with_vars(m) * b.with_vars(m);
  }
  Poly out(a.vars_);
  if (a.is_zero() || b.is_zero()) return out;
  Exps e(a.vars_.size());
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

Poly Poly::pow(unsigned n) const {
  Poly result = constant(1, vars_);
  Poly base = *this;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return result;
}

Poly Poly::diff(std::string_view name) const {
  Poly out(vars_);
  auto i = vars_.index(name);
  if (!i) return out;
  for (const auto& [e, c] : terms_) {
    if (e[*i] == 0) continue;
    Exps f = e;
    f[*i] -= 1;
    out.add_term(f, c * e[*i]);
  }
  return out;
}

Poly Poly::subs(const std::map<std::string, Rat>& values) const {
  std::vector<std::pair<std::size_t, Rat>> idx;
  for (const auto& [n, v] : values)
    if (auto i = vars_.index(n)) idx.emplace_back(*i, v);
  if (idx.empty()) return *this;
  Poly out(vars_);
  for (const auto& [e, c] : terms_) {
    Rat k = c;
    Exps f = e;
    for (const auto& [i, v] : idx) {
      if (f[i]) {
        Rat p;
        mpz_pow_ui(p.get_num_mpz_t(), v.get_num_mpz_t(), f[i]);
        mpz_pow_ui(p.get_den_mpz_t(), v.get_den_mpz_t(), f[i]);
        k *= p;
        f[i] = 0;
      }
    }
    out.add_term(f, k);
  }
  return out;
}

Rat Poly::eval(const std::map<std::string, Rat>& values) const {
  Poly p = subs(values);
  if (!p.is_constant()) throw std::invalid_argument("eval: assignment does not cover " + p.str());
  return p.constant_term();
}

Poly Poly::compose(const std::map<std::string, Poly>& images) const {
  VarList target = vars_;
  for (const auto& [n, q] : images) target = merge(target, q.vars());
  std::vector<std::pair<std::size_t, Poly>> idx;
  for (const auto& [n, q] : images)
    if (auto i = vars_.index(n)) idx.emplace_back(*i, q.with_vars(target));
  if (idx.empty()) return with_vars(target);
  // cache powers of each image
  std::vector<std::vector<Poly>> powers(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    int d = degree(idx[k].first);
    powers[k].push_back(constant(1, target));
    for (int j = 1; j <= d; ++j) powers[k].push_back(powers[k].back() * idx[k].second);
  }
  std::vector<int> tmap(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) tmap[i] = static_cast<int>(*target.index(vars_[i]));
  std::vector<bool> replaced(vars_.size(), false);
  for (const auto& [i, q] : idx) replaced[i] = true;
  Poly out(target);
  for (const auto& [e, c] : terms_) {
    Exps f(target.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (!replaced[i]) f[tmap[i]] = e[i];
    Poly t = monomial(target, f, c);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      int ex = e[idx[k].first];
      if (ex) t = t * powers[k][ex];
    }
    out += t;
  }
  return out;
}

std::map<Exps, Poly, GrlexDesc> Poly::coefficients_in(const std::vector<std::string>& sub) const {
  std::vector<int> idx;
  for (const auto& n : sub) {
    auto i = vars_.index(n);
    idx.push_back(i ? static_cast<int>(*i) : -1);
  }
  std::map<Exps, Poly, GrlexDesc> out;
  for (const auto& [e, c] : terms_) {
    Exps key(sub.size(), 0);
    Exps rest = e;
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (idx[k] >= 0) {
        key[k] = e[idx[k]];
        rest[idx[k]] = 0;
      }
    auto it = out.find(key);
    if (it == out.end()) it = out.emplace(key, Poly(vars_)).first;
    it->second.add_term(rest, c);
  }
  return out;
}

std::map<int, Poly> Poly::coefficients_in(std::string_view name) const {
  std::map<int, Poly> out;
  auto i = vars_.index(name);
  if (!i) {
    if (!is_zero()) out.emplace(0, *this);
    return out;
  }
  for (const auto& [e, c] : terms_) {
    Exps rest = e;
    rest[*i] = 0;
    auto it = out.find(e[*i]);
    if (it == out.end()) it = out.emplace(e[*i], Poly(vars_)).first;
    it->second.add_term(rest, c);
  }
  return out;
}

Rat Poly::content() const {
  if (terms_.empty()) return 0;
  Int g = 0, l = 1;
  for (const auto& [e, c] : terms_) {
    g = gcd(g, c.get_num());
    l = lcm(l, c.get_den());
  }
  return Rat(abs(g), l);
}

Poly Poly::primitive() const {
  if (terms_.empty()) return *this;
  Rat c = content();
  if (lc() < 0) c = -c;
  Poly out = *this;
  Rat inv = 1 / c;
  out *= inv;
  return out;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  Poly out = *this;
  Rat inv = 1 / lc();
  out *= inv;
  return out;
}

bool Poly::operator==(const Poly& o) const {
  if (vars_ == o.vars_) return terms_ == o.terms_;
  VarList m = merge(vars_, o.vars_);
  return with_vars(m).terms_ == o.with_vars(m).terms_;
}

// ---------------------------------------------------------------- division and gcd

std::optional<Poly> exact_div(const Poly& a0, const Poly& b0) {
  if (b0.is_zero()) throw std::domain_error("division by zero polynomial");
  VarList m = merge(a0.vars(), b0.vars());
  Poly r = a0.with_vars(m), b = b0.with_vars(m);
  Poly q(m);
  const Exps lb = b.lm();
  const Rat cb = b.lc();
  while (!r.is_zero()) {
    Exps lr = r.lm();
    Exps d(lr.size());
    for (std::size_t i = 0; i < lr.size(); ++i) {
      d[i] = lr[i] - lb[i];
      if (d[i] < 0) return std::nullopt;
    }
    Poly t = Poly::monomial(m, d, r.lc() / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

namespace {

std::size_t first_active_var(const Poly& a, const Poly& b) {
  for (std::size_t i = 0; i < a.vars().size(); ++i)
    if (a.degree(i) > 0 || b.degree(i) > 0) return i;
  return a.vars().size();
}

Poly content_in(const Poly& p, std::size_t v);

Poly pp_in(const Poly& p, std::size_t v) {
  if (p.is_zero()) return p;
  Poly c = content_in(p, v);
  return exact_div(p, c)->primitive();  // rational content is a unit too
}

Poly prem_in(Poly a, const Poly& b, std::size_t v) {
  const std::string& name = b.vars()[v];
  int db = b.degree(v);
  auto cb = b.coefficients_in(name);
  Poly lb = cb.rbegin()->second;
  while (!a.is_zero() && a.degree(v) >= db) {
    int da = a.degree(v);
    auto ca = a.coefficients_in(name);
    Poly la = ca.rbegin()->second;
    Exps sh(a.vars().size(), 0);
    sh[v] = da - db;
    a = lb * a - la * Poly::monomial(a.vars(), sh, 1) * b;
  }
  return a;
}

Poly gcd_rec(const Poly& a, const Poly& b);

Poly content_in(const Poly& p, std::size_t v) {
  auto co = p.coefficients_in(p.vars()[v]);
  Poly g(p.vars());
  for (auto& [k, c] : co) {
    g = gcd_rec(g, c);
    if (g.is_constant() && !g.is_zero()) return Poly::constant(1, p.vars());
  }
  return g;
}

Poly gcd_rec(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  if (a.is_constant() || b.is_constant()) return Poly::constant(1, a.vars());
  std::size_t v = first_active_var(a, b);
  if (a.degree(v) == 0) return gcd_rec(a, content_in(b, v));
  if (b.degree(v) == 0) return gcd_rec(content_in(a, v), b);
  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly c = gcd_rec(ca, cb);
  Poly A = *exact_div(a, ca), B = *exact_div(b, cb);
  if (A.degree(v) < B.degree(v)) std::swap(A, B);
  Poly g(a.vars());
  for (;;) {
    Poly r = prem_in(A, B, v);
    if (r.is_zero()) {
      g = B;
      break;
    }
    if (r.degree(v) == 0) {
      g = Poly::constant(1, a.vars());
      break;
    }
    A = B;
    B = pp_in(r, v);
  }
  g = pp_in(g, v);
  return (c * g).primitive();
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  VarList m = merge(a.vars(), b.vars());
  return gcd_rec(a.with_vars(m), b.with_vars(m));
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(merge(a.vars(), b.vars()));
  Poly g = gcd(a, b);
  return (*exact_div(a, g) * b).primitive();
}

}  // namespace cbq
