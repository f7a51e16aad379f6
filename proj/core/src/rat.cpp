#include "cbq/rat.hpp"

#include <algorithm>
#include <stdexcept>

namespace cbq {

Rat frac(const Int& n, const Int& d) {
  if (d == 0) throw std::domain_error("zero denominator");
  Rat q(n, d);
  q.canonicalize();
  return q;
}

Rat parse_rat(std::string_view text) {
  std::string s(text);
  Rat q;
  if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  return q;
}

std::string to_string(const Rat& q) { return q.get_str(10); }
std::string to_string(const Int& z) { return z.get_str(10); }

bool is_square_int(const Int& z) {
  if (z < 0) return false;
  return mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

bool is_square_rat(const Rat& q) {
  if (q == 0) return true;
  return q > 0 && is_square_int(q.get_num()) && is_square_int(q.get_den());
}

std::optional<Rat> rat_sqrt(const Rat& q) {
  if (!is_square_rat(q)) return std::nullopt;
  Int n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return Rat(n, d);
}

namespace {
Int strip_squares(Int z, unsigned long bound) {
  // z > 0
  Int out = 1;
  for (unsigned long p = 2; p <= bound; p += (p == 2 ? 1 : 2)) {
    if (z == 1) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(z.get_mpz_t(), p)) {
      mpz_divexact_ui(z.get_mpz_t(), z.get_mpz_t(), p);
      ++e;
    }
    if (e % 2) out *= p;
  }
  if (is_square_int(z)) return out;
  return out * z;
}
}  // namespace

Rat square_class_rep(const Rat& q, unsigned long bound) {
  if (q == 0) return q;
  Int n = abs(q.get_num()) * q.get_den();
  Int r = strip_squares(n, bound);
  return Rat(q < 0 ? Int(-r) : r);
}

}  // namespace cbq

namespace cbq {

namespace {

bool probably_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

// Brent's variant; returns a non-trivial factor of the odd composite n.
Int pollard_rho(const Int& n) {
  for (unsigned long c = 1;; ++c) {
    Int x = 2, y = 2, d = 1, q = 1, ys;
    auto f = [&](const Int& v) { return Int((v * v + c) % n); };
    unsigned long r = 1;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(128UL, r - k); ++i) {
          y = f(y);
          Int diff = abs(x - y);
          q = (q * diff) % n;
        }
        d = gcd(q, n);
        k += 128;
      } while (k < r && d == 1);
      r *= 2;
    } while (d == 1);
    if (d == n) {
      do {
        ys = f(ys);
        d = gcd(Int(abs(x - ys)), n);
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

void split(const Int& n, std::vector<Int>& out) {
  if (n == 1) return;
  if (probably_prime(n)) {
    out.push_back(n);
    return;
  }
  Int d = pollard_rho(n);
  split(d, out);
  split(Int(n / d), out);
}

}  // namespace

std::vector<std::pair<Int, int>> factor_integer(const Int& z) {
  if (z == 0) throw std::domain_error("factor_integer(0)");
  Int n = abs(z);
  std::vector<Int> primes;
  for (unsigned long p = 2; p < 10000 && Int(p) * p <= n; ++p) {
    while (n % p == 0) {
      primes.push_back(Int(p));
      n /= p;
    }
  }
  split(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Int, int>> out;
  for (const Int& p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

}  // namespace cbq
