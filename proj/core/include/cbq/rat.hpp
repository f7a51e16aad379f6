#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cbq {

// Canonical big rational: gmp keeps gcd(num, den) = 1 and den > 0.
using Int = mpz_class;
using Rat = mpq_class;

// n/d in canonical form (the two-argument mpq_class constructor does not reduce).
Rat frac(const Int& n, const Int& d);

Rat parse_rat(std::string_view text);
std::string to_string(const Rat& q);
std::string to_string(const Int& z);

bool is_square_int(const Int& z);
// True iff q is a square in Q; 0 counts as a square.
bool is_square_rat(const Rat& q);
std::optional<Rat> rat_sqrt(const Rat& q);

// q divided by the largest square found by trial division up to `bound`;
// same square class as q, canonical when q's prime factors are all small.
Rat square_class_rep(const Rat& q, unsigned long bound = 1000);

// Prime factorization of |z| (z != 0): trial division, then Pollard rho.
std::vector<std::pair<Int, int>> factor_integer(const Int& z);

inline int sign(const Rat& q) { return sgn(q); }

}  // namespace cbq
