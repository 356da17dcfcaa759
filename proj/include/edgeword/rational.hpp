#ifndef EDGEWORD_RATIONAL_HPP
#define EDGEWORD_RATIONAL_HPP

#include <gmpxx.h>
#include <string>

namespace edgeword {

// GMP's canonicalized rationals are the workhorse for every exact quantity.
// mpq_class keeps gcd(|num|, den) = 1 and den > 0 after canonicalize(),
// which is exactly the invariant we need; these helpers wrap parsing and
// printing so the rest of the code never touches raw GMP strings.
using Int = mpz_class;
using Rat = mpq_class;

// Accepts "9/20", "-3", "0.45", "1e-2"-free plain decimals. Decimal inputs
// become exact rationals (0.45 -> 9/20). Throws BadInput on anything else.
Rat rat_from_string(const std::string& text);

// Canonical form: "p/q" when q != 1, otherwise just "p".
std::string rat_to_string(const Rat& r);

double rat_to_double(const Rat& r);

Rat rat_abs(const Rat& r);

// q^e for e >= 0 (exact).
Rat rat_pow(const Rat& base, unsigned long e);

} // namespace edgeword

#endif
