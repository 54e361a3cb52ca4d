// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace eqrefute {

// Exact rational arithmetic. Values are kept canonical (gcd-reduced,
// positive denominator) by mpq_class; every constructor below canonicalizes.
using Rational = mpq_class;

using Integer = mpz_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "p/q", and decimal literals like "0.999" or "-1.25".
// Decimals convert exactly: digits after the point become p / 10^k.
Rational parse_rational(const std::string& text);

// Canonical form: "p" when the denominator is 1, else "p/q".
std::string rational_to_string(const Rational& r);

Rational rational_pow(const Rational& base, unsigned exp);

inline double to_double(const Rational& r) { return r.get_d(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// Largest integer <= r and smallest integer >= r.
Integer rational_floor(const Rational& r);
Integer rational_ceil(const Rational& r);

}  // namespace eqrefute
