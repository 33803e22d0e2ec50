#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dendrodyn {

using Rational = mpq_class;

// Accepts "p/q" or "p" (optionally signed); the result is canonical.
Rational parse_rational(std::string_view text);

// Always "p/q" in lowest terms, "1/1" and "0/1" included.
std::string to_string(const Rational& value);

inline Rational make_rational(long numerator, long denominator = 1) {
    Rational r(numerator, denominator);
    r.canonicalize();
    return r;
}

}  // namespace dendrodyn
