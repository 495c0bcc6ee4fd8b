#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace betahull {

using Rational = mpq_class;

// Parses "p", "-p" or "p/q" (q > 0 after normalisation). No decimals, no
// whitespace inside the literal.
Rational parse_rational(std::string_view text);

// Always "p/q" with q >= 1, e.g. "8/1", "-3/4".
std::string to_string(const Rational& value);

double to_double(const Rational& value);

// Exact dyadic value of a finite double.
Rational from_double(double value);

inline int sign_of(const Rational& value) { return sgn(value); }

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace betahull
