#pragma once

#include <gmpxx.h>

#include <string>

namespace fbc {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "p/q" or a JSON integer rendered as text. Throws InputError.
Rational parse_rational(const std::string& text);

/// Canonical "num/den" rendering; integers still carry "/1".
std::string format_rational(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

} // namespace fbc
