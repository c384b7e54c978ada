#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace gromega {

using Int = mpz_class;
using Rat = mpq_class;

// Parses "p" or "p/q" with optional sign; throws ParseError on junk.
Rat parse_rational(std::string_view text);

// Canonical "p" or "p/q".
std::string rat_string(const Rat& r);
std::string int_string(const Int& n);

double to_double(const Rat& r);

// Natural log of a positive value; exact enough (~1e-15 relative) even when
// the value is far outside double range.
double log_int(const Int& n);
double log_rat(const Rat& r);

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

} // namespace gromega
