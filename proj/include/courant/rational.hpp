#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace courant {

/// Exact rational scalar. mpq_class keeps values canonical (lowest terms, positive denominator)
/// as long as every construction from a numerator/denominator pair goes through make_rat.
using Rat = mpq_class;

Rat make_rat(long num, long den = 1);

/// Parses "7", "-3/4" or "0". Throws ParseError.
Rat parse_rat(std::string_view text);

std::string to_string(const Rat& q);

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

}  // namespace courant
