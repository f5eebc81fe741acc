#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <string_view>

namespace cidsrank {

// Exact non-negative rational. Citations-per-document values are carried in
// this form end to end; rounding happens only at the rendering boundary so
// percentage tables never see double-rounded input.
using Rational = boost::rational<std::int64_t>;

// Nearest integer, ties away from zero: 4.45 -> 4, 4.5 -> 5, 11.56 -> 12.
// Requires r >= 0.
std::int64_t round_half_up(const Rational& r);

// Parses a non-negative decimal literal ("20.45", "307") into an exact
// rational. Throws ParseError on anything else (signs, exponents, spaces).
Rational rational_from_decimal(std::string_view text);

// "20.45": exactly two decimal places, round-half-up, '.' always.
std::string format_two_decimals(const Rational& r);

}  // namespace cidsrank
