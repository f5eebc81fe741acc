#include "cidsrank/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "cidsrank/errors.hpp"

namespace cidsrank {

std::int64_t round_half_up(const Rational& r) {
    if (r < Rational(0)) {
        throw std::invalid_argument("round_half_up: negative value");
    }
    // floor((2p + q) / (2q)) == nearest integer with ties rounded up.
    const std::int64_t p = r.numerator();
    const std::int64_t q = r.denominator();
    return (2 * p + q) / (2 * q);
}

Rational rational_from_decimal(std::string_view text) {
    const auto bad = [&] {
        return ParseError("not a non-negative decimal literal: '" + std::string(text) + "'");
    };
    if (text.empty()) throw bad();

    std::string_view int_part = text;
    std::string_view frac_part;
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        int_part = text.substr(0, dot);
        frac_part = text.substr(dot + 1);
        if (frac_part.empty()) throw bad();
    }
    if (int_part.empty()) throw bad();

    const auto digits_only = [](std::string_view s) {
        for (char c : s) {
            if (c < '0' || c > '9') return false;
        }
        return true;
    };
    if (!digits_only(int_part) || !digits_only(frac_part)) throw bad();
    if (int_part.size() + frac_part.size() > 18) {
        throw ParseError("decimal literal out of range: '" + std::string(text) + "'");
    }

    std::int64_t scaled = 0;
    for (char c : int_part) scaled = scaled * 10 + (c - '0');
    std::int64_t denom = 1;
    for (char c : frac_part) {
        scaled = scaled * 10 + (c - '0');
        denom *= 10;
    }
    return {scaled, denom};
}

std::string format_two_decimals(const Rational& r) {
    const std::int64_t hundredths = round_half_up(r * Rational(100));
    std::string out = std::to_string(hundredths / 100);
    const std::int64_t frac = hundredths % 100;
    out += '.';
    out += static_cast<char>('0' + frac / 10);
    out += static_cast<char>('0' + frac % 10);
    return out;
}

}  // namespace cidsrank
