#ifndef GEODISCOVER_RATIONAL_HPP
#define GEODISCOVER_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace gd {

using Rat = mpq_class;

// Parses a decimal literal (e.g. "-1.5", "3", ".25") into an exact rational.
inline std::optional<Rat> parse_decimal(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (text[0] == '+' || text[0] == '-') {
        neg = text[0] == '-';
        ++i;
    }
    mpz_class num = 0;
    mpz_class den = 1;
    bool any_digit = false;
    bool seen_dot = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (seen_dot) return std::nullopt;
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            num = num * 10 + (c - '0');
            if (seen_dot) den *= 10;
            any_digit = true;
        } else {
            return std::nullopt;
        }
    }
    if (!any_digit) return std::nullopt;
    Rat r(num, den);
    r.canonicalize();
    if (neg) r = -r;
    return r;
}

// Canonical text for a rational: "p" or "p/q".
inline std::string to_string(const Rat& r) { return r.get_str(); }

}  // namespace gd

#endif
