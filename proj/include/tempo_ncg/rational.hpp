#pragma once

#include <boost/rational.hpp>

#include <cstdio>
#include <stdexcept>
#include <string>

namespace tempo_ncg {

// Every cost in the game layer is an exact rational. Label costs are
// fractions with denominator |E|*n and equilibrium verdicts compare totals
// for exact (in)equality, so floating point never enters a decision; decimal
// output exists for display only. Magnitudes stay tiny at the scales the
// guards allow, far below the overflow range of long long.
using Rat = boost::rational<long long>;

inline std::string to_string(const Rat& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Accepts "p/q" or a bare integer "p".
inline Rat rat_from_string(const std::string& s) {
    std::size_t pos = 0;
    long long num = 0, den = 1;
    try {
        num = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: '" + s + "'");
    }
    if (pos < s.size()) {
        if (s[pos] != '/') throw std::invalid_argument("not a rational: '" + s + "'");
        std::size_t pos2 = 0;
        const std::string rest = s.substr(pos + 1);
        try {
            den = std::stoll(rest, &pos2);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a rational: '" + s + "'");
        }
        if (pos2 != rest.size()) throw std::invalid_argument("not a rational: '" + s + "'");
        if (den == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    }
    return Rat(num, den);
}

// Display-only decimal approximation, default six significant digits.
inline std::string decimal_approx(const Rat& r, int significant = 6) {
    char buf[64];
    const long double x =
        static_cast<long double>(r.numerator()) / static_cast<long double>(r.denominator());
    std::snprintf(buf, sizeof(buf), "%.*Lg", significant, x);
    return buf;
}

}  // namespace tempo_ncg
