#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace goigrid {

inline constexpr int kSignificantDigits = 9;

/// Decimal text of `v` at nine significant digits.
inline std::string format_number(double v) {
    if (v == 0.0) v = 0.0; // folds -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, v);
    return buf;
}

/// `v` rounded to the value its nine-digit text parses back to.
inline double round_significant(double v) {
    return std::strtod(format_number(v).c_str(), nullptr);
}

} // namespace goigrid
