#pragma once

#include <cstdio>
#include <string>

namespace swts {

/// Real formatted with 17 significant digits ("%.17g"): round-trips exactly
/// and is locale independent for the C locale the tools run under.
inline std::string format_real(double v) {
    char buf[40];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace swts
