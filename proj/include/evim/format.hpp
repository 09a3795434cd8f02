#pragma once

#include <charconv>
#include <string>

namespace evim {

/// Shortest decimal text that round-trips to the same double.
inline std::string format_real(double value) {
    char buffer[32];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, end);
}

} // namespace evim
