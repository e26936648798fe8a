#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace mvcalc {

/// Shortest text that parses back to the same double.
inline std::string format_number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

} // namespace mvcalc
