#pragma once

#include <charconv>
#include <string>

namespace hadml::detail {

/// Shortest decimal that round-trips, for error messages.
inline std::string number(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

}  // namespace hadml::detail
