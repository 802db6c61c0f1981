#pragma once

#include <string>
#include <string_view>

namespace curved_nbody {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest decimal that round-trips to the same double (at most 17
/// significant digits). "nan", "inf" and "-inf" for non-finite values.
std::string format_double(double v);

/// Inverse of format_double. Throws InvalidArgument on malformed input.
double parse_double(std::string_view s);

/// Compact human-oriented rendering with 6 significant digits.
std::string brief(double v);

}  // namespace curved_nbody
