#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace fcwsim {

// 9 significant digits; used for every harness output so golden files stay
// stable across runs.
std::string format_g9(double v);

// Shortest form that round-trips (17 significant digits at most).
std::string format_exact(double v);

// Empty optional prints as an empty field.
std::string format_g9(const std::optional<double>& v);

// Strict full-field parse; nullopt on trailing garbage or empty input.
std::optional<double> parse_double(std::string_view s);

}  // namespace fcwsim
