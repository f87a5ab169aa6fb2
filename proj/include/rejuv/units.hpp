#pragma once

#include <optional>
#include <string_view>

namespace rejuv::units {

// Canonical time unit is the hour.
inline constexpr double hours_per_month = 730.0;
inline constexpr double hours_per_minute = 1.0 / 60.0;
inline constexpr double hours_per_second = 1.0 / 3600.0;

constexpr double months(double x) { return x * hours_per_month; }
constexpr double minutes(double x) { return x * hours_per_minute; }
constexpr double seconds(double x) { return x * hours_per_second; }

/// Hours per one `unit` ("hour", "month", "minute", "second", plural and short forms accepted).
std::optional<double> hours_per(std::string_view unit);

}  // namespace rejuv::units
