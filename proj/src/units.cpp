#include "rejuv/units.hpp"

namespace rejuv::units {

std::optional<double> hours_per(std::string_view unit) {
  if (unit == "h" || unit == "hour" || unit == "hours") return 1.0;
  if (unit == "month" || unit == "months") return hours_per_month;
  if (unit == "min" || unit == "minute" || unit == "minutes") return hours_per_minute;
  if (unit == "s" || unit == "sec" || unit == "second" || unit == "seconds") return hours_per_second;
  return std::nullopt;
}

}  // namespace rejuv::units
