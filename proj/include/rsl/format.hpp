#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace rsl {

/// Fixed numeric formatting for all emitted data: 17 significant digits,
/// '.' decimal point, locale independent. Round-trips every finite double.
inline std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace rsl
