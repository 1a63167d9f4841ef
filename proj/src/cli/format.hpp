#pragma once

#include <cstdio>
#include <string>

namespace cdpr::detail {

/// Nine significant digits; the C locale keeps '.' as the separator.
inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace cdpr::detail
