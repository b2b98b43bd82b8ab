#pragma once

#include <cstdio>
#include <string>

namespace mixrobust::detail {

/// Round-trip formatting: 17 significant digits.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace mixrobust::detail
