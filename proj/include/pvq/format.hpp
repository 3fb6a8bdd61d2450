#pragma once

#include <cstdio>
#include <string>

namespace pvq {

/// Decimal with 6 significant digits — the number format of every CSV this
/// library writes (seeds and counts stay exact integers).
inline std::string format_g6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return std::string(buf);
}

}  // namespace pvq
