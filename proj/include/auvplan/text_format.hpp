#pragma once

#include <cstdio>
#include <string>

namespace auvplan {

// 6 significant digits; the pinned precision of every exported table.
inline std::string fmt6(double v) {
  if (v == 0.0) v = 0.0;  // drop negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Round-trip exact.
inline std::string fmt_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace auvplan
