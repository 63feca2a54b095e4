#pragma once

#include <cstdio>
#include <string>

#include "reslab/types.hpp"

namespace reslab {

// Numeric output uses 15 significant digits everywhere.
inline std::string fmt15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

// Lossless form for configuration round trips.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace reslab
