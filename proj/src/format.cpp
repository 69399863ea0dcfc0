#include "rlsforecast/format.hpp"

#include <cstdio>
#include <cstdlib>

namespace rlsforecast {

std::string format_significant(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

double round_significant(double value, int digits) {
  return std::strtod(format_significant(value, digits).c_str(), nullptr);
}

double round_fixed(double value, int decimals) {
  return std::strtod(format_fixed(value, decimals).c_str(), nullptr);
}

}  // namespace rlsforecast
