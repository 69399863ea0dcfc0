#pragma once

#include <string>

namespace rlsforecast {

// Text forms shared by every CSV/JSON writer. JSON output stores the value
// parsed back from the same text so both formats carry identical numbers.
std::string format_significant(double value, int digits);
std::string format_fixed(double value, int decimals);
double round_significant(double value, int digits);
double round_fixed(double value, int decimals);

inline constexpr int kPriceDigits = 6;
inline constexpr int kSignalDigits = 10;
inline constexpr int kProfitDecimals = 2;

}  // namespace rlsforecast
