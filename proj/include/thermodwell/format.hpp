#pragma once

#include <string>

namespace thermodwell {

// 17 significant digits (%.17g), locale independent; round-trips doubles.
std::string format_double(double value);

}  // namespace thermodwell
