#pragma once

#include <string>

namespace bdharq {

// Shortest decimal form that round-trips the exact double value.
std::string format_double(double v);

}  // namespace bdharq
