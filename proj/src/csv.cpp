#include "bdharq/csv.hpp"

#include <charconv>

namespace bdharq {

std::string format_double(double v) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
  (void)ec;
  return std::string(buffer, end);
}

}  // namespace bdharq
