#pragma once

#include <charconv>
#include <string>

namespace slab {

// Shortest text that parses back to the same double.
inline std::string format_double(double v) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, ptr);
}

}  // namespace slab
