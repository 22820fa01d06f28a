#pragma once

#include <iostream>
#include <string_view>

namespace slab {

// Diagnostics go to stderr; data files never carry log output.
inline void log_info(std::string_view message) { std::cerr << "info: " << message << '\n'; }
inline void log_warning(std::string_view message) { std::cerr << "warning: " << message << '\n'; }

}  // namespace slab
