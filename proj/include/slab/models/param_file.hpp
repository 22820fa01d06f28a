#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slab::models {

// Binary layout: magic `SLAB1`, config digest (u64 LE), parameter count
// (u64 LE), then IEEE-754 binary64 values, little-endian, in layout order.
inline constexpr std::string_view kParamMagic = "SLAB1";

struct ParamFile {
  std::uint64_t digest = 0;
  std::vector<double> values;

  bool operator==(const ParamFile&) const = default;
};

std::string encode_param_file(std::uint64_t digest, std::span<const double> values);
// Throws IoFailure on a bad magic, truncated payload or trailing bytes.
ParamFile decode_param_file(std::string_view bytes);

void write_param_file(const std::filesystem::path& path, std::uint64_t digest,
                      std::span<const double> values);
ParamFile read_param_file(const std::filesystem::path& path);

}  // namespace slab::models
