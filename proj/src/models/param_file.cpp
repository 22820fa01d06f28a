#include "slab/models/param_file.hpp"

#include <bit>

#include "slab/corpus.hpp"
#include "slab/error.hpp"

namespace slab::models {
namespace {

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out += static_cast<char>((v >> (8 * i)) & 0xFF);
}

std::uint64_t get_u64(std::string_view bytes, std::size_t pos) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[pos + i])) << (8 * i);
  }
  return v;
}

}  // namespace

std::string encode_param_file(std::uint64_t digest, std::span<const double> values) {
  std::string out(kParamMagic);
  out.reserve(kParamMagic.size() + 16 + 8 * values.size());
  put_u64(out, digest);
  put_u64(out, values.size());
  for (double v : values) put_u64(out, std::bit_cast<std::uint64_t>(v));
  return out;
}

ParamFile decode_param_file(std::string_view bytes) {
  const std::size_t header = kParamMagic.size() + 16;
  if (bytes.size() < header || bytes.substr(0, kParamMagic.size()) != kParamMagic) {
    fail(ErrorKind::kIoFailure, "not a parameter file (bad magic)");
  }
  ParamFile file;
  file.digest = get_u64(bytes, kParamMagic.size());
  const std::uint64_t count = get_u64(bytes, kParamMagic.size() + 8);
  if ((bytes.size() - header) / 8 != count || (bytes.size() - header) % 8 != 0) {
    fail(ErrorKind::kIoFailure, "parameter file payload does not match its count of " +
                                    std::to_string(count));
  }
  file.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    file.values[i] = std::bit_cast<double>(get_u64(bytes, header + 8 * i));
  }
  return file;
}

void write_param_file(const std::filesystem::path& path, std::uint64_t digest,
                      std::span<const double> values) {
  corpus::write_file(path, encode_param_file(digest, values));
}

ParamFile read_param_file(const std::filesystem::path& path) {
  return decode_param_file(corpus::read_file(path));
}

}  // namespace slab::models
