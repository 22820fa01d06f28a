#include "slab/rng.hpp"

#include <cmath>
#include <numbers>

#include "slab/error.hpp"

namespace slab {
namespace {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RngStream::next_u64() {
  const std::uint64_t key = mix64(seed_ + 0x9E3779B97F4A7C15ULL) ^
                            mix64(stream_id_ * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL);
  const std::uint64_t out = mix64(key + (counter_ + 1) * 0x9E3779B97F4A7C15ULL);
  ++counter_;
  return mix64(out ^ key);
}

double RngStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_uniform(double lo, double hi) {
  const double v = lo + (hi - lo) * next_unit();
  // Rounding can land exactly on hi for very narrow ranges.
  return v < hi ? v : std::nextafter(hi, lo);
}

double RngStream::next_normal() {
  double u1 = next_unit();
  const double u2 = next_unit();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t RngStream::next_index(std::size_t n) {
  return static_cast<std::size_t>(next_unit() * static_cast<double>(n)) % n;
}

std::pair<std::vector<double>, RngStream> rand_uniform(RngStream stream, double lo, double hi,
                                                       std::size_t n) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    fail(ErrorKind::kBadRange, "uniform range requires finite lo < hi");
  }
  std::vector<double> out(n);
  for (double& v : out) v = stream.next_uniform(lo, hi);
  return {std::move(out), stream};
}

}  // namespace slab
