#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace slab {

// Counter-based generator: draw k of stream (seed, stream_id) is a pure hash
// of the triple, so streams never share state and can be split freely across
// threads. The value is cheap to copy; whoever holds a copy owns its position.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t position() const { return counter_; }

  std::uint64_t next_u64();
  // Uniform in [0, 1) with 53 random bits.
  double next_unit();
  // Uniform in [lo, hi). Caller guarantees lo < hi.
  double next_uniform(double lo, double hi);
  // Standard normal via Box-Muller; consumes two draws.
  double next_normal();
  // Uniform integer in [0, n). n must be positive.
  std::size_t next_index(std::size_t n);

  bool operator==(const RngStream&) const = default;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_ = 0;
};

// n values in [lo, hi) plus the advanced stream. Throws BadRange unless lo < hi.
std::pair<std::vector<double>, RngStream> rand_uniform(RngStream stream, double lo, double hi,
                                                       std::size_t n);

}  // namespace slab
