#pragma once

#include <cstdint>
#include <random>

namespace tcim {

// A reproducible random stream identified by (seed, stream, substream).
// Streams with distinct identifiers are seeded through std::seed_seq and are
// treated as independent; equal identifiers reproduce the same sequence.
class RngStream {
 public:
  using Engine = std::mt19937_64;

  RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0);

  RngStream substream(std::uint64_t index) const { return RngStream(seed_, stream_, index); }

  // Uniform in [0, 1).
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  // Bernoulli trial succeeding with probability p.
  bool coin(double p) { return uniform() < p; }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

  Engine& engine() { return engine_; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t substream_index() const { return substream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t substream_;
  Engine engine_;
};

}  // namespace tcim
