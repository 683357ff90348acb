#include "tcim/rng.hpp"

namespace tcim {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
  auto lo = [](std::uint64_t x) { return static_cast<std::uint32_t>(x); };
  auto hi = [](std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(substream), hi(substream)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream)
    : seed_(seed), stream_(stream), substream_(substream),
      engine_(seeded_engine(seed, stream, substream)) {}

}  // namespace tcim
