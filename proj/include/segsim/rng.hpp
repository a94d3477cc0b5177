#pragma once

#include <cstdint>
#include <random>

namespace segsim {

using Rng = std::mt19937_64;

struct RngSeed {
  std::uint64_t value = 0;
};

// Named sub-streams of a scenario seed. Adding a consumer never shifts the
// draws seen by another one.
enum class Stream : std::uint32_t {
  Init = 1,
  Graph = 2,
  Arm = 3,
  Chain = 4,
  Opinion = 5,
};

inline Rng make_stream(RngSeed seed, Stream stream, std::uint64_t index = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed.value),
                    static_cast<std::uint32_t>(seed.value >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

// [0, 1) from the top 53 bits, so traces do not depend on the standard
// library's distribution implementation.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// (0, 1]
inline double uniform_open_closed(Rng& rng) { return 1.0 - uniform01(rng); }

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

// Uniform index in [0, n) by rejection; n > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = Rng::max() - Rng::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

}  // namespace segsim
