#pragma once

#include <cstdint>
#include <random>

namespace mfgf {

/// Per-caller random stream. Nothing in the library keeps hidden RNG state;
/// every sampler takes one of these by reference.
using RandomStream = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream for one replicate, a pure function of (master seed, experiment id,
/// replicate index). Splitting replicates across workers therefore does not
/// change any draw.
inline RandomStream make_stream(std::uint64_t master_seed, std::uint64_t experiment_id,
                                std::uint64_t replicate) {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ splitmix64(experiment_id + 0x632be59bd9b4e019ULL));
  h = splitmix64(h ^ splitmix64(replicate + 0x85157af5ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return RandomStream(seq);
}

/// Uniform on [0, 1) from the top 53 bits.
inline double uniform01(RandomStream& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer on {lo, ..., hi}.
inline std::uint64_t uniform_index(RandomStream& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

}  // namespace mfgf
