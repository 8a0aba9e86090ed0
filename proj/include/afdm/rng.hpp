// Counter-based seeding: every (seed, frame, stream) triple maps to an
// independent generator, so results never depend on execution order.
#pragma once

#include <cstdint>
#include <random>

namespace afdm {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

enum class Stream : std::uint64_t { channel = 1, cfo = 2, bits = 3, noise = 4 };

inline Rng make_stream(std::uint64_t seed, std::uint64_t frame, Stream stream) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ frame);
  h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
  std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(frame), static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

}  // namespace afdm
