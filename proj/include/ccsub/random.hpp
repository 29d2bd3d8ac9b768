#pragma once

#include <cstdint>

namespace ccsub {

// Counter-based random stream. Every draw is a pure function of
// (seed, stream tag, a, b), so results never depend on evaluation order or
// thread count.
enum class StreamTag : std::uint64_t {
  mc_trial = 1,
  live_edge = 2,
  dispersion = 3,
  axiom_check = 4,
  graph_gen = 5,
};

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t stream_bits(std::uint64_t seed, StreamTag tag, std::uint64_t a,
                                    std::uint64_t b) noexcept {
  std::uint64_t h = mix64(seed ^ (static_cast<std::uint64_t>(tag) * 0xd1b54a32d192ed03ULL));
  h = mix64(h ^ (a * 0x8cb92ba72f3d8dd7ULL));
  return mix64(h ^ (b * 0xabc98388fb8fac03ULL));
}

// Uniform on [0, 1) with 53 random bits.
constexpr double stream_uniform(std::uint64_t seed, StreamTag tag, std::uint64_t a,
                                std::uint64_t b) noexcept {
  return static_cast<double>(stream_bits(seed, tag, a, b) >> 11) * 0x1.0p-53;
}

}  // namespace ccsub
