#pragma once

/// @file rng.hpp
/// The stable random-source contract used by every seeded sweep in this
/// project: SplitMix64. The j-th draw of a stream seeded with s is
///   mix(s + (j+1) * 0x9e3779b97f4a7c15)
/// which makes draws random-access (workers can start mid-stream) and the
/// sequence identical across platforms and releases.

#include <cstdint>

namespace amlab {

constexpr std::uint64_t kSplitMix64Gamma = 0x9e3779b97f4a7c15ull;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Value of draw index `j` (0-based) for stream `seed`.
constexpr std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t j) {
    return splitmix64_mix(seed + (j + 1) * kSplitMix64Gamma);
}

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += kSplitMix64Gamma;
        return splitmix64_mix(state_);
    }

    /// next() in [0, bound)
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

  private:
    std::uint64_t state_;
};

} // namespace amlab
