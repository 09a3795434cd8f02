#pragma once

#include <cstdint>
#include <limits>

namespace evim {

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based random stream keyed by (master seed, stream id). The value
/// drawn at a given index depends only on the key and the index, so
/// Monte Carlo runs are reproducible regardless of evaluation order.
class RandomStream {
  public:
    using result_type = std::uint64_t;

    constexpr RandomStream(std::uint64_t master_seed, std::uint64_t stream)
        : key_(mix64(mix64(master_seed) ^ mix64(~stream))) {}

    constexpr std::uint64_t bits(std::uint64_t index) const {
        return mix64(key_ ^ mix64(index));
    }
    /// Uniform double in [0, 1).
    constexpr double uniform(std::uint64_t index) const {
        return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
    }

    // UniformRandomBitGenerator interface over successive indices.
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    constexpr result_type operator()() { return bits(counter_++); }
    constexpr double next_uniform() { return uniform(counter_++); }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace evim
