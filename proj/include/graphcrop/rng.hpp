#pragma once

#include <cstdint>
#include <limits>

namespace graphcrop {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stream key for (seed, graph_index, epoch).
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t graph_index, std::uint64_t epoch) noexcept;

/**
 * Counter-based random stream. Draw i is mix64(key + (i + 1) * golden), so a
 * stream depends only on its key and how many draws preceded it, never on
 * which thread runs it. Satisfies UniformRandomBitGenerator, but the helpers
 * below are preferred: unlike the std distributions they produce the same
 * values with every standard library.
 */
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t key) noexcept : key_(key) {}
    RngStream(std::uint64_t seed, std::uint64_t graph_index, std::uint64_t epoch) noexcept
        : key_(stream_key(seed, graph_index, epoch)) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() noexcept;
    /// Uniform on [0, bound), unbiased. bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept;
    /// True with probability p; p <= 0 never, p >= 1 always.
    bool bernoulli(double p) noexcept { return uniform01() < p; }

    std::uint64_t draws() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace graphcrop
