// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace allometry {

/// Master seed used when neither the CLI nor the config provides one.
inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Identifies one independent random stream: the run-wide master seed plus
/// the index of the task (sweep cell, grid point, replicate) that owns it.
struct SeedSpec {
    std::uint64_t master_seed = kDefaultSeed;
    std::uint64_t task_id = 0;

    friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of the stream owned by `seed.task_id`: mix64(master ^ mix64(task)).
constexpr std::uint64_t stream_seed(SeedSpec seed) noexcept {
    return mix64(seed.master_seed ^ mix64(seed.task_id));
}

/// Deterministic uniform generator.
///
/// The engine is xoshiro256** (Blackman & Vigna, 2018). Its 256-bit state is
/// filled with four consecutive outputs of a splitmix64 sequence started at
/// the stream seed. uniform() keeps the top 53 bits of each output and maps
/// them to the open interval (0, 1) as (bits + 0.5) * 2^-53, so neither 0 nor
/// 1 is ever returned. This algorithm is part of the reproducibility contract
/// and must not change: recorded (seed, task) pairs replay bit-for-bit.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept { return next(); }

    result_type next() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform draw in (0, 1).
    double uniform() noexcept {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

/// Stream for one task; equal SeedSpecs give identical streams.
RandomStream derive_stream(SeedSpec seed) noexcept;

}  // namespace allometry
