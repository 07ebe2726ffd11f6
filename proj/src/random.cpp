// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#include "allometry/random.hpp"

namespace allometry {

RandomStream::RandomStream(std::uint64_t seed) noexcept {
    // splitmix64 sequence: advance by the golden-ratio increment, finalize.
    std::uint64_t z = seed;
    for (auto& word : state_) {
        word = mix64(z);
        z += 0x9E3779B97F4A7C15ULL;
    }
}

RandomStream derive_stream(SeedSpec seed) noexcept {
    return RandomStream(stream_seed(seed));
}

}  // namespace allometry
