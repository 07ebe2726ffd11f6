// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "allometry/distributions.hpp"
#include "allometry/random.hpp"

namespace allometry {

/// One simulated day: P active users produced T tags in total.
struct SystemSample {
    std::uint64_t population = 0;  // P
    double new_tags = 0.0;          // T
    std::uint64_t task_id = 0;      // stream that generated the sample

    friend bool operator==(const SystemSample&, const SystemSample&) = default;
};

enum class Placement { LogUniformRandom, LogSpaced };

std::string_view placement_name(Placement placement) noexcept;
std::optional<Placement> parse_placement(std::string_view name) noexcept;

struct PopulationGrid {
    std::uint64_t p_min = 10;
    std::uint64_t p_max = 10'000;
    std::uint64_t n_points = 100;
    Placement placement = Placement::LogUniformRandom;
};

void validate(const PopulationGrid& grid);

/// Stream task ids reserved inside a scatter; point streams use 0..n-1.
inline constexpr std::uint64_t kPlacementTask = ~std::uint64_t{0};
inline constexpr std::uint64_t kEntropyTask = ~std::uint64_t{0} - 1;

/// Population sizes of a grid. Log-spaced grids are deterministic; random
/// placement draws ln P uniformly in [ln p_min, ln p_max] from `stream`.
/// Values are rounded to the nearest integer.
std::vector<std::uint64_t> grid_populations(const PopulationGrid& grid,
                                            RandomStream& stream);

/// T = sum of P activities drawn from `spec`. Throws Numeric if T overflows.
SystemSample simulate_system(const DistributionSpec& spec,
                             std::uint64_t population, RandomStream& stream);

/// One sample per grid point. The scatter key is stream_seed(seed); point i
/// draws from stream (key, i) and random placement from (key, kPlacementTask).
std::vector<SystemSample> generate_scatter(const DistributionSpec& spec,
                                           const PopulationGrid& grid,
                                           SeedSpec seed);

/// Growth exponent predicted for a power-law activity histogram with
/// exponent beta: 2/beta below beta = 2, linear growth above.
/// Throws BadInput for beta <= 1.
double power_law_gamma(double beta);

}  // namespace allometry
