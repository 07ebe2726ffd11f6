// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#include "allometry/growth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace allometry {

std::string_view placement_name(Placement placement) noexcept {
    return placement == Placement::LogSpaced ? "log_spaced" : "log_uniform_random";
}

std::optional<Placement> parse_placement(std::string_view name) noexcept {
    if (name == "log_spaced") {
        return Placement::LogSpaced;
    }
    if (name == "log_uniform_random") {
        return Placement::LogUniformRandom;
    }
    return std::nullopt;
}

void validate(const PopulationGrid& grid) {
    if (grid.p_min < 1 || grid.p_min >= grid.p_max) {
        throw_bad_input("invalid grid: require 1 <= p_min < p_max");
    }
    if (grid.n_points < 10) {
        throw_bad_input("invalid grid: n_points must be >= 10");
    }
}

std::vector<std::uint64_t> grid_populations(const PopulationGrid& grid,
                                            RandomStream& stream) {
    validate(grid);
    const double lo = std::log(static_cast<double>(grid.p_min));
    const double hi = std::log(static_cast<double>(grid.p_max));
    std::vector<std::uint64_t> out(grid.n_points);
    for (std::uint64_t j = 0; j < grid.n_points; ++j) {
        const double f = grid.placement == Placement::LogSpaced
                             ? static_cast<double>(j) / static_cast<double>(grid.n_points - 1)
                             : stream.uniform();
        const double p = std::round(std::exp(lo + f * (hi - lo)));
        out[j] = std::clamp(static_cast<std::uint64_t>(p), grid.p_min, grid.p_max);
    }
    return out;
}

SystemSample simulate_system(const DistributionSpec& spec,
                             std::uint64_t population, RandomStream& stream) {
    if (population < 1) {
        throw_bad_input("invalid parameters: population must be >= 1");
    }
    ActivitySampler sampler(spec);
    double total = 0.0;
    for (std::uint64_t i = 0; i < population; ++i) {
        total += sampler.draw(stream);
    }
    if (!std::isfinite(total)) {
        throw_numeric("total activity overflowed for P = " + std::to_string(population));
    }
    return {population, total, 0};
}

std::vector<SystemSample> generate_scatter(const DistributionSpec& spec,
                                           const PopulationGrid& grid,
                                           SeedSpec seed) {
    validate(spec);
    const std::uint64_t key = stream_seed(seed);
    RandomStream placement = derive_stream({key, kPlacementTask});
    const auto populations = grid_populations(grid, placement);

    std::vector<SystemSample> samples;
    samples.reserve(populations.size());
    for (std::uint64_t i = 0; i < populations.size(); ++i) {
        RandomStream stream = derive_stream({key, i});
        SystemSample s = simulate_system(spec, populations[i], stream);
        s.task_id = i;
        samples.push_back(s);
    }
    return samples;
}

double power_law_gamma(double beta) {
    if (!(beta > 1.0)) {
        throw_bad_input("out of model domain: beta must be > 1");
    }
    return beta < 2.0 ? 2.0 / beta : 1.0;
}

}  // namespace allometry
