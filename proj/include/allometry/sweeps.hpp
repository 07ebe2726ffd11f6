// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "allometry/distributions.hpp"
#include "allometry/entropy.hpp"
#include "allometry/growth.hpp"
#include "allometry/random.hpp"

namespace allometry {

/// Where the n values of an axis sit inside [lo, hi].
///   Midpoint: lo + (i + 0.5) (hi - lo) / n   (open interval)
///   Closed:   lo + i (hi - lo) / (n - 1)      (both ends)
///   Upper:    lo + (i + 1) (hi - lo) / n      (lo excluded, hi included)
enum class Spacing { Midpoint, Closed, Upper };

std::string_view spacing_name(Spacing spacing) noexcept;
std::optional<Spacing> parse_spacing(std::string_view name) noexcept;

struct ParamAxis {
    double lo = 0.0;
    double hi = 0.0;
    std::uint64_t n = 1;
    Spacing spacing = Spacing::Midpoint;

    std::vector<double> values() const;
};

/// One growth sweep: a family and the parameter box it is swept over.
/// A missing p2 axis is only valid for Poisson.
struct SweepCell {
    std::string label;
    Family family = Family::Pareto;
    ParamAxis p1;
    std::optional<ParamAxis> p2;
    double max_activity = std::numeric_limits<double>::infinity();

    std::uint64_t n_sims() const noexcept { return p1.n * (p2 ? p2->n : 1); }
    /// Specs in row-major order (p1 outer, p2 inner).
    std::vector<DistributionSpec> specs() const;
};

enum class Estimator { Analytic, Share };

std::string_view estimator_name(Estimator estimator) noexcept;
std::optional<Estimator> parse_estimator(std::string_view name) noexcept;

struct SweepConfig {
    std::vector<SweepCell> cells;
    PopulationGrid grid;
    std::uint64_t seed = kDefaultSeed;
    EntropyMode entropy_mode = EntropyMode::Paper;
    Estimator estimator = Estimator::Analytic;
    std::uint64_t entropy_n = 10'000;  // N used to rescale (and to sample, for Share)
    ParamAxis fig2_c{1.0, 10.0, 10, Spacing::Closed};
    ParamAxis fig2_beta{1.0, 10.0, 10, Spacing::Upper};
    unsigned threads = 0;  // 0: hardware concurrency
};

/// The seven growth-rate sweeps (Normal ... Pareto-2) at their reference
/// simulation counts.
std::vector<SweepCell> table1_cells();
SweepConfig default_table1_config();
/// The growth sweeps restricted to Pareto-1 and LogNormal.
SweepConfig default_hgamma_config();

/// Shrinks every cell's simulation count by roughly `fraction` (0, 1].
void scale_cells(SweepConfig& config, double fraction);

void validate(const SweepConfig& config);

/// Scatter key of cell `index` within the cell labelled `label`.
SeedSpec cell_seed(std::uint64_t master, std::string_view label,
                   std::uint64_t index) noexcept;

struct SweepRow {
    std::string label;
    Family family = Family::Pareto;
    std::uint64_t n_sims = 0;
    double mean_gamma = 0.0;
    double sd_gamma = 0.0;  // sample SD (n - 1); 0 for a single simulation
};

std::vector<SweepRow> run_table1(const SweepConfig& config);

struct HGammaPoint {
    std::string label;
    DistributionSpec spec;
    EntropyEstimate entropy;
    double gamma = 0.0;
};

std::vector<HGammaPoint> run_h_gamma(const SweepConfig& config);

struct Fig2Row {
    double c = 0.0;
    double beta = 0.0;
    EntropyEstimate entropy;
};

/// Pareto(k = C, alpha = beta - 1) over the fig2 axes, C outer.
std::vector<Fig2Row> fig2_dataset(const SweepConfig& config);

std::vector<EntropyPoint> to_entropy_points(const std::vector<Fig2Row>& rows);

/// True for the families whose sums grow linearly: Normal, Weibull, Poisson,
/// Gamma and Pareto with tail index above 1.
bool light_tailed(const DistributionSpec& spec) noexcept;

/// The light-tailed sweeps (Normal, Weibull, Poisson, Gamma, Pareto-2), used
/// as the linear-growth reference next to an (H, gamma) run.
std::vector<SweepCell> light_tailed_cells();

/// Separation along H of accelerating points (gamma > accelerating_above)
/// from points of light-tailed families. `holds` requires both groups to be
/// non-empty and min H(accelerating) > max H(light-tailed).
struct ThresholdReport {
    std::uint64_t n_accelerating = 0;
    std::uint64_t n_light = 0;
    double min_h_accelerating = 0.0;
    double max_h_light = 0.0;
    std::uint64_t violating_pairs = 0;  // (accelerating, light) with H_acc <= H_light
    bool holds = false;
};

ThresholdReport threshold_property(const std::vector<HGammaPoint>& points,
                                   double accelerating_above = 1.1);

}  // namespace allometry
