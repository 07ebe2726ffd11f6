// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>

#include "allometry/growth.hpp"

namespace allometry {

/// OLS fit of ln T = log_intercept + gamma * ln P.
struct ScalingFit {
    double gamma = 0.0;
    double log_intercept = 0.0;  // nats
    double stderr_gamma = 0.0;
    double r_squared = 0.0;
    std::uint64_t n_points = 0;
};

/// Fits the scaling exponent. Samples are sorted by (P, T) before
/// accumulation, so the result does not depend on input order.
///
/// Throws BadInput("nonpositive response") if any T <= 0 or P < 1 and
/// Numeric("degenerate design") with fewer than three distinct P.
ScalingFit fit_loglog(std::span<const SystemSample> samples);

/// exp(log_intercept + gamma * ln P).
double predict(const ScalingFit& fit, std::uint64_t population);

}  // namespace allometry
