// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#include "allometry/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "allometry/error.hpp"

namespace allometry {

ScalingFit fit_loglog(std::span<const SystemSample> samples) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(samples.size());
    for (const auto& s : samples) {
        if (s.population < 1 || !(s.new_tags > 0.0) || !std::isfinite(s.new_tags)) {
            throw_bad_input("nonpositive response: every sample needs P >= 1 and finite T > 0");
        }
        pts.emplace_back(static_cast<double>(s.population), s.new_tags);
    }
    std::sort(pts.begin(), pts.end());
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i == 0 || pts[i].first != pts[i - 1].first) {
            ++distinct;
        }
    }
    if (distinct < 3) {
        throw_numeric("degenerate design: fewer than 3 distinct P values");
    }

    const double n = static_cast<double>(pts.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (auto& [x, y] : pts) {
        x = std::log(x);
        y = std::log(y);
        mean_x += x;
        mean_y += y;
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (const auto& [x, y] : pts) {
        const double dx = x - mean_x;
        const double dy = y - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }

    ScalingFit fit;
    fit.n_points = pts.size();
    fit.gamma = sxy / sxx;
    fit.log_intercept = mean_y - fit.gamma * mean_x;
    double ssr = 0.0;
    for (const auto& [x, y] : pts) {
        const double r = y - (fit.log_intercept + fit.gamma * x);
        ssr += r * r;
    }
    fit.stderr_gamma = pts.size() > 2 ? std::sqrt(ssr / (n - 2.0) / sxx) : 0.0;
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
    return fit;
}

double predict(const ScalingFit& fit, std::uint64_t population) {
    if (population < 1) {
        throw_bad_input("invalid parameters: population must be >= 1");
    }
    return std::exp(fit.log_intercept + fit.gamma * std::log(static_cast<double>(population)));
}

}  // namespace allometry
