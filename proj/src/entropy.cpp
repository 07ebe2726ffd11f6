// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#include "allometry/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "allometry/error.hpp"

namespace allometry {

std::string_view mode_name(EntropyMode mode) noexcept {
    switch (mode) {
        case EntropyMode::Paper:
            return "paper";
        case EntropyMode::Standard:
            return "standard";
        case EntropyMode::None:
            return "none";
    }
    return "none";
}

std::optional<EntropyMode> parse_mode(std::string_view name) noexcept {
    for (auto m : {EntropyMode::Paper, EntropyMode::Standard, EntropyMode::None}) {
        if (mode_name(m) == name) {
            return m;
        }
    }
    return std::nullopt;
}

double share_entropy(std::span<const double> activities) {
    if (activities.empty()) {
        throw_bad_input("share entropy of an empty activity vector");
    }
    std::vector<double> sorted(activities.begin(), activities.end());
    for (double v : sorted) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw_bad_input("share entropy requires finite activities > 0");
        }
    }
    std::sort(sorted.begin(), sorted.end());

    // Groups of equal values: (multiplicity, total mass).
    std::vector<std::pair<double, double>> groups;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) {
            ++j;
        }
        const double m = static_cast<double>(j - i);
        groups.emplace_back(m, m * sorted[i]);
        i = j;
    }
    double total = 0.0;
    for (const auto& g : groups) {
        total += g.second;
    }
    double h = 0.0;
    for (const auto& [m, mass] : groups) {
        const double w = mass / total;
        if (w > 0.0) {
            h += w * (std::log(m) - std::log(w));
        }
    }
    const double h_max = std::log(static_cast<double>(sorted.size()));
    return std::clamp(h, 0.0, h_max);
}

double entropy_model(double c, double beta, double k1, double k2, double k3) {
    if (!(beta > 1.0)) {
        throw_bad_input("entropy model domain: beta must be > 1");
    }
    if (!(c > 0.0)) {
        throw_bad_input("entropy model domain: C must be > 0");
    }
    const double shape = beta - 1.0;
    return k1 * std::log(c / shape) + k2 / shape + k3;
}

EntropyEstimate rescale(double h1, std::uint64_t n_users, EntropyMode mode) {
    EntropyEstimate e{h1, n_users, h1, mode};
    if (mode == EntropyMode::None) {
        return e;
    }
    if (n_users < 2) {
        throw_bad_input("rescaling needs at least 2 users");
    }
    const double log_n = std::log(static_cast<double>(n_users));
    e.h_rescaled = mode == EntropyMode::Paper
                       ? h1 / (static_cast<double>(n_users) * log_n)
                       : h1 / log_n;
    return e;
}

EntropyModelFit fit_entropy_model(std::span<const EntropyPoint> points) {
    if (points.size() < 4) {
        throw_bad_input("entropy model fit needs at least 4 points");
    }
    const auto rows = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd design(rows, 3);
    Eigen::VectorXd target(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& p = points[static_cast<std::size_t>(i)];
        if (!(p.beta > 1.0) || !(p.c > 0.0) || !std::isfinite(p.h)) {
            throw_bad_input("entropy model point outside domain (need beta > 1, C > 0, finite H)");
        }
        const double shape = p.beta - 1.0;
        design(i, 0) = std::log(p.c / shape);
        design(i, 1) = 1.0 / shape;
        design(i, 2) = 1.0;
        target(i) = p.h;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < 3) {
        throw_numeric("degenerate feature matrix: entropy model features are collinear");
    }
    const Eigen::Vector3d k = qr.solve(target);
    const Eigen::VectorXd residual = target - design * k;

    EntropyModelFit fit;
    fit.k1 = k(0);
    fit.k2 = k(1);
    fit.k3 = k(2);
    fit.rms_residual = std::sqrt(residual.squaredNorm() / static_cast<double>(rows));
    fit.h_threshold = fit.k2 + fit.k3;
    return fit;
}

}  // namespace allometry
