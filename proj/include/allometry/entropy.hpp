// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace allometry {

/// Growth threshold reported for the rescaled entropy model at C = 1,
/// beta = 2. Used only for side-by-side reporting.
inline constexpr double kReportedThreshold = 0.586;

/// How H1 is normalized into H.
///   Paper:    H1 / (N ln N)
///   Standard: H1 / ln N (the maximum share entropy of N users)
///   None:     H1
enum class EntropyMode { Paper, Standard, None };

std::string_view mode_name(EntropyMode mode) noexcept;
std::optional<EntropyMode> parse_mode(std::string_view name) noexcept;

struct EntropyEstimate {
    double h1 = 0.0;  // nats
    std::uint64_t n_users = 0;
    double h_rescaled = 0.0;
    EntropyMode mode = EntropyMode::Paper;
};

/// Plug-in Shannon entropy of the shares t_i / sum(t), in nats.
///
/// Equal activities are grouped: with w_j the total share of group j and m_j
/// its size, H = sum_j w_j (ln m_j - ln w_j). This is the same quantity as
/// -sum p ln p, and yields ln N exactly for a uniform vector. The result is
/// clamped to [0, ln N].
double share_entropy(std::span<const double> activities);

/// k1 ln(C / (beta - 1)) + k2 / (beta - 1) + k3.
double entropy_model(double c, double beta, double k1, double k2, double k3);

EntropyEstimate rescale(double h1, std::uint64_t n_users, EntropyMode mode);

struct EntropyPoint {
    double c = 0.0;
    double beta = 0.0;
    double h = 0.0;
};

struct EntropyModelFit {
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;
    double rms_residual = 0.0;
    double h_threshold = 0.0;  // model value at C = 1, beta = 2, i.e. k2 + k3
};

/// Least-squares fit of the entropy model on features ln(C/(beta-1)),
/// 1/(beta-1) and an intercept.
EntropyModelFit fit_entropy_model(std::span<const EntropyPoint> points);

}  // namespace allometry
