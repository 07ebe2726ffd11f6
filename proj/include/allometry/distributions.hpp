// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "allometry/error.hpp"
#include "allometry/random.hpp"

namespace allometry {

enum class Family { Normal, Weibull, Poisson, Gamma, LogNormal, Pareto };

std::string_view family_name(Family family) noexcept;
/// Parses a lowercase family name ("lognormal", "pareto", ...).
std::optional<Family> parse_family(std::string_view name) noexcept;

/// One activity-distribution family with its parameters.
///
/// | family    | p1            | p2           |
/// |-----------|---------------|--------------|
/// | Normal    | mean mu       | sigma        |
/// | Weibull   | shape         | scale        |
/// | Poisson   | mean mu       | (absent)     |
/// | Gamma     | shape         | scale        |
/// | LogNormal | log-mean mu   | log-sigma    |
/// | Pareto    | scale k (= C) | tail index   |
///
/// `max_activity` caps the per-user activity (the t_max of a bounded power
/// law); +infinity means unbounded.
struct DistributionSpec {
    Family family = Family::Pareto;
    double p1 = 1.0;
    std::optional<double> p2;
    double max_activity = std::numeric_limits<double>::infinity();

    bool truncated() const noexcept { return std::isfinite(max_activity); }
    bool operator==(const DistributionSpec&) const = default;

    static DistributionSpec normal(double mu, double sigma);
    static DistributionSpec weibull(double shape, double scale);
    static DistributionSpec poisson(double mu);
    static DistributionSpec gamma(double shape, double scale);
    static DistributionSpec lognormal(double mu, double sigma);
    static DistributionSpec pareto(double k, double alpha);
};

/// Throws Error(BadInput, "invalid parameters: ...") when the spec violates
/// its parameter constraints.
void validate(const DistributionSpec& spec);

/// CDF of the untruncated family at x.
double family_cdf(const DistributionSpec& spec, double x);

/// Probability that an untruncated draw lands in (0, max_activity], i.e. the
/// acceptance rate of the rejection step in the sampler.
double acceptance_probability(const DistributionSpec& spec);

/// Per-user activity levels of one simulated population; every value > 0.
using ActivityVector = std::vector<double>;

template <class G>
concept UniformSource = requires(G& g) {
    { g.uniform() } -> std::convertible_to<double>;
};

/// Pareto inverse CDF, x = k * u^(-1/alpha) for u in (0, 1).
inline double pareto_from_uniform(double k, double alpha, double u) {
    return k * std::pow(u, -1.0 / alpha);
}

/// Draws single activities for one spec from any uniform source.
///
/// Normal draws use the Marsaglia polar method (the spare variate is kept),
/// Gamma uses Marsaglia-Tsang with the u^(1/a) boost for shape < 1, Weibull
/// and Pareto use inverse CDFs, and Poisson uses sequential inversion with
/// the mean split into pieces of at most 30. Draws outside (0, max_activity]
/// are rejected and redrawn.
class ActivitySampler {
public:
    /// Throws BadInput for invalid specs and Numeric("degenerate truncation")
    /// when fewer than one draw in 10^6 would be accepted.
    explicit ActivitySampler(const DistributionSpec& spec);

    const DistributionSpec& spec() const noexcept { return spec_; }

    template <UniformSource G>
    double draw(G& gen) {
        for (;;) {
            const double x = draw_untruncated(gen);
            if (x > 0.0 && x <= spec_.max_activity) {
                return x;
            }
        }
    }

private:
    template <UniformSource G>
    double draw_untruncated(G& gen) {
        switch (spec_.family) {
            case Family::Normal:
                return spec_.p1 + *spec_.p2 * standard_normal(gen);
            case Family::LogNormal:
                return std::exp(spec_.p1 + *spec_.p2 * standard_normal(gen));
            case Family::Weibull:
                return *spec_.p2 * std::pow(-std::log(gen.uniform()), 1.0 / spec_.p1);
            case Family::Gamma:
                return *spec_.p2 * standard_gamma(gen);
            case Family::Pareto:
                return pareto_from_uniform(spec_.p1, *spec_.p2, gen.uniform());
            case Family::Poisson:
                return poisson(gen);
        }
        return 0.0;
    }

    template <UniformSource G>
    double standard_normal(G& gen) {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double v1 = 0.0;
        double v2 = 0.0;
        double s = 0.0;
        do {
            v1 = 2.0 * gen.uniform() - 1.0;
            v2 = 2.0 * gen.uniform() - 1.0;
            s = v1 * v1 + v2 * v2;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v2 * m;
        has_spare_ = true;
        return v1 * m;
    }

    template <UniformSource G>
    double standard_gamma(G& gen) {
        for (;;) {
            double x = 0.0;
            double v = 0.0;
            do {
                x = standard_normal(gen);
                v = 1.0 + gamma_c_ * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = gen.uniform();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2 ||
                std::log(u) < 0.5 * x2 + gamma_d_ * (1.0 - v + std::log(v))) {
                const double g = gamma_d_ * v;
                return gamma_boost_ ? g * std::pow(gen.uniform(), 1.0 / spec_.p1) : g;
            }
        }
    }

    template <UniformSource G>
    double poisson(G& gen) {
        double total = 0.0;
        for (int piece = 0; piece < poisson_pieces_; ++piece) {
            const double u = gen.uniform();
            double p = poisson_p0_;
            double cdf = p;
            double k = 0.0;
            while (u > cdf && p > 0.0) {
                k += 1.0;
                p *= poisson_piece_mean_ / k;
                cdf += p;
            }
            total += k;
        }
        return total;
    }

    DistributionSpec spec_;
    bool has_spare_ = false;
    double spare_ = 0.0;
    double gamma_d_ = 0.0;
    double gamma_c_ = 0.0;
    bool gamma_boost_ = false;
    int poisson_pieces_ = 1;
    double poisson_piece_mean_ = 0.0;
    double poisson_p0_ = 0.0;
};

/// n independent positive draws from `spec`.
ActivityVector sample_activities(const DistributionSpec& spec, std::size_t n,
                                 RandomStream& stream);

/// Differential entropy in nats (Shannon entropy for Poisson) of the
/// untruncated family. Throws BadInput for specs with a finite max_activity.
double analytic_entropy(const DistributionSpec& spec);

}  // namespace allometry
