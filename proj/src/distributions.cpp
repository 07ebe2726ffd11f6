// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#include "allometry/distributions.hpp"

#include <array>
#include <numbers>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace allometry {
namespace {

constexpr double kMinAcceptance = 1e-6;
constexpr double kPoissonPieceMean = 30.0;

constexpr std::array<std::pair<Family, std::string_view>, 6> kFamilyNames{{
    {Family::Normal, "normal"},
    {Family::Weibull, "weibull"},
    {Family::Poisson, "poisson"},
    {Family::Gamma, "gamma"},
    {Family::LogNormal, "lognormal"},
    {Family::Pareto, "pareto"},
}};

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

[[noreturn]] void invalid(const std::string& why) {
    throw_bad_input("invalid parameters: " + why);
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        invalid(std::string(name) + " must be finite and > 0");
    }
}

double poisson_entropy(double mu) {
    // Sum -p ln p from 0 upward. Past the mode p_{j+1}/p_j = mu/(j+1) < 1, so
    // the remaining terms are bounded by a geometric series.
    double h = 0.0;
    const double log_mu = std::log(mu);
    for (double j = 0.0;; j += 1.0) {
        const double log_p = -mu + j * log_mu - std::lgamma(j + 1.0);
        const double p = std::exp(log_p);
        const double term = -p * log_p;
        h += term;
        const double ratio = mu / (j + 1.0);
        // The factor 2 covers the slow growth of -ln p along the tail.
        if (j > 2.0 * mu + 10.0 && (p == 0.0 || 2.0 * term / (1.0 - ratio) < 1e-15)) {
            break;
        }
    }
    return h;
}

}  // namespace

std::string_view family_name(Family family) noexcept {
    for (const auto& [f, name] : kFamilyNames) {
        if (f == family) {
            return name;
        }
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
    for (const auto& [f, n] : kFamilyNames) {
        if (n == name) {
            return f;
        }
    }
    return std::nullopt;
}

DistributionSpec DistributionSpec::normal(double mu, double sigma) {
    return {Family::Normal, mu, sigma};
}
DistributionSpec DistributionSpec::weibull(double shape, double scale) {
    return {Family::Weibull, shape, scale};
}
DistributionSpec DistributionSpec::poisson(double mu) {
    return {Family::Poisson, mu, std::nullopt};
}
DistributionSpec DistributionSpec::gamma(double shape, double scale) {
    return {Family::Gamma, shape, scale};
}
DistributionSpec DistributionSpec::lognormal(double mu, double sigma) {
    return {Family::LogNormal, mu, sigma};
}
DistributionSpec DistributionSpec::pareto(double k, double alpha) {
    return {Family::Pareto, k, alpha};
}

void validate(const DistributionSpec& spec) {
    if (!(spec.max_activity > 0.0) || std::isnan(spec.max_activity)) {
        invalid("max_activity must be > 0");
    }
    if (spec.family == Family::Poisson) {
        if (spec.p2) {
            invalid("poisson takes a single parameter");
        }
        require_positive(spec.p1, "poisson mean");
        return;
    }
    if (!spec.p2) {
        invalid(std::string(family_name(spec.family)) + " requires p2");
    }
    const double p2 = *spec.p2;
    switch (spec.family) {
        case Family::Normal:
        case Family::LogNormal:
            if (!std::isfinite(spec.p1)) {
                invalid("mu must be finite");
            }
            require_positive(p2, "sigma");
            break;
        case Family::Weibull:
        case Family::Gamma:
            require_positive(spec.p1, "shape");
            require_positive(p2, "scale");
            break;
        case Family::Pareto:
            if (!(spec.p1 >= std::numeric_limits<double>::min()) || !std::isfinite(spec.p1)) {
                invalid("pareto scale k must be finite and > 0");
            }
            require_positive(p2, "pareto tail index");
            break;
        case Family::Poisson:
            break;
    }
}

double family_cdf(const DistributionSpec& spec, double x) {
    validate(spec);
    const double p1 = spec.p1;
    const double p2 = spec.p2.value_or(0.0);
    switch (spec.family) {
        case Family::Normal:
            return normal_cdf((x - p1) / p2);
        case Family::LogNormal:
            return x <= 0.0 ? 0.0 : normal_cdf((std::log(x) - p1) / p2);
        case Family::Weibull:
            return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / p2, p1));
        case Family::Gamma:
            return x <= 0.0 ? 0.0 : boost::math::gamma_p(p1, x / p2);
        case Family::Pareto:
            return x <= p1 ? 0.0 : -std::expm1(p2 * std::log(p1 / x));
        case Family::Poisson:
            if (x < 0.0) {
                return 0.0;
            }
            if (!std::isfinite(x)) {
                return 1.0;
            }
            return boost::math::gamma_q(std::floor(x) + 1.0, p1);
    }
    return 0.0;
}

double acceptance_probability(const DistributionSpec& spec) {
    const double upper = spec.truncated() ? family_cdf(spec, spec.max_activity) : 1.0;
    return upper - family_cdf(spec, 0.0);
}

ActivitySampler::ActivitySampler(const DistributionSpec& spec) : spec_(spec) {
    validate(spec_);
    if (!(acceptance_probability(spec_) >= kMinAcceptance)) {
        throw_numeric("degenerate truncation: acceptance probability below 1e-6 for " +
                      std::string(family_name(spec_.family)));
    }
    if (spec_.family == Family::Gamma) {
        const double shape = spec_.p1 < 1.0 ? spec_.p1 + 1.0 : spec_.p1;
        gamma_boost_ = spec_.p1 < 1.0;
        gamma_d_ = shape - 1.0 / 3.0;
        gamma_c_ = 1.0 / std::sqrt(9.0 * gamma_d_);
    }
    if (spec_.family == Family::Poisson) {
        poisson_pieces_ = static_cast<int>(std::ceil(spec_.p1 / kPoissonPieceMean));
        poisson_piece_mean_ = spec_.p1 / poisson_pieces_;
        poisson_p0_ = std::exp(-poisson_piece_mean_);
    }
}

ActivityVector sample_activities(const DistributionSpec& spec, std::size_t n,
                                 RandomStream& stream) {
    if (n < 1) {
        throw_bad_input("invalid parameters: population must be >= 1");
    }
    ActivitySampler sampler(spec);
    ActivityVector values(n);
    for (auto& v : values) {
        v = sampler.draw(stream);
    }
    return values;
}

double analytic_entropy(const DistributionSpec& spec) {
    validate(spec);
    if (spec.truncated()) {
        throw_bad_input("analytic form unavailable; use empirical estimator");
    }
    constexpr double kEulerGamma = std::numbers::egamma;
    const double p1 = spec.p1;
    const double p2 = spec.p2.value_or(0.0);
    const double log_2pie = std::log(2.0 * std::numbers::pi * std::numbers::e);
    switch (spec.family) {
        case Family::Pareto:
            return std::log(p1 / p2) + 1.0 / p2 + 1.0;
        case Family::LogNormal:
            return p1 + 0.5 * log_2pie + std::log(p2);
        case Family::Normal:
            return 0.5 * log_2pie + std::log(p2);
        case Family::Gamma:
            return p1 + std::log(p2) + std::lgamma(p1) + (1.0 - p1) * boost::math::digamma(p1);
        case Family::Weibull:
            return kEulerGamma * (1.0 - 1.0 / p1) + std::log(p2 / p1) + 1.0;
        case Family::Poisson:
            return poisson_entropy(p1);
    }
    return 0.0;
}

}  // namespace allometry
