// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "allometry/growth.hpp"
#include "allometry/scaling.hpp"

using namespace allometry;

TEST_CASE("constant unit activity gives T = P") {
    // Zero-truncated Poisson capped at 1 yields exactly one tag per user.
    auto spec = DistributionSpec::poisson(0.01);
    spec.max_activity = 1.0;
    RandomStream s = derive_stream({1, 2});
    for (std::uint64_t p : {1ULL, 17ULL, 1000ULL}) {
        CHECK(simulate_system(spec, p, s).new_tags == static_cast<double>(p));
    }
}

TEST_CASE("zero-truncated poisson system mean") {
    const double mu = 5.0;
    const std::uint64_t p = 100'000;
    RandomStream s = derive_stream({3, 0});
    const auto sample = simulate_system(DistributionSpec::poisson(mu), p, s);
    const double mean = mu / (1.0 - std::exp(-mu));
    const double second = (mu + mu * mu) / (1.0 - std::exp(-mu));
    const double stderr_mean = std::sqrt((second - mean * mean) / p);
    CHECK(std::abs(sample.new_tags / p - mean) < 3.0 * stderr_mean);
}

TEST_CASE("pareto system mean with finite first moment") {
    RandomStream s = derive_stream({4, 0});
    const auto sample = simulate_system(DistributionSpec::pareto(1.0, 3.0), 10'000, s);
    CHECK(std::abs(sample.new_tags / 10'000 / 1.5 - 1.0) < 0.05);
    CHECK(sample.new_tags >= 10'000.0);
}

TEST_CASE("log-spaced grid") {
    PopulationGrid grid{10, 10'000, 100, Placement::LogSpaced};
    RandomStream unused(0);
    const auto ps = grid_populations(grid, unused);
    REQUIRE(ps.size() == 100);
    for (std::size_t j = 0; j < ps.size(); ++j) {
        CHECK(ps[j] == static_cast<std::uint64_t>(std::llround(std::pow(10.0, 1.0 + 3.0 * j / 99.0))));
    }
}

TEST_CASE("random grid stays within bounds") {
    PopulationGrid grid;
    RandomStream s(5);
    const auto ps = grid_populations(grid, s);
    CHECK(ps.size() == 100);
    CHECK(*std::min_element(ps.begin(), ps.end()) >= 10);
    CHECK(*std::max_element(ps.begin(), ps.end()) <= 10'000);
}

TEST_CASE("scatter generation is deterministic") {
    const auto spec = DistributionSpec::gamma(2.0, 1.5);
    const auto a = generate_scatter(spec, {}, {11, 3});
    const auto b = generate_scatter(spec, {}, {11, 3});
    CHECK(a == b);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].task_id == i);
    }
    CHECK(generate_scatter(spec, {}, {11, 4}) != a);
}

TEST_CASE("heavy-tailed scatter is dominated by extremes") {
    const auto scatter = generate_scatter(DistributionSpec::pareto(1.0, 0.5), {}, {kDefaultSeed, 0});
    std::vector<double> ts;
    for (const auto& s : scatter) {
        ts.push_back(s.new_tags);
    }
    std::sort(ts.begin(), ts.end());
    const double median = 0.5 * (ts[49] + ts[50]);
    CHECK(ts.back() > 10.0 * median);
}

TEST_CASE("power-law growth prediction") {
    CHECK(power_law_gamma(1.5) == 4.0 / 3.0);
    CHECK(power_law_gamma(2.0) == 1.0);
    CHECK(power_law_gamma(7.0) == 1.0);
    CHECK(power_law_gamma(1.25) == 1.6);
    CHECK_THROWS_WITH_AS(power_law_gamma(1.0), doctest::Contains("out of model domain"), Error);
    CHECK_THROWS_AS(power_law_gamma(0.5), Error);
}

TEST_CASE("aggregation is linear in the population") {
    // E[T(P1 + P2)] equals E[T(P1)] + E[T(P2)] for independent systems.
    const auto spec = DistributionSpec::gamma(2.0, 1.0);
    constexpr int reps = 200;
    std::vector<double> joint;
    std::vector<double> split;
    for (int r = 0; r < reps; ++r) {
        RandomStream a = derive_stream({21, static_cast<std::uint64_t>(r)});
        RandomStream b = derive_stream({22, static_cast<std::uint64_t>(r)});
        joint.push_back(simulate_system(spec, 100, a).new_tags);
        split.push_back(simulate_system(spec, 30, b).new_tags + simulate_system(spec, 70, b).new_tags);
    }
    auto mean_var = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) {
            m += x;
        }
        m /= v.size();
        double ss = 0.0;
        for (double x : v) {
            ss += (x - m) * (x - m);
        }
        return std::pair{m, ss / (v.size() - 1)};
    };
    const auto [mj, vj] = mean_var(joint);
    const auto [ms, vs] = mean_var(split);
    CHECK(std::abs(mj - ms) < 3.0 * std::sqrt(vj / reps + vs / reps));
}

TEST_CASE("light-tailed families grow linearly") {
    const DistributionSpec specs[] = {
        DistributionSpec::normal(5.0, 2.0), DistributionSpec::weibull(2.0, 3.0),
        DistributionSpec::poisson(3.0),     DistributionSpec::gamma(2.0, 2.0),
        DistributionSpec::pareto(2.0, 3.0),
    };
    std::uint64_t task = 0;
    for (const auto& spec : specs) {
        const double g = fit_loglog(generate_scatter(spec, {}, {kDefaultSeed, task++})).gamma;
        CHECK(g >= 0.95);
        CHECK(g <= 1.05);
    }
}

TEST_CASE("invalid grids and populations") {
    RandomStream s(0);
    CHECK_THROWS_AS(grid_populations({0, 100, 10}, s), Error);
    CHECK_THROWS_AS(grid_populations({100, 100, 10}, s), Error);
    CHECK_THROWS_AS(grid_populations({10, 100, 9}, s), Error);
    CHECK_THROWS_AS(simulate_system(DistributionSpec::pareto(1.0, 1.0), 0, s), Error);
}

TEST_CASE("overflowing totals are reported as numeric failures") {
    RandomStream s(0);
    try {
        simulate_system(DistributionSpec::pareto(1e300, 0.01), 1000, s);
        FAIL("expected overflow");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Numeric);
    }
}

TEST_CASE("placement names round-trip") {
    CHECK(parse_placement("log_spaced") == Placement::LogSpaced);
    CHECK(parse_placement(placement_name(Placement::LogUniformRandom)) == Placement::LogUniformRandom);
    CHECK_FALSE(parse_placement("linear"));
}
