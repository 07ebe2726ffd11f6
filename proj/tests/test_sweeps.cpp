// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "allometry/scaling.hpp"
#include "allometry/sweeps.hpp"

using namespace allometry;

namespace {

SweepConfig only(SweepConfig config, std::initializer_list<std::string_view> labels) {
    std::vector<SweepCell> kept;
    for (auto& cell : config.cells) {
        for (auto l : labels) {
            if (cell.label == l) {
                kept.push_back(cell);
            }
        }
    }
    config.cells = std::move(kept);
    return config;
}

HGammaPoint point(DistributionSpec spec, double h, double gamma) {
    HGammaPoint p;
    p.spec = spec;
    p.entropy.h1 = h;
    p.entropy.h_rescaled = h;
    p.gamma = gamma;
    return p;
}

}  // namespace

TEST_CASE("reference simulation counts") {
    const auto cells = table1_cells();
    REQUIRE(cells.size() == 7);
    const std::uint64_t expected[] = {400, 400, 40, 400, 400, 200, 200};
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        CHECK(cells[i].n_sims() == expected[i]);
        CHECK(cells[i].specs().size() == expected[i]);
        total += cells[i].n_sims();
    }
    CHECK(total == 2040);
    CHECK(cells[2].family == Family::Poisson);
    CHECK_FALSE(cells[2].p2);
}

TEST_CASE("axis spacings") {
    const auto mid = ParamAxis{0.0, 1.0, 4, Spacing::Midpoint}.values();
    CHECK(mid == std::vector<double>{0.125, 0.375, 0.625, 0.875});
    const auto closed = ParamAxis{1.0, 10.0, 10, Spacing::Closed}.values();
    CHECK(closed.front() == 1.0);
    CHECK(closed.back() == 10.0);
    const auto upper = ParamAxis{1.0, 10.0, 10, Spacing::Upper}.values();
    CHECK(upper.front() == doctest::Approx(1.9));
    CHECK(upper.back() == 10.0);
    CHECK(ParamAxis{2.0, 2.0, 1, Spacing::Closed}.values() == std::vector<double>{2.0});
}

TEST_CASE("pareto-1 specs stay in the heavy regime") {
    for (const auto& cell : table1_cells()) {
        for (const auto& spec : cell.specs()) {
            CHECK_NOTHROW(validate(spec));
            if (cell.label == "Pareto-1") {
                CHECK(*spec.p2 < 1.0);
            }
            if (cell.label == "Pareto-2") {
                CHECK(*spec.p2 > 1.0);
            }
        }
    }
}

TEST_CASE("scaling the sweep") {
    auto config = default_table1_config();
    scale_cells(config, 0.01);
    for (const auto& cell : config.cells) {
        CHECK(cell.n_sims() >= 2);
        CHECK(cell.n_sims() <= 9);
    }
    CHECK_THROWS_AS(scale_cells(config, 0.0), Error);
    CHECK_THROWS_AS(scale_cells(config, 1.5), Error);
}

TEST_CASE("results do not depend on the thread count") {
    auto config = default_table1_config();
    scale_cells(config, 0.02);
    config.threads = 1;
    const auto serial = run_table1(config);
    config.threads = 4;
    const auto parallel = run_table1(config);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].mean_gamma == parallel[i].mean_gamma);
        CHECK(serial[i].sd_gamma == parallel[i].sd_gamma);
    }
}

TEST_CASE("gamma and pareto-1 growth regimes") {
    auto config = only(default_table1_config(), {"Gamma", "Pareto-1"});
    scale_cells(config, 0.1);
    const auto rows = run_table1(config);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].mean_gamma >= 0.95);
    CHECK(rows[0].mean_gamma <= 1.05);
    CHECK(rows[1].mean_gamma > 1.0);
}

TEST_CASE("h-gamma points reuse the growth-sweep scatters") {
    auto config = only(default_table1_config(), {"LogNormal"});
    scale_cells(config, 0.01);
    const auto rows = run_table1(config);
    const auto points = run_h_gamma(config);
    REQUIRE(points.size() == rows[0].n_sims);
    double mean = 0.0;
    for (const auto& p : points) {
        mean += p.gamma;
        CHECK(p.label == "LogNormal");
        CHECK(p.entropy.h1 == analytic_entropy(p.spec));
    }
    CHECK(mean / points.size() == doctest::Approx(rows[0].mean_gamma).epsilon(1e-14));
}

TEST_CASE("fig2 dataset") {
    auto config = default_table1_config();
    config.entropy_mode = EntropyMode::None;
    const auto rows = fig2_dataset(config);
    REQUIRE(rows.size() == 100);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].beta > 1.0);
        if (i % 10 != 9) {
            CHECK(rows[i + 1].c == rows[i].c);
            CHECK(rows[i + 1].entropy.h_rescaled < rows[i].entropy.h_rescaled);
        }
    }
    const auto fit = fit_entropy_model(to_entropy_points(rows));
    CHECK(std::abs(fit.h_threshold - 2.0) < 1e-6);
}

TEST_CASE("share estimator path is deterministic and bounded") {
    auto config = default_table1_config();
    config.estimator = Estimator::Share;
    config.entropy_n = 500;
    config.fig2_c.n = 3;
    config.fig2_beta.n = 4;
    config.entropy_mode = EntropyMode::Standard;
    const auto a = fig2_dataset(config);
    const auto b = fig2_dataset(config);
    REQUIRE(a.size() == 12);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].entropy.h1 == b[i].entropy.h1);
        CHECK(a[i].entropy.n_users == 500);
        CHECK(a[i].entropy.h_rescaled > 0.0);
        CHECK(a[i].entropy.h_rescaled <= 1.0);
    }
}

TEST_CASE("threshold property on constructed points") {
    const auto heavy = DistributionSpec::pareto(1.0, 0.5);
    const auto light = DistributionSpec::gamma(2.0, 1.0);
    std::vector<HGammaPoint> pts{
        point(heavy, 3.0, 1.8), point(heavy, 2.5, 1.5), point(heavy, 1.0, 1.05),
        point(light, 1.0, 1.0), point(light, 2.0, 1.0),
    };
    auto r = threshold_property(pts);
    CHECK(r.n_accelerating == 2);
    CHECK(r.n_light == 2);
    CHECK(r.min_h_accelerating == 2.5);
    CHECK(r.max_h_light == 2.0);
    CHECK(r.violating_pairs == 0);
    CHECK(r.holds);

    pts.push_back(point(DistributionSpec::pareto(1.0, 3.0), 2.5, 1.0));
    r = threshold_property(pts);
    CHECK(r.violating_pairs == 1);
    CHECK_FALSE(r.holds);

    CHECK_FALSE(threshold_property({point(light, 1.0, 1.0)}).holds);
}

TEST_CASE("light-tailed classification") {
    CHECK(light_tailed(DistributionSpec::normal(1.0, 1.0)));
    CHECK(light_tailed(DistributionSpec::poisson(2.0)));
    CHECK(light_tailed(DistributionSpec::pareto(1.0, 2.0)));
    CHECK_FALSE(light_tailed(DistributionSpec::pareto(1.0, 0.9)));
    CHECK_FALSE(light_tailed(DistributionSpec::lognormal(0.0, 1.0)));
    CHECK(light_tailed_cells().size() == 5);
}

TEST_CASE("cell seeds are distinct across labels and indices") {
    CHECK(cell_seed(1, "Gamma", 0).task_id != cell_seed(1, "Normal", 0).task_id);
    CHECK(cell_seed(1, "Gamma", 0).task_id != cell_seed(1, "Gamma", 1).task_id);
    CHECK(cell_seed(1, "Gamma", 0).master_seed == 1);
}

TEST_CASE("invalid sweep configurations") {
    auto config = default_table1_config();
    config.cells[0].p1.n = 0;
    CHECK_THROWS_AS(validate(config), Error);
    config = default_table1_config();
    config.cells[2].p2 = ParamAxis{1.0, 2.0, 2};
    CHECK_THROWS_AS(validate(config), Error);
    config = default_table1_config();
    config.fig2_beta = {0.5, 3.0, 3, Spacing::Closed};
    CHECK_THROWS_AS(fig2_dataset(config), Error);
    config = default_table1_config();
    config.entropy_n = 1;
    CHECK_THROWS_AS(validate(config), Error);
}
