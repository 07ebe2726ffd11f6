// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <string>

#include "allometry/io.hpp"

using namespace allometry;
namespace fs = std::filesystem;

namespace {

std::size_t count(const std::string& haystack, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

std::string error_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("full-precision number formatting") {
    RandomStream s(1);
    for (int i = 0; i < 10'000; ++i) {
        const double x = std::exp(80.0 * s.uniform() - 40.0);
        CHECK(std::stod(io::format_double(x)) == x);
    }
    CHECK(io::format_double(1.5) == "1.5");
    CHECK(io::format_double(1e21) == "1e+21");
}

TEST_CASE("scatter CSV round-trip is exact") {
    const auto samples = generate_scatter(DistributionSpec::lognormal(0.5, 1.7), {}, {9, 9});
    const auto text = io::scatter_csv(samples);
    CHECK(text.rfind("point_id,P,T\n", 0) == 0);
    const auto back = io::parse_scatter_csv(text);
    CHECK(back.samples == samples);
    CHECK(back.diagnostics.empty());
}

TEST_CASE("golden power-law file") {
    const auto file = io::read_scatter_csv(fs::path(ALLOMETRY_TEST_DATA) / "power_law_1_3.csv");
    CHECK(file.samples.size() == 20);
    const auto fit = fit_loglog(file.samples);
    CHECK(std::abs(fit.gamma - 1.3) < 1e-9);
    CHECK(std::abs(fit.log_intercept - std::log(2.0)) < 1e-9);
}

TEST_CASE("two-column input") {
    const auto file = io::parse_scatter_csv("P,T\n10,20\n100,400\n1000,8000\n");
    REQUIRE(file.samples.size() == 3);
    CHECK(file.samples[2].population == 1000);
    CHECK(file.samples[2].task_id == 2);
    CHECK(fit_loglog(file.samples).gamma == doctest::Approx(1.3010299956639813));
}

TEST_CASE("malformed scatter input") {
    CHECK(error_of([] { io::parse_scatter_csv(""); }).find("fewer than 3 valid rows") != std::string::npos);
    CHECK(error_of([] { io::parse_scatter_csv("P,T\n"); }).find("fewer than 3 valid rows") != std::string::npos);
    const auto msg = error_of([] { io::parse_scatter_csv("P,T\nabc,5\n"); });
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(error_of([] { io::parse_scatter_csv("x,y\n1,2\n"); }).find("line 1") != std::string::npos);
    CHECK(error_of([] { io::parse_scatter_csv("P,T\n10,20\n20\n"); }).find("line 3") != std::string::npos);
}

TEST_CASE("invalid rows become diagnostics") {
    const auto file = io::parse_scatter_csv("P,T\n10,20\n0,5\n100,-1\n100,400\n1000,8000\n");
    CHECK(file.samples.size() == 3);
    REQUIRE(file.diagnostics.size() == 2);
    CHECK(file.diagnostics[0].find("line 3") != std::string::npos);
    CHECK(file.diagnostics[1].find("line 4") != std::string::npos);
}

TEST_CASE("missing files are I/O errors") {
    try {
        io::read_scatter_csv("/nonexistent/scatter.csv");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Io);
    }
}

TEST_CASE("svg structure") {
    const auto pts = io::parse_scatter_csv("P,T\n10,20\n100,400\n1000,8000\n").samples;
    const auto fit = fit_loglog(pts);
    const auto svg = io::render_scatter_svg(pts, fit);
    CHECK(count(svg, "<circle") == 3);
    CHECK(count(svg, "<line") == 1);
    CHECK(svg.find("R&#178; = 1") != std::string::npos);
    CHECK(svg == io::render_scatter_svg(pts, fit));
    CHECK(io::sha256_hex(svg) == io::sha256_hex(io::render_scatter_svg(pts, fit)));

    io::SvgOptions opts;
    opts.title_prefix = "<a&b> ";
    CHECK(io::render_scatter_svg(pts, fit, opts).find("&lt;a&amp;b&gt; ") != std::string::npos);
    CHECK_THROWS_AS(io::render_scatter_svg({}, fit), Error);
}

TEST_CASE("heavy-tailed scatter spans three decades") {
    const auto pts = generate_scatter(DistributionSpec::pareto(5.0, 0.5), {}, {kDefaultSeed, 1});
    const auto svg = io::render_scatter_svg(pts, fit_loglog(pts));
    CHECK(count(svg, "<circle") == 100);
    CHECK(count(svg, "class=\"xtick\"") >= 4);
    CHECK(svg.find(">10^1<") != std::string::npos);
    CHECK(svg.find(">10^4<") != std::string::npos);
}

TEST_CASE("sha-256") {
    CHECK(io::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("file write, read and digest") {
    const auto path = fs::temp_directory_path() / "allometry_io_test.txt";
    io::write_text(path, "abc");
    CHECK(io::read_text(path) == "abc");
    CHECK(io::file_sha256(path) == io::sha256_hex("abc"));
    fs::remove(path);
    CHECK_THROWS_AS(io::write_text("/nonexistent/dir/x.txt", "abc"), Error);
}

TEST_CASE("config JSON round-trip") {
    auto config = default_table1_config();
    config.seed = 7;
    config.estimator = Estimator::Share;
    config.entropy_mode = EntropyMode::Standard;
    config.grid.placement = Placement::LogSpaced;
    config.cells[0].max_activity = 50.0;
    const auto j = io::to_json(config);
    const auto back = io::config_from_json(nlohmann::json::parse(io::dump(j)), SweepConfig{});
    CHECK(io::dump(io::to_json(back)) == io::dump(j));
    CHECK(back.cells[0].max_activity == 50.0);
    CHECK(std::isinf(back.cells[1].max_activity));
    CHECK_FALSE(back.cells[2].p2);
}

TEST_CASE("config overrides and rejects unknown keys") {
    const auto base = default_table1_config();
    const auto merged = io::config_from_json(nlohmann::json::parse(R"({"seed": 3, "grid": {"n_points": 20}})"), base);
    CHECK(merged.seed == 3);
    CHECK(merged.grid.n_points == 20);
    CHECK(merged.grid.p_max == base.grid.p_max);
    CHECK(merged.cells.size() == base.cells.size());
    CHECK(error_of([&] { io::config_from_json(nlohmann::json::parse(R"({"sede": 3})"), base); })
              .find("unknown key 'sede'") != std::string::npos);
    CHECK_THROWS_AS(io::config_from_json(nlohmann::json::parse(R"({"grid": {"pmin": 3}})"), base), Error);
    CHECK_THROWS_AS(io::config_from_json(nlohmann::json::parse(R"({"seed": "x"})"), base), Error);
    CHECK_THROWS_AS(io::config_from_json(nlohmann::json::parse(R"({"estimator": "kde"})"), base), Error);
    CHECK_THROWS_AS(io::config_from_json(nlohmann::json::parse("[1]"), base), Error);
}

TEST_CASE("distribution records") {
    const auto spec = DistributionSpec::pareto(2.0, 0.5);
    CHECK(io::spec_from_json(io::to_json(spec)) == spec);
    CHECK(io::to_json(DistributionSpec::poisson(3.0))["p2"].is_null());
    CHECK_THROWS_AS(io::spec_from_json(nlohmann::json::parse(R"({"family":"pareto","p1":-1,"p2":1})")), Error);
}

TEST_CASE("entropy dataset schemas") {
    auto config = default_table1_config();
    config.fig2_c.n = 2;
    config.fig2_beta.n = 3;
    const auto rows = fig2_dataset(config);
    const auto a = io::parse_entropy_points_csv(io::fig2_csv(rows));
    const auto b = io::parse_entropy_points_csv(io::entropy_csv(rows));
    REQUIRE(a.size() == 6);
    REQUIRE(b.size() == 6);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].h == rows[i].entropy.h_rescaled);
        CHECK(b[i].h == a[i].h);
        CHECK(b[i].beta == rows[i].beta);
    }
    CHECK(io::entropy_csv(rows).rfind("C,beta,N,h1,h_rescaled,mode\n", 0) == 0);
    CHECK_THROWS_AS(io::parse_entropy_points_csv("a,b\n1,2\n"), Error);
    CHECK_THROWS_AS(io::parse_entropy_points_csv(""), Error);
}

TEST_CASE("record layouts") {
    const auto j = io::to_json(ScalingFit{1.25, 0.5, 0.01, 0.99, 100});
    CHECK(io::dump(j) ==
          "{\n  \"gamma\": 1.25,\n  \"log_intercept\": 0.5,\n  \"stderr_gamma\": 0.01,\n"
          "  \"r_squared\": 0.99,\n  \"n_points\": 100\n}\n");
    HGammaPoint p;
    p.label = "Poisson";
    p.spec = DistributionSpec::poisson(2.0);
    p.gamma = 1.0;
    CHECK(io::hgamma_csv({p}).find("\nPoisson,2,,0,1\n") != std::string::npos);
}
