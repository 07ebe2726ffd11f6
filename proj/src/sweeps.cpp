// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#include "allometry/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "allometry/scaling.hpp"

namespace allometry {
namespace {

constexpr std::uint64_t fnv1a64(std::string_view text) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

unsigned worker_count(unsigned requested, std::size_t tasks) {
    unsigned n = requested == 0 ? std::thread::hardware_concurrency() : requested;
    n = std::max(1u, n);
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

// Runs body(i) for i in [0, count). Results must be written by index; the
// lowest-index failure is rethrown so errors do not depend on scheduling.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = worker_count(threads, count);
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n);
        for (unsigned t = 0; t < n; ++t) {
            pool.emplace_back(worker);
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

struct CellTask {
    std::size_t cell = 0;
    std::uint64_t index = 0;
    DistributionSpec spec;
};

std::vector<CellTask> flatten(const std::vector<SweepCell>& cells) {
    std::vector<CellTask> tasks;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto specs = cells[c].specs();
        for (std::uint64_t i = 0; i < specs.size(); ++i) {
            tasks.push_back({c, i, specs[i]});
        }
    }
    return tasks;
}

double fitted_gamma(const SweepConfig& config, const SweepCell& cell,
                    const CellTask& task) {
    const auto scatter =
        generate_scatter(task.spec, config.grid, cell_seed(config.seed, cell.label, task.index));
    return fit_loglog(scatter).gamma;
}

EntropyEstimate estimate_entropy(const SweepConfig& config, const DistributionSpec& spec,
                                 SeedSpec seed) {
    double h1 = 0.0;
    if (config.estimator == Estimator::Analytic) {
        h1 = analytic_entropy(spec);
    } else {
        RandomStream stream = derive_stream({stream_seed(seed), kEntropyTask});
        h1 = share_entropy(sample_activities(spec, config.entropy_n, stream));
    }
    return rescale(h1, config.entropy_n, config.entropy_mode);
}

void validate_axis(const ParamAxis& axis, const std::string& where) {
    if (axis.n < 1 || !(axis.lo < axis.hi) || !std::isfinite(axis.lo) || !std::isfinite(axis.hi)) {
        throw_bad_input("invalid axis for " + where + ": need lo < hi and n >= 1");
    }
    if (axis.spacing == Spacing::Closed && axis.n < 2) {
        throw_bad_input("invalid axis for " + where + ": closed spacing needs n >= 2");
    }
}

}  // namespace

std::string_view spacing_name(Spacing spacing) noexcept {
    switch (spacing) {
        case Spacing::Midpoint:
            return "midpoint";
        case Spacing::Closed:
            return "closed";
        case Spacing::Upper:
            return "upper";
    }
    return "midpoint";
}

std::optional<Spacing> parse_spacing(std::string_view name) noexcept {
    for (auto s : {Spacing::Midpoint, Spacing::Closed, Spacing::Upper}) {
        if (spacing_name(s) == name) {
            return s;
        }
    }
    return std::nullopt;
}

std::vector<double> ParamAxis::values() const {
    std::vector<double> out(n);
    const double width = hi - lo;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double idx = static_cast<double>(i);
        switch (spacing) {
            case Spacing::Midpoint:
                out[i] = lo + (idx + 0.5) * width / static_cast<double>(n);
                break;
            case Spacing::Closed:
                out[i] = n == 1 ? lo : lo + idx * width / static_cast<double>(n - 1);
                break;
            case Spacing::Upper:
                out[i] = lo + (idx + 1.0) * width / static_cast<double>(n);
                break;
        }
    }
    return out;
}

std::vector<DistributionSpec> SweepCell::specs() const {
    std::vector<DistributionSpec> out;
    const auto a = p1.values();
    const auto b = p2 ? p2->values() : std::vector<double>{};
    for (double x : a) {
        if (!p2) {
            out.push_back({family, x, std::nullopt, max_activity});
            continue;
        }
        for (double y : b) {
            out.push_back({family, x, y, max_activity});
        }
    }
    return out;
}

std::string_view estimator_name(Estimator estimator) noexcept {
    return estimator == Estimator::Share ? "share" : "analytic";
}

std::optional<Estimator> parse_estimator(std::string_view name) noexcept {
    if (name == "analytic") {
        return Estimator::Analytic;
    }
    if (name == "share") {
        return Estimator::Share;
    }
    return std::nullopt;
}

std::vector<SweepCell> table1_cells() {
    const ParamAxis one_ten{1.0, 10.0, 20, Spacing::Midpoint};
    const ParamAxis tenth_ten{0.1, 10.0, 20, Spacing::Midpoint};
    return {
        {"Normal", Family::Normal, one_ten, tenth_ten},
        {"Weibull", Family::Weibull, one_ten, tenth_ten},
        {"Poisson", Family::Poisson, {0.1, 10.0, 40, Spacing::Midpoint}, std::nullopt},
        {"Gamma", Family::Gamma, one_ten, tenth_ten},
        {"LogNormal", Family::LogNormal, one_ten, tenth_ten},
        {"Pareto-1", Family::Pareto, one_ten, ParamAxis{0.1, 1.0, 10, Spacing::Midpoint}},
        {"Pareto-2", Family::Pareto, one_ten, ParamAxis{1.0, 10.0, 10, Spacing::Midpoint}},
    };
}

SweepConfig default_table1_config() {
    SweepConfig config;
    config.cells = table1_cells();
    return config;
}

SweepConfig default_hgamma_config() {
    SweepConfig config;
    for (auto& cell : table1_cells()) {
        if (cell.label == "Pareto-1" || cell.label == "LogNormal") {
            config.cells.push_back(std::move(cell));
        }
    }
    return config;
}

void scale_cells(SweepConfig& config, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw_bad_input("scale must be in (0, 1]");
    }
    auto shrink = [](std::uint64_t n, double f) {
        return std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::llround(static_cast<double>(n) * f)));
    };
    for (auto& cell : config.cells) {
        if (cell.p2) {
            const double f = std::sqrt(fraction);
            cell.p1.n = shrink(cell.p1.n, f);
            cell.p2->n = shrink(cell.p2->n, f);
        } else {
            cell.p1.n = shrink(cell.p1.n, fraction);
        }
    }
}

void validate(const SweepConfig& config) {
    validate(config.grid);
    for (const auto& cell : config.cells) {
        validate_axis(cell.p1, cell.label + " p1");
        if (cell.p2) {
            validate_axis(*cell.p2, cell.label + " p2");
        }
        if ((cell.family == Family::Poisson) == cell.p2.has_value()) {
            throw_bad_input("invalid cell " + cell.label + ": p2 axis must be absent exactly for poisson");
        }
    }
    validate_axis(config.fig2_c, "fig2 C");
    validate_axis(config.fig2_beta, "fig2 beta");
    if (config.entropy_n < 2) {
        throw_bad_input("entropy_n must be >= 2");
    }
}

SeedSpec cell_seed(std::uint64_t master, std::string_view label,
                   std::uint64_t index) noexcept {
    return {master, mix64(fnv1a64(label)) + index};
}

std::vector<SweepRow> run_table1(const SweepConfig& config) {
    validate(config);
    const auto tasks = flatten(config.cells);
    std::vector<double> gammas(tasks.size());
    parallel_for(tasks.size(), config.threads, [&](std::size_t i) {
        gammas[i] = fitted_gamma(config, config.cells[tasks[i].cell], tasks[i]);
    });

    std::vector<SweepRow> rows;
    std::size_t offset = 0;
    for (const auto& cell : config.cells) {
        const std::size_t n = cell.n_sims();
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mean += gammas[offset + i];
        }
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = gammas[offset + i] - mean;
            ss += d * d;
        }
        const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
        rows.push_back({cell.label, cell.family, n, mean, sd});
        offset += n;
    }
    return rows;
}

std::vector<HGammaPoint> run_h_gamma(const SweepConfig& config) {
    validate(config);
    const auto tasks = flatten(config.cells);
    std::vector<HGammaPoint> points(tasks.size());
    parallel_for(tasks.size(), config.threads, [&](std::size_t i) {
        const auto& task = tasks[i];
        const auto& cell = config.cells[task.cell];
        HGammaPoint& p = points[i];
        p.label = cell.label;
        p.spec = task.spec;
        p.gamma = fitted_gamma(config, cell, task);
        p.entropy = estimate_entropy(config, task.spec, cell_seed(config.seed, cell.label, task.index));
    });
    return points;
}

std::vector<Fig2Row> fig2_dataset(const SweepConfig& config) {
    validate(config);
    const auto cs = config.fig2_c.values();
    const auto betas = config.fig2_beta.values();
    for (double b : betas) {
        if (!(b > 1.0)) {
            throw_bad_input("fig2 beta values must be > 1");
        }
    }
    for (double c : cs) {
        if (!(c > 0.0)) {
            throw_bad_input("fig2 C values must be > 0");
        }
    }
    std::vector<Fig2Row> rows(cs.size() * betas.size());
    parallel_for(rows.size(), config.threads, [&](std::size_t i) {
        const double c = cs[i / betas.size()];
        const double beta = betas[i % betas.size()];
        const auto spec = DistributionSpec::pareto(c, beta - 1.0);
        rows[i] = {c, beta, estimate_entropy(config, spec, cell_seed(config.seed, "fig2", i))};
    });
    return rows;
}

std::vector<EntropyPoint> to_entropy_points(const std::vector<Fig2Row>& rows) {
    std::vector<EntropyPoint> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        out.push_back({r.c, r.beta, r.entropy.h_rescaled});
    }
    return out;
}

bool light_tailed(const DistributionSpec& spec) noexcept {
    switch (spec.family) {
        case Family::Normal:
        case Family::Weibull:
        case Family::Poisson:
        case Family::Gamma:
            return true;
        case Family::Pareto:
            return spec.p2.value_or(0.0) > 1.0;
        case Family::LogNormal:
            return false;
    }
    return false;
}

std::vector<SweepCell> light_tailed_cells() {
    std::vector<SweepCell> out;
    for (auto& cell : table1_cells()) {
        if (cell.label != "Pareto-1" && cell.label != "LogNormal") {
            out.push_back(std::move(cell));
        }
    }
    return out;
}

ThresholdReport threshold_property(const std::vector<HGammaPoint>& points,
                                   double accelerating_above) {
    ThresholdReport report;
    std::vector<double> accel;
    std::vector<double> light;
    for (const auto& p : points) {
        if (light_tailed(p.spec)) {
            light.push_back(p.entropy.h_rescaled);
        } else if (p.gamma > accelerating_above) {
            accel.push_back(p.entropy.h_rescaled);
        }
    }
    report.n_accelerating = accel.size();
    report.n_light = light.size();
    if (accel.empty() || light.empty()) {
        return report;
    }
    std::sort(light.begin(), light.end());
    report.min_h_accelerating = *std::min_element(accel.begin(), accel.end());
    report.max_h_light = light.back();
    for (double h : accel) {
        report.violating_pairs += static_cast<std::uint64_t>(
            light.end() - std::lower_bound(light.begin(), light.end(), h));
    }
    report.holds = report.min_h_accelerating > report.max_h_light;
    return report;
}

}  // namespace allometry
