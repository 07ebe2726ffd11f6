// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
//
// allometry: command-line front end over the C API.
//
// Exit codes: 0 success, 2 bad input (including unreadable or unwritable
// files), 3 numeric failure, 1 internal error.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "allometry/allometry.h"

using nlohmann::ordered_json;

namespace {

constexpr double kReportedThreshold = 0.586;

// ---- errors ----------------------------------------------------------------

struct Failure {
    int code;
    std::string message;
};

int exit_code(allo_status status) {
    switch (status) {
        case ALLO_OK:
            return 0;
        case ALLO_E_BAD_INPUT:
        case ALLO_E_IO:
            return 2;
        case ALLO_E_NUMERIC:
            return 3;
        default:
            return 1;
    }
}

void check(allo_status status) {
    if (status != ALLO_OK) {
        throw Failure{exit_code(status), allo_last_error()};
    }
}

[[noreturn]] void bad_input(std::string message) {
    throw Failure{2, std::move(message)};
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
template <class T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, Deleter<T, Free>>;

using Config = Handle<allo_config, allo_config_free>;
using Scatter = Handle<allo_scatter, allo_scatter_free>;
using Table1 = Handle<allo_table1, allo_table1_free>;
using HGamma = Handle<allo_hgamma, allo_hgamma_free>;
using Fig2 = Handle<allo_fig2, allo_fig2_free>;

std::string take_string(char* s) {
    std::string out(s);
    allo_string_free(s);
    return out;
}

// ---- names -----------------------------------------------------------------

const std::vector<std::pair<std::string, allo_family>> kFamilies = {
    {"normal", ALLO_NORMAL}, {"weibull", ALLO_WEIBULL},     {"poisson", ALLO_POISSON},
    {"gamma", ALLO_GAMMA},   {"lognormal", ALLO_LOGNORMAL}, {"pareto", ALLO_PARETO},
};

allo_family parse_family(const std::string& name) {
    for (const auto& [n, f] : kFamilies) {
        if (n == name) {
            return f;
        }
    }
    bad_input("unknown family '" + name + "'");
}

std::string family_name(allo_family family) {
    for (const auto& [n, f] : kFamilies) {
        if (f == family) {
            return n;
        }
    }
    return "unknown";
}

// ---- files -----------------------------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        bad_input("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) {
        bad_input("cannot write '" + path + "'");
    }
}

std::string dump(const ordered_json& j) {
    return j.dump(2) + '\n';
}

ordered_json parse_json(const std::string& text, const std::string& what) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        bad_input(what + ": " + e.what());
    }
}

std::string sha256(const std::string& bytes) {
    char hex[65];
    check(allo_sha256(bytes.data(), bytes.size(), hex));
    return hex;
}

std::string file_sha256(const std::string& path) {
    char hex[65];
    check(allo_file_sha256(path.c_str(), hex));
    return hex;
}

// 4 significant digits for human-readable summaries.
std::string sig4(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

// ---- manifest --------------------------------------------------------------

// UTC ISO-8601 time; SOURCE_DATE_EPOCH pins it for reproducible manifests.
std::string timestamp() {
    std::time_t t = 0;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
        char* end = nullptr;
        const long long v = std::strtoll(epoch, &end, 10);
        if (*end != '\0' || v < 0) {
            bad_input("SOURCE_DATE_EPOCH must be a non-negative integer");
        }
        t = static_cast<std::time_t>(v);
    } else {
        t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Manifest {
public:
    Manifest(std::vector<std::string> argv) : argv_(std::move(argv)), started_(timestamp()) {}

    void set_config(ordered_json config) { config_ = std::move(config); }
    void set_seed(std::uint64_t master, std::optional<std::uint64_t> task) {
        seed_ = {{"master_seed", master}};
        if (task) {
            seed_["task_id"] = *task;
        }
    }
    void add_output(const std::string& path) { outputs_.push_back(path); }

    void write(const std::string& path) const {
        const std::string config_text = dump(config_);
        ordered_json j;
        j["tool"] = "allometry";
        j["tool_version"] = allo_version();
        j["command"] = argv_;
        j["config"] = config_;
        j["config_digest"] = sha256(config_text);
        j["seed"] = seed_;
        ordered_json outputs = ordered_json::array();
        for (const auto& p : outputs_) {
            outputs.push_back({{"path", p}, {"sha256", file_sha256(p)}});
        }
        j["outputs"] = std::move(outputs);
        j["started"] = started_;
        j["finished"] = timestamp();
        write_file(path, dump(j));
    }

private:
    std::vector<std::string> argv_;
    std::string started_;
    ordered_json config_ = ordered_json::object();
    ordered_json seed_ = ordered_json::object();
    std::vector<std::string> outputs_;
};

// ---- shared options --------------------------------------------------------

struct Common {
    std::string config_path;
    std::string manifest_path;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* threads_opt = nullptr;
};

struct Entropy {
    std::string estimator;
    std::string mode;
    std::uint64_t n = 0;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config_path, "JSON config; flags override its keys")
        ->check(CLI::ExistingFile);
    c.seed_opt = cmd->add_option("--seed", c.seed, "master seed (default 20240601)");
    c.threads_opt = cmd->add_option("--threads", c.threads, "worker threads (0: all cores)");
    cmd->add_option("--manifest", c.manifest_path, "run manifest path (default <out>.manifest.json)");
}

void add_entropy(CLI::App* cmd, Entropy& e) {
    cmd->add_option("--estimator", e.estimator, "entropy estimator")
        ->check(CLI::IsMember({"analytic", "share"}));
    cmd->add_option("--mode", e.mode, "entropy rescaling")
        ->check(CLI::IsMember({"paper", "standard", "none"}));
    cmd->add_option("--entropy-n", e.n, "population size N for rescaling and sampling");
}

// A config document: either a plain config or a manifest whose `config`
// is replayed.
ordered_json load_config_document(const std::string& path) {
    if (path.empty()) {
        return ordered_json::object();
    }
    auto j = parse_json(read_file(path), "config '" + path + "'");
    if (j.is_object() && j.contains("tool_version") && j.contains("config")) {
        j = j["config"];
    }
    if (!j.is_object()) {
        bad_input("config '" + path + "': expected a JSON object");
    }
    return j;
}

// Removes and returns a CLI-level key the library config does not know.
std::optional<ordered_json> extract(ordered_json& doc, const char* key) {
    if (!doc.contains(key)) {
        return std::nullopt;
    }
    auto v = doc[key];
    doc.erase(key);
    return v;
}

void merge(allo_config* config, const ordered_json& doc) {
    if (!doc.empty()) {
        check(allo_config_merge_json(config, doc.dump().c_str()));
    }
}

ordered_json flag_overrides(const Common& c, const Entropy* e) {
    ordered_json j = ordered_json::object();
    if (c.seed_opt->count() > 0) {
        j["seed"] = c.seed;
    }
    if (c.threads_opt->count() > 0) {
        j["threads"] = c.threads;
    }
    if (e) {
        if (!e->estimator.empty()) {
            j["estimator"] = e->estimator;
        }
        if (!e->mode.empty()) {
            j["entropy_mode"] = e->mode;
        }
        if (e->n > 0) {
            j["entropy_n"] = e->n;
        }
    }
    return j;
}

ordered_json config_json(const allo_config* config) {
    char* s = nullptr;
    check(allo_config_to_json(config, &s));
    return ordered_json::parse(take_string(s));
}

std::string manifest_path(const Common& c, const std::string& out) {
    return c.manifest_path.empty() ? out + ".manifest.json" : c.manifest_path;
}

double double_or(const ordered_json& j, const char* key, double fallback) {
    if (!j.contains(key) || j[key].is_null()) {
        return fallback;
    }
    if (!j[key].is_number()) {
        bad_input(std::string("config: '") + key + "' must be a number");
    }
    return j[key].get<double>();
}

std::uint64_t uint_of(const ordered_json& j, const char* what) {
    if (!j.is_number_unsigned()) {
        bad_input(std::string("config: '") + what + "' must be a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
    Common common;
    std::string family;
    double p1 = 0.0;
    double p2 = 0.0;
    double max_activity = 0.0;
    std::uint64_t pmin = 0;
    std::uint64_t pmax = 0;
    std::uint64_t points = 0;
    std::string placement;
    std::uint64_t task = 0;
    std::string out = "scatter.csv";
    CLI::Option* p1_opt = nullptr;
    CLI::Option* p2_opt = nullptr;
    CLI::Option* max_opt = nullptr;
    CLI::Option* pmin_opt = nullptr;
    CLI::Option* pmax_opt = nullptr;
    CLI::Option* points_opt = nullptr;
    CLI::Option* task_opt = nullptr;
};

int run_simulate(const SimulateArgs& a, Manifest& manifest) {
    auto doc = load_config_document(a.common.config_path);
    const auto dist = extract(doc, "distribution").value_or(ordered_json::object());
    const auto task_doc = extract(doc, "task");

    allo_config* raw = nullptr;
    check(allo_config_default(&raw));
    Config config(raw);
    merge(config.get(), doc);
    merge(config.get(), flag_overrides(a.common, nullptr));

    allo_grid grid{};
    check(allo_config_grid(config.get(), &grid));
    if (a.pmin_opt->count() > 0) {
        grid.p_min = a.pmin;
    }
    if (a.pmax_opt->count() > 0) {
        grid.p_max = a.pmax;
    }
    if (a.points_opt->count() > 0) {
        grid.n_points = a.points;
    }
    if (!a.placement.empty()) {
        grid.placement = a.placement == "log_spaced" ? ALLO_LOG_SPACED : ALLO_LOG_UNIFORM_RANDOM;
    }
    check(allo_config_set_grid(config.get(), &grid));

    if (!dist.is_object()) {
        bad_input("config: 'distribution' must be an object");
    }
    std::string family = a.family;
    if (family.empty()) {
        if (!dist.contains("family") || !dist["family"].is_string()) {
            bad_input("simulate: --family is required");
        }
        family = dist["family"].get<std::string>();
    }
    allo_distribution spec{parse_family(family), double_or(dist, "p1", NAN), double_or(dist, "p2", NAN),
                           double_or(dist, "max_activity", INFINITY)};
    if (a.p1_opt->count() > 0) {
        spec.p1 = a.p1;
    }
    if (a.p2_opt->count() > 0) {
        spec.p2 = a.p2;
    }
    if (a.max_opt->count() > 0) {
        spec.max_activity = a.max_activity;
    }
    if (std::isnan(spec.p1)) {
        bad_input("simulate: --p1 is required");
    }
    if (spec.family != ALLO_POISSON && std::isnan(spec.p2)) {
        bad_input("simulate: --p2 is required for family " + family);
    }
    check(allo_distribution_validate(&spec));
    const std::uint64_t task = a.task_opt->count() > 0 ? a.task : task_doc ? uint_of(*task_doc, "task") : 0;
    const std::uint64_t seed = allo_config_seed(config.get());

    allo_scatter* s = nullptr;
    check(allo_scatter_generate(&spec, &grid, seed, task, &s));
    Scatter scatter(s);
    check(allo_scatter_write_csv(scatter.get(), a.out.c_str()));

    ordered_json d;
    d["family"] = family_name(spec.family);
    d["p1"] = spec.p1;
    d["p2"] = std::isnan(spec.p2) ? ordered_json(nullptr) : ordered_json(spec.p2);
    d["max_activity"] = std::isfinite(spec.max_activity) ? ordered_json(spec.max_activity) : ordered_json(nullptr);
    const auto effective = config_json(config.get());
    ordered_json record;
    record["seed"] = seed;
    record["grid"] = effective["grid"];
    record["distribution"] = d;
    record["task"] = task;
    manifest.set_config(record);
    manifest.set_seed(seed, task);
    manifest.add_output(a.out);
    manifest.write(manifest_path(a.common, a.out));
    std::cout << "simulate: " << allo_scatter_size(scatter.get()) << " systems -> " << a.out << '\n';
    return 0;
}

// ---- fit / render ----------------------------------------------------------

Scatter read_scatter(const std::string& path) {
    allo_scatter* s = nullptr;
    check(allo_scatter_read_csv(path.c_str(), &s));
    Scatter scatter(s);
    for (std::size_t i = 0; i < allo_scatter_diagnostic_count(scatter.get()); ++i) {
        std::cerr << "warning: " << path << ": " << allo_scatter_diagnostic(scatter.get(), i) << '\n';
    }
    return scatter;
}

ordered_json input_record(const std::string& path) {
    return {{"input", path}, {"input_sha256", file_sha256(path)}};
}

void describe_fit(const allo_scaling_fit& fit) {
    std::cout << "gamma = " << sig4(fit.gamma) << " (se " << sig4(fit.stderr_gamma)
              << "), R^2 = " << sig4(fit.r_squared) << ", n = " << fit.n_points << '\n';
}

struct FileArgs {
    Common common;
    std::string in;
    std::string out;
    std::string title;
};

int run_fit(const FileArgs& a, Manifest& manifest) {
    const auto scatter = read_scatter(a.in);
    allo_scaling_fit fit{};
    check(allo_fit_loglog(scatter.get(), &fit));
    char* s = nullptr;
    check(allo_scaling_fit_to_json(&fit, &s));
    ordered_json record = input_record(a.in);
    record["fit"] = ordered_json::parse(take_string(s));
    ordered_json rejected = ordered_json::array();
    for (std::size_t i = 0; i < allo_scatter_diagnostic_count(scatter.get()); ++i) {
        rejected.push_back(allo_scatter_diagnostic(scatter.get(), i));
    }
    record["rejected_rows"] = std::move(rejected);
    write_file(a.out, dump(record));

    manifest.set_config(input_record(a.in));
    manifest.set_seed(a.common.seed_opt->count() > 0 ? a.common.seed : 20240601, std::nullopt);
    manifest.add_output(a.out);
    manifest.write(manifest_path(a.common, a.out));
    describe_fit(fit);
    return 0;
}

int run_render(const FileArgs& a, Manifest& manifest) {
    const auto scatter = read_scatter(a.in);
    allo_scaling_fit fit{};
    check(allo_fit_loglog(scatter.get(), &fit));
    check(allo_scatter_render_svg(scatter.get(), &fit, a.out.c_str()));

    auto record = input_record(a.in);
    manifest.set_config(record);
    manifest.set_seed(a.common.seed_opt->count() > 0 ? a.common.seed : 20240601, std::nullopt);
    manifest.add_output(a.out);
    manifest.write(manifest_path(a.common, a.out));
    describe_fit(fit);
    std::cout << "render: -> " << a.out << '\n';
    return 0;
}

// ---- sweeps ----------------------------------------------------------------

struct SweepArgs {
    Common common;
    Entropy entropy;
    double scale = 1.0;
    CLI::Option* scale_opt = nullptr;
    bool with_reference = false;
    std::string in;
    std::string out;
    std::string entropy_out;
    std::string report;
};

Config sweep_config(const SweepArgs& a, bool hgamma) {
    auto doc = load_config_document(a.common.config_path);
    const auto scale_doc = extract(doc, "scale");
    allo_config* raw = nullptr;
    check(hgamma ? allo_config_default_hgamma(&raw) : allo_config_default(&raw));
    Config config(raw);
    merge(config.get(), doc);
    merge(config.get(), flag_overrides(a.common, &a.entropy));
    if (hgamma && a.with_reference) {
        check(allo_config_add_light_tailed(config.get()));
    }
    double scale = 1.0;
    if (a.scale_opt && a.scale_opt->count() > 0) {
        scale = a.scale;
    } else if (scale_doc) {
        if (!scale_doc->is_number()) {
            bad_input("config: 'scale' must be a number");
        }
        scale = scale_doc->get<double>();
    }
    if (scale != 1.0) {
        check(allo_config_set_scale(config.get(), scale));
    }
    return config;
}

void finish_sweep(const SweepArgs& a, const allo_config* config, Manifest& manifest,
                  const std::vector<std::string>& outputs) {
    manifest.set_config(config_json(config));
    manifest.set_seed(allo_config_seed(config), std::nullopt);
    for (const auto& p : outputs) {
        manifest.add_output(p);
    }
    manifest.write(manifest_path(a.common, outputs.front()));
}

int run_table1(const SweepArgs& a, Manifest& manifest) {
    const auto config = sweep_config(a, false);
    allo_table1* raw = nullptr;
    check(allo_run_table1(config.get(), &raw));
    Table1 table(raw);
    check(allo_table1_write_csv(table.get(), a.out.c_str()));
    finish_sweep(a, config.get(), manifest, {a.out});

    std::printf("%-10s %7s %10s %10s\n", "family", "sims", "mean", "sd");
    for (std::size_t i = 0; i < allo_table1_size(table.get()); ++i) {
        allo_table1_row row{};
        check(allo_table1_get(table.get(), i, &row));
        std::printf("%-10s %7llu %10s %10s\n", row.label, static_cast<unsigned long long>(row.n_sims),
                    sig4(row.mean_gamma).c_str(), sig4(row.sd_gamma).c_str());
    }
    return 0;
}

ordered_json model_fit_json(const allo_entropy_model_fit& fit) {
    char* s = nullptr;
    check(allo_entropy_model_fit_to_json(&fit, &s));
    auto j = ordered_json::parse(take_string(s));
    j["reported_threshold"] = kReportedThreshold;
    return j;
}

void describe_model_fit(const allo_entropy_model_fit& fit) {
    std::cout << "k1 = " << sig4(fit.k1) << ", k2 = " << sig4(fit.k2) << ", k3 = " << sig4(fit.k3)
              << ", rms = " << sig4(fit.rms_residual) << '\n'
              << "h_threshold = " << sig4(fit.h_threshold) << " (reported: " << kReportedThreshold << ")\n";
}

int run_fig2(const SweepArgs& a, Manifest& manifest) {
    const auto config = sweep_config(a, false);
    allo_fig2* raw = nullptr;
    check(allo_run_fig2(config.get(), &raw));
    Fig2 data(raw);
    check(allo_fig2_write_csv(data.get(), a.out.c_str()));
    std::vector<std::string> outputs{a.out};
    if (!a.entropy_out.empty()) {
        check(allo_fig2_write_entropy_csv(data.get(), a.entropy_out.c_str()));
        outputs.push_back(a.entropy_out);
    }
    finish_sweep(a, config.get(), manifest, outputs);
    allo_entropy_model_fit fit{};
    check(allo_fig2_fit(data.get(), &fit));
    std::cout << "fig2: " << allo_fig2_size(data.get()) << " rows -> " << a.out << '\n';
    describe_model_fit(fit);
    return 0;
}

int run_threshold(const SweepArgs& a, Manifest& manifest) {
    Fig2 data;
    Config config;
    if (!a.in.empty()) {
        allo_fig2* raw = nullptr;
        check(allo_fig2_read_csv(a.in.c_str(), &raw));
        data.reset(raw);
    } else {
        config = sweep_config(a, false);
        allo_fig2* raw = nullptr;
        check(allo_run_fig2(config.get(), &raw));
        data.reset(raw);
    }
    allo_entropy_model_fit fit{};
    check(allo_fig2_fit(data.get(), &fit));
    ordered_json record;
    record["n_points"] = allo_fig2_size(data.get());
    record["fit"] = model_fit_json(fit);
    write_file(a.out, dump(record));

    if (config) {
        finish_sweep(a, config.get(), manifest, {a.out});
    } else {
        manifest.set_config(input_record(a.in));
        manifest.set_seed(a.common.seed_opt->count() > 0 ? a.common.seed : 20240601, std::nullopt);
        manifest.add_output(a.out);
        manifest.write(manifest_path(a.common, a.out));
    }
    describe_model_fit(fit);
    return 0;
}

int run_hgamma(const SweepArgs& a, Manifest& manifest) {
    const auto config = sweep_config(a, true);
    allo_hgamma* raw = nullptr;
    check(allo_run_hgamma(config.get(), &raw));
    HGamma result(raw);
    check(allo_hgamma_write_csv(result.get(), a.out.c_str()));
    allo_threshold_report report{};
    check(allo_hgamma_threshold(result.get(), &report));

    // The entropy-model threshold under the same estimator and rescaling.
    allo_fig2* fig_raw = nullptr;
    check(allo_run_fig2(config.get(), &fig_raw));
    Fig2 fig(fig_raw);
    allo_entropy_model_fit fit{};
    check(allo_fig2_fit(fig.get(), &fit));

    std::vector<std::string> outputs{a.out};
    if (!a.report.empty()) {
        ordered_json j;
        j["n_points"] = allo_hgamma_size(result.get());
        j["threshold_property"] = {
            {"accelerating_above", 1.1},
            {"n_accelerating", report.n_accelerating},
            {"n_light", report.n_light},
            {"min_h_accelerating", report.n_accelerating ? ordered_json(report.min_h_accelerating) : ordered_json(nullptr)},
            {"max_h_light", report.n_light ? ordered_json(report.max_h_light) : ordered_json(nullptr)},
            {"violating_pairs", report.violating_pairs},
            {"holds", report.holds != 0},
        };
        j["entropy_model"] = model_fit_json(fit);
        write_file(a.report, dump(j));
        outputs.push_back(a.report);
    }
    finish_sweep(a, config.get(), manifest, outputs);

    std::cout << "hgamma: " << allo_hgamma_size(result.get()) << " points -> " << a.out << '\n'
              << "accelerating (gamma > 1.1): " << report.n_accelerating
              << ", light-tailed: " << report.n_light << '\n';
    if (report.n_accelerating > 0 && report.n_light > 0) {
        std::cout << "min H accelerating = " << sig4(report.min_h_accelerating)
                  << ", max H light-tailed = " << sig4(report.max_h_light)
                  << ", violating pairs = " << report.violating_pairs << '\n';
    }
    std::cout << "threshold property " << (report.holds ? "holds" : "does not hold") << '\n'
              << "h_threshold = " << sig4(fit.h_threshold) << " (reported: " << kReportedThreshold << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"allometry: allometric growth of tagging systems from activity distributions"};
    app.set_version_flag("--version", std::string(allo_version()));
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "simulate one (P, T) scatter");
    add_common(simulate, sim.common);
    simulate->add_option("--family", sim.family, "activity family")
        ->check(CLI::IsMember({"normal", "weibull", "poisson", "gamma", "lognormal", "pareto"}));
    sim.p1_opt = simulate->add_option("--p1", sim.p1, "first parameter (mean, shape, log-mean or scale k)");
    sim.p2_opt = simulate->add_option("--p2", sim.p2, "second parameter (sigma, scale, log-sigma or tail index)");
    sim.max_opt = simulate->add_option("--max-activity", sim.max_activity, "per-user activity cap");
    sim.pmin_opt = simulate->add_option("--pmin", sim.pmin, "smallest population");
    sim.pmax_opt = simulate->add_option("--pmax", sim.pmax, "largest population");
    sim.points_opt = simulate->add_option("--points", sim.points, "number of systems");
    simulate->add_option("--placement", sim.placement, "population placement")
        ->check(CLI::IsMember({"log_uniform_random", "log_spaced"}));
    sim.task_opt = simulate->add_option("--task", sim.task, "stream task id (default 0)");
    simulate->add_option("--out", sim.out, "scatter CSV")->capture_default_str();

    FileArgs fit_args;
    fit_args.out = "fit.json";
    auto* fit = app.add_subcommand("fit", "fit T = A P^gamma to a scatter CSV");
    add_common(fit, fit_args.common);
    fit->add_option("--in,input", fit_args.in, "scatter CSV (point_id,P,T or P,T)")->required();
    fit->add_option("--out", fit_args.out, "fit record JSON")->capture_default_str();

    FileArgs render_args;
    render_args.out = "scatter.svg";
    auto* render = app.add_subcommand("render", "render a scatter CSV with its fit as SVG");
    add_common(render, render_args.common);
    render->add_option("--in,input", render_args.in, "scatter CSV")->required();
    render->add_option("--out", render_args.out, "SVG file")->capture_default_str();

    SweepArgs t1;
    t1.out = "table1.csv";
    auto* table1 = app.add_subcommand("table1", "growth-exponent sweep over all families");
    add_common(table1, t1.common);
    t1.scale_opt = table1->add_option("--scale", t1.scale, "fraction (0, 1] of the simulations to run");
    table1->add_option("--out", t1.out, "summary CSV")->capture_default_str();

    SweepArgs f2;
    f2.out = "fig2.csv";
    auto* fig2 = app.add_subcommand("fig2", "Pareto entropy over the (C, beta) grid");
    add_common(fig2, f2.common);
    add_entropy(fig2, f2.entropy);
    fig2->add_option("--out", f2.out, "C,beta,H CSV")->capture_default_str();
    fig2->add_option("--entropy-out", f2.entropy_out, "detailed C,beta,N,h1,h_rescaled,mode CSV");

    SweepArgs hg;
    hg.out = "hgamma.csv";
    auto* hgamma = app.add_subcommand("hgamma", "entropy versus growth exponent");
    add_common(hgamma, hg.common);
    add_entropy(hgamma, hg.entropy);
    hg.scale_opt = hgamma->add_option("--scale", hg.scale, "fraction (0, 1] of the simulations to run");
    hgamma->add_flag("--with-reference", hg.with_reference, "add the light-tailed reference sweeps");
    hgamma->add_option("--out", hg.out, "family,p1,p2,H,gamma CSV")->capture_default_str();
    hgamma->add_option("--report", hg.report, "threshold report JSON");

    SweepArgs th;
    th.out = "threshold.json";
    auto* threshold = app.add_subcommand("threshold", "fit the entropy model to a fig2 dataset");
    add_common(threshold, th.common);
    add_entropy(threshold, th.entropy);
    threshold->add_option("--in,input", th.in, "fig2 CSV (computed from the config when absent)");
    threshold->add_option("--out", th.out, "fit record JSON")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::vector<std::string> command(argv, argv + argc);
        command.front() = "allometry";
        Manifest manifest(std::move(command));
        if (simulate->parsed()) {
            return run_simulate(sim, manifest);
        }
        if (fit->parsed()) {
            return run_fit(fit_args, manifest);
        }
        if (render->parsed()) {
            return run_render(render_args, manifest);
        }
        if (table1->parsed()) {
            return run_table1(t1, manifest);
        }
        if (fig2->parsed()) {
            return run_fig2(f2, manifest);
        }
        if (hgamma->parsed()) {
            return run_hgamma(hg, manifest);
        }
        if (threshold->parsed()) {
            return run_threshold(th, manifest);
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << '\n';
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
