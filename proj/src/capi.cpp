// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#include "allometry/allometry.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "allometry/error.hpp"
#include "allometry/io.hpp"
#include "allometry/scaling.hpp"
#include "allometry/sweeps.hpp"
#include "allometry/version.hpp"

namespace al = allometry;

struct allo_stream {
    al::RandomStream rng;
};

struct allo_scatter {
    std::vector<al::SystemSample> samples;
    std::vector<std::string> diagnostics;
};

struct allo_config {
    al::SweepConfig config;
};

struct allo_table1 {
    std::vector<al::SweepRow> rows;
};

struct allo_hgamma {
    std::vector<al::HGammaPoint> points;
};

struct allo_fig2 {
    std::vector<al::Fig2Row> rows;
    bool detailed = true;  // false when only (C, beta, H) were read from a file
};

namespace {

thread_local std::string g_last_error;

allo_status fail(allo_status status, const char* what) {
    g_last_error = what;
    return status;
}

// Runs body(), translating exceptions into status codes.
template <class F>
allo_status guarded(F&& body) noexcept {
    try {
        g_last_error.clear();
        body();
        return ALLO_OK;
    } catch (const al::Error& e) {
        switch (e.kind()) {
            case al::ErrorKind::BadInput:
                return fail(ALLO_E_BAD_INPUT, e.what());
            case al::ErrorKind::Numeric:
                return fail(ALLO_E_NUMERIC, e.what());
            case al::ErrorKind::Io:
                return fail(ALLO_E_IO, e.what());
        }
        return fail(ALLO_E_INTERNAL, e.what());
    } catch (const std::bad_alloc&) {
        return fail(ALLO_E_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ALLO_E_INTERNAL, e.what());
    } catch (...) {
        return fail(ALLO_E_INTERNAL, "unknown error");
    }
}

template <class T>
void require(const T* p, const char* what) {
    if (p == nullptr) {
        al::throw_bad_input(std::string("null argument: ") + what);
    }
}

al::DistributionSpec to_spec(const allo_distribution* d) {
    require(d, "distribution");
    if (d->family < ALLO_NORMAL || d->family > ALLO_PARETO) {
        al::throw_bad_input("invalid parameters: unknown family");
    }
    al::DistributionSpec spec;
    spec.family = static_cast<al::Family>(d->family);
    spec.p1 = d->p1;
    if (!std::isnan(d->p2)) {
        spec.p2 = d->p2;
    }
    spec.max_activity = d->max_activity;
    al::validate(spec);
    return spec;
}

allo_distribution from_spec(const al::DistributionSpec& s) {
    return {static_cast<allo_family>(s.family), s.p1, s.p2.value_or(NAN), s.max_activity};
}

allo_entropy_estimate from_estimate(const al::EntropyEstimate& e) {
    return {e.h1, e.n_users, e.h_rescaled, static_cast<allo_entropy_mode>(e.mode)};
}

al::PopulationGrid to_grid(const allo_grid* g) {
    require(g, "grid");
    if (g->placement != ALLO_LOG_UNIFORM_RANDOM && g->placement != ALLO_LOG_SPACED) {
        al::throw_bad_input("invalid grid: unknown placement");
    }
    al::PopulationGrid grid{g->p_min, g->p_max, g->n_points,
                            g->placement == ALLO_LOG_SPACED ? al::Placement::LogSpaced
                                                            : al::Placement::LogUniformRandom};
    al::validate(grid);
    return grid;
}

al::ScalingFit to_fit(const allo_scaling_fit* f) {
    require(f, "fit");
    return {f->gamma, f->log_intercept, f->stderr_gamma, f->r_squared, f->n_points};
}

allo_scaling_fit from_fit(const al::ScalingFit& f) {
    return {f.gamma, f.log_intercept, f.stderr_gamma, f.r_squared, f.n_points};
}

allo_entropy_model_fit from_model_fit(const al::EntropyModelFit& f) {
    return {f.k1, f.k2, f.k3, f.rms_residual, f.h_threshold};
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class V>
const auto& at(const V& v, size_t index) {
    if (index >= v.size()) {
        al::throw_bad_input("index out of range");
    }
    return v[index];
}

}  // namespace

extern "C" {

const char* allo_version(void) { return al::kVersion; }

const char* allo_last_error(void) { return g_last_error.c_str(); }

void allo_string_free(char* s) { delete[] s; }

allo_status allo_sha256(const void* data, size_t n, char* out) {
    return guarded([&] {
        if (n > 0) {
            require(data, "data");
        }
        require(out, "out");
        const auto hex = al::io::sha256_hex({static_cast<const char*>(data), n});
        std::memcpy(out, hex.c_str(), hex.size() + 1);
    });
}

allo_status allo_file_sha256(const char* path, char* out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        const auto hex = al::io::file_sha256(path);
        std::memcpy(out, hex.c_str(), hex.size() + 1);
    });
}

uint64_t allo_mix64(uint64_t z) { return al::mix64(z); }

uint64_t allo_stream_seed(uint64_t master_seed, uint64_t task_id) {
    return al::stream_seed({master_seed, task_id});
}

allo_status allo_stream_create(uint64_t master_seed, uint64_t task_id, allo_stream** out) {
    return guarded([&] {
        require(out, "out");
        *out = new allo_stream{al::derive_stream({master_seed, task_id})};
    });
}

uint64_t allo_stream_next(allo_stream* stream) { return stream->rng.next(); }

double allo_stream_uniform(allo_stream* stream) { return stream->rng.uniform(); }

void allo_stream_free(allo_stream* stream) { delete stream; }

allo_status allo_distribution_validate(const allo_distribution* spec) {
    return guarded([&] { to_spec(spec); });
}

allo_status allo_sample_activities(const allo_distribution* spec, size_t n, allo_stream* stream,
                                   double* out) {
    return guarded([&] {
        require(stream, "stream");
        require(out, "out");
        const auto values = al::sample_activities(to_spec(spec), n, stream->rng);
        std::copy(values.begin(), values.end(), out);
    });
}

allo_status allo_analytic_entropy(const allo_distribution* spec, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = al::analytic_entropy(to_spec(spec));
    });
}

allo_status allo_simulate_system(const allo_distribution* spec, uint64_t population,
                                 allo_stream* stream, allo_sample* out) {
    return guarded([&] {
        require(stream, "stream");
        require(out, "out");
        const auto s = al::simulate_system(to_spec(spec), population, stream->rng);
        *out = {s.population, s.new_tags, s.task_id};
    });
}

allo_status allo_power_law_gamma(double beta, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = al::power_law_gamma(beta);
    });
}

allo_status allo_scatter_generate(const allo_distribution* spec, const allo_grid* grid,
                                  uint64_t master_seed, uint64_t task_id, allo_scatter** out) {
    return guarded([&] {
        require(out, "out");
        auto samples = al::generate_scatter(to_spec(spec), grid ? to_grid(grid) : al::PopulationGrid{},
                                            {master_seed, task_id});
        *out = new allo_scatter{std::move(samples), {}};
    });
}

allo_status allo_scatter_from_arrays(const uint64_t* population, const double* new_tags, size_t n,
                                     allo_scatter** out) {
    return guarded([&] {
        require(out, "out");
        if (n > 0) {
            require(population, "population");
            require(new_tags, "new_tags");
        }
        auto* s = new allo_scatter;
        s->samples.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            s->samples.push_back({population[i], new_tags[i], i});
        }
        *out = s;
    });
}

allo_status allo_scatter_read_csv(const char* path, allo_scatter** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        auto file = al::io::read_scatter_csv(path);
        *out = new allo_scatter{std::move(file.samples), std::move(file.diagnostics)};
    });
}

size_t allo_scatter_size(const allo_scatter* scatter) {
    return scatter ? scatter->samples.size() : 0;
}

allo_status allo_scatter_get(const allo_scatter* scatter, size_t index, allo_sample* out) {
    return guarded([&] {
        require(scatter, "scatter");
        require(out, "out");
        const auto& s = at(scatter->samples, index);
        *out = {s.population, s.new_tags, s.task_id};
    });
}

size_t allo_scatter_diagnostic_count(const allo_scatter* scatter) {
    return scatter ? scatter->diagnostics.size() : 0;
}

const char* allo_scatter_diagnostic(const allo_scatter* scatter, size_t index) {
    if (scatter == nullptr || index >= scatter->diagnostics.size()) {
        return nullptr;
    }
    return scatter->diagnostics[index].c_str();
}

allo_status allo_scatter_write_csv(const allo_scatter* scatter, const char* path) {
    return guarded([&] {
        require(scatter, "scatter");
        require(path, "path");
        al::io::write_text(path, al::io::scatter_csv(scatter->samples));
    });
}

allo_status allo_scatter_render_svg(const allo_scatter* scatter, const allo_scaling_fit* fit,
                                    const char* path) {
    return guarded([&] {
        require(scatter, "scatter");
        require(path, "path");
        al::io::write_text(path, al::io::render_scatter_svg(scatter->samples, to_fit(fit)));
    });
}

void allo_scatter_free(allo_scatter* scatter) { delete scatter; }

allo_status allo_fit_loglog(const allo_scatter* scatter, allo_scaling_fit* out) {
    return guarded([&] {
        require(scatter, "scatter");
        require(out, "out");
        *out = from_fit(al::fit_loglog(scatter->samples));
    });
}

allo_status allo_predict(const allo_scaling_fit* fit, uint64_t population, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = al::predict(to_fit(fit), population);
    });
}

allo_status allo_scaling_fit_to_json(const allo_scaling_fit* fit, char** out) {
    return guarded([&] {
        require(out, "out");
        *out = copy_string(al::io::dump(al::io::to_json(to_fit(fit))));
    });
}

allo_status allo_share_entropy(const double* activities, size_t n, double* out) {
    return guarded([&] {
        require(out, "out");
        if (n > 0) {
            require(activities, "activities");
        }
        *out = al::share_entropy({activities, n});
    });
}

allo_status allo_entropy_model(double c, double beta, double k1, double k2, double k3,
                               double* out) {
    return guarded([&] {
        require(out, "out");
        *out = al::entropy_model(c, beta, k1, k2, k3);
    });
}

allo_status allo_rescale(double h1, uint64_t n_users, allo_entropy_mode mode,
                         allo_entropy_estimate* out) {
    return guarded([&] {
        require(out, "out");
        if (mode < ALLO_MODE_PAPER || mode > ALLO_MODE_NONE) {
            al::throw_bad_input("unknown entropy mode");
        }
        *out = from_estimate(al::rescale(h1, n_users, static_cast<al::EntropyMode>(mode)));
    });
}

allo_status allo_fit_entropy_model(const allo_entropy_point* points, size_t n,
                                   allo_entropy_model_fit* out) {
    return guarded([&] {
        require(out, "out");
        if (n > 0) {
            require(points, "points");
        }
        std::vector<al::EntropyPoint> pts;
        pts.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            pts.push_back({points[i].c, points[i].beta, points[i].h});
        }
        *out = from_model_fit(al::fit_entropy_model(pts));
    });
}

allo_status allo_entropy_model_fit_to_json(const allo_entropy_model_fit* fit, char** out) {
    return guarded([&] {
        require(fit, "fit");
        require(out, "out");
        const al::EntropyModelFit f{fit->k1, fit->k2, fit->k3, fit->rms_residual, fit->h_threshold};
        *out = copy_string(al::io::dump(al::io::to_json(f)));
    });
}

allo_status allo_config_default(allo_config** out) {
    return guarded([&] {
        require(out, "out");
        *out = new allo_config{al::default_table1_config()};
    });
}

allo_status allo_config_default_hgamma(allo_config** out) {
    return guarded([&] {
        require(out, "out");
        *out = new allo_config{al::default_hgamma_config()};
    });
}

allo_status allo_config_add_light_tailed(allo_config* config) {
    return guarded([&] {
        require(config, "config");
        for (auto& cell : al::light_tailed_cells()) {
            const bool present = std::any_of(
                config->config.cells.begin(), config->config.cells.end(),
                [&](const al::SweepCell& c) { return c.label == cell.label; });
            if (!present) {
                config->config.cells.push_back(std::move(cell));
            }
        }
    });
}

allo_status allo_config_merge_json(allo_config* config, const char* json) {
    return guarded([&] {
        require(config, "config");
        require(json, "json");
        const auto doc = nlohmann::json::parse(json, nullptr, false);
        if (doc.is_discarded()) {
            al::throw_bad_input("config: not valid JSON");
        }
        config->config = al::io::config_from_json(doc, config->config);
    });
}

allo_status allo_config_merge_file(allo_config* config, const char* path) {
    return guarded([&] {
        require(config, "config");
        require(path, "path");
        const auto text = al::io::read_text(path);
        const auto doc = nlohmann::json::parse(text, nullptr, false);
        if (doc.is_discarded()) {
            al::throw_bad_input(std::string("config: '") + path + "' is not valid JSON");
        }
        config->config = al::io::config_from_json(doc, config->config);
    });
}

allo_status allo_config_set_seed(allo_config* config, uint64_t seed) {
    return guarded([&] {
        require(config, "config");
        config->config.seed = seed;
    });
}

allo_status allo_config_set_threads(allo_config* config, unsigned threads) {
    return guarded([&] {
        require(config, "config");
        config->config.threads = threads;
    });
}

allo_status allo_config_set_scale(allo_config* config, double fraction) {
    return guarded([&] {
        require(config, "config");
        al::scale_cells(config->config, fraction);
    });
}

allo_status allo_config_set_grid(allo_config* config, const allo_grid* grid) {
    return guarded([&] {
        require(config, "config");
        config->config.grid = to_grid(grid);
    });
}

allo_status allo_config_set_entropy(allo_config* config, allo_estimator estimator,
                                    allo_entropy_mode mode, uint64_t entropy_n) {
    return guarded([&] {
        require(config, "config");
        if (estimator != ALLO_ESTIMATOR_ANALYTIC && estimator != ALLO_ESTIMATOR_SHARE) {
            al::throw_bad_input("unknown estimator");
        }
        if (mode < ALLO_MODE_PAPER || mode > ALLO_MODE_NONE) {
            al::throw_bad_input("unknown entropy mode");
        }
        if (entropy_n < 2) {
            al::throw_bad_input("entropy_n must be >= 2");
        }
        config->config.estimator = static_cast<al::Estimator>(estimator);
        config->config.entropy_mode = static_cast<al::EntropyMode>(mode);
        config->config.entropy_n = entropy_n;
    });
}

uint64_t allo_config_seed(const allo_config* config) {
    return config ? config->config.seed : al::kDefaultSeed;
}

size_t allo_config_spec_count(const allo_config* config) {
    if (!config) {
        return 0;
    }
    size_t n = 0;
    for (const auto& cell : config->config.cells) {
        n += cell.n_sims();
    }
    return n;
}

allo_status allo_config_spec(const allo_config* config, size_t index, allo_distribution* out) {
    return guarded([&] {
        require(config, "config");
        require(out, "out");
        for (const auto& cell : config->config.cells) {
            if (index < cell.n_sims()) {
                *out = from_spec(cell.specs()[index]);
                return;
            }
            index -= cell.n_sims();
        }
        al::throw_bad_input("spec index out of range");
    });
}

allo_status allo_config_grid(const allo_config* config, allo_grid* out) {
    return guarded([&] {
        require(config, "config");
        require(out, "out");
        const auto& g = config->config.grid;
        *out = {g.p_min, g.p_max, g.n_points,
                g.placement == al::Placement::LogSpaced ? ALLO_LOG_SPACED : ALLO_LOG_UNIFORM_RANDOM};
    });
}

allo_status allo_config_to_json(const allo_config* config, char** out) {
    return guarded([&] {
        require(config, "config");
        require(out, "out");
        *out = copy_string(al::io::dump(al::io::to_json(config->config)));
    });
}

void allo_config_free(allo_config* config) { delete config; }

allo_status allo_run_table1(const allo_config* config, allo_table1** out) {
    return guarded([&] {
        require(config, "config");
        require(out, "out");
        *out = new allo_table1{al::run_table1(config->config)};
    });
}

size_t allo_table1_size(const allo_table1* table) { return table ? table->rows.size() : 0; }

allo_status allo_table1_get(const allo_table1* table, size_t index, allo_table1_row* out) {
    return guarded([&] {
        require(table, "table");
        require(out, "out");
        const auto& r = at(table->rows, index);
        *out = {r.label.c_str(), static_cast<allo_family>(r.family), r.n_sims, r.mean_gamma,
                r.sd_gamma};
    });
}

allo_status allo_table1_write_csv(const allo_table1* table, const char* path) {
    return guarded([&] {
        require(table, "table");
        require(path, "path");
        al::io::write_text(path, al::io::table1_csv(table->rows));
    });
}

void allo_table1_free(allo_table1* table) { delete table; }

allo_status allo_run_hgamma(const allo_config* config, allo_hgamma** out) {
    return guarded([&] {
        require(config, "config");
        require(out, "out");
        *out = new allo_hgamma{al::run_h_gamma(config->config)};
    });
}

size_t allo_hgamma_size(const allo_hgamma* result) { return result ? result->points.size() : 0; }

allo_status allo_hgamma_get(const allo_hgamma* result, size_t index, allo_hgamma_point* out) {
    return guarded([&] {
        require(result, "result");
        require(out, "out");
        const auto& p = at(result->points, index);
        *out = {p.label.c_str(), from_spec(p.spec), from_estimate(p.entropy), p.gamma};
    });
}

allo_status allo_hgamma_threshold(const allo_hgamma* result, allo_threshold_report* out) {
    return guarded([&] {
        require(result, "result");
        require(out, "out");
        const auto r = al::threshold_property(result->points);
        *out = {r.n_accelerating, r.n_light, r.min_h_accelerating, r.max_h_light,
                r.violating_pairs, r.holds ? 1 : 0};
    });
}

allo_status allo_hgamma_write_csv(const allo_hgamma* result, const char* path) {
    return guarded([&] {
        require(result, "result");
        require(path, "path");
        al::io::write_text(path, al::io::hgamma_csv(result->points));
    });
}

void allo_hgamma_free(allo_hgamma* result) { delete result; }

allo_status allo_run_fig2(const allo_config* config, allo_fig2** out) {
    return guarded([&] {
        require(config, "config");
        require(out, "out");
        *out = new allo_fig2{al::fig2_dataset(config->config), true};
    });
}

allo_status allo_fig2_read_csv(const char* path, allo_fig2** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        if (!std::filesystem::exists(path)) {
            al::throw_io(std::string("missing file '") + path + "'");
        }
        const auto points = al::io::parse_entropy_points_csv(al::io::read_text(path));
        auto* data = new allo_fig2{{}, false};
        for (const auto& p : points) {
            data->rows.push_back({p.c, p.beta, {p.h, 0, p.h, al::EntropyMode::None}});
        }
        *out = data;
    });
}

size_t allo_fig2_size(const allo_fig2* data) { return data ? data->rows.size() : 0; }

allo_status allo_fig2_get(const allo_fig2* data, size_t index, allo_fig2_row* out) {
    return guarded([&] {
        require(data, "data");
        require(out, "out");
        const auto& r = at(data->rows, index);
        *out = {r.c, r.beta, from_estimate(r.entropy)};
    });
}

allo_status allo_fig2_fit(const allo_fig2* data, allo_entropy_model_fit* out) {
    return guarded([&] {
        require(data, "data");
        require(out, "out");
        *out = from_model_fit(al::fit_entropy_model(al::to_entropy_points(data->rows)));
    });
}

allo_status allo_fig2_write_csv(const allo_fig2* data, const char* path) {
    return guarded([&] {
        require(data, "data");
        require(path, "path");
        al::io::write_text(path, al::io::fig2_csv(data->rows));
    });
}

allo_status allo_fig2_write_entropy_csv(const allo_fig2* data, const char* path) {
    return guarded([&] {
        require(data, "data");
        require(path, "path");
        if (!data->detailed) {
            al::throw_bad_input("dataset was read from (C, beta, H) rows; no entropy detail to write");
        }
        al::io::write_text(path, al::io::entropy_csv(data->rows));
    });
}

void allo_fig2_free(allo_fig2* data) { delete data; }

}  // extern "C"
