// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#include "allometry/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "allometry/error.hpp"

namespace allometry::io {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fixed2(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::fixed, 2);
    return std::string(buf.data(), end);
}

std::string sig4(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::general, 4);
    return std::string(buf.data(), end);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

// Numbered non-blank lines.
std::vector<std::pair<std::size_t, std::string_view>> lines_of(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> out;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const auto pos = text.find('\n');
        const auto line = trim(text.substr(0, pos));
        if (!line.empty()) {
            out.emplace_back(number, line);
        }
        if (pos == std::string_view::npos) {
            break;
        }
        text.remove_prefix(pos + 1);
    }
    return out;
}

bool parse_number(std::string_view s, double& out) {
    if (s.empty()) {
        return false;
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

[[noreturn]] void bad_row(std::size_t line, std::string_view row, const std::string& why) {
    throw_bad_input("line " + std::to_string(line) + ": " + why + " in row '" + std::string(row) + "'");
}

ordered_json axis_json(const ParamAxis& a) {
    return {{"lo", a.lo}, {"hi", a.hi}, {"n", a.n}, {"spacing", spacing_name(a.spacing)}};
}

template <class T, class Parser>
T parse_enum(const json& j, const char* key, Parser parse) {
    const auto name = j.at(key).get<std::string>();
    const auto v = parse(name);
    if (!v) {
        throw_bad_input(std::string("config: unknown ") + key + " '" + name + "'");
    }
    return *v;
}

ParamAxis axis_from_json(const json& j, ParamAxis base) {
    for (const auto& [key, value] : j.items()) {
        if (key == "lo") {
            base.lo = value.get<double>();
        } else if (key == "hi") {
            base.hi = value.get<double>();
        } else if (key == "n") {
            base.n = value.get<std::uint64_t>();
        } else if (key == "spacing") {
            base.spacing = parse_enum<Spacing>(j, "spacing", parse_spacing);
        } else {
            throw_bad_input("config: unknown axis key '" + key + "'");
        }
    }
    return base;
}

SweepCell cell_from_json(const json& j) {
    SweepCell cell;
    cell.family = parse_enum<Family>(j, "family", parse_family);
    cell.label = j.contains("label") ? j.at("label").get<std::string>()
                                     : std::string(family_name(cell.family));
    cell.p1 = axis_from_json(j.at("p1"), {});
    if (j.contains("p2") && !j.at("p2").is_null()) {
        cell.p2 = axis_from_json(j.at("p2"), {});
    }
    if (j.contains("max_activity") && !j.at("max_activity").is_null()) {
        cell.max_activity = j.at("max_activity").get<double>();
    }
    for (const auto& [key, value] : j.items()) {
        if (key != "label" && key != "family" && key != "p1" && key != "p2" &&
            key != "max_activity") {
            throw_bad_input("config: unknown cell key '" + key + "'");
        }
    }
    return cell;
}

std::string p2_text(const DistributionSpec& spec) {
    return spec.p2 ? format_double(*spec.p2) : std::string();
}

}  // namespace

std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

void write_text(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw_io("cannot open '" + path.string() + "' for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out) {
        throw_io("failed writing '" + path.string() + "'");
    }
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw_io("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string sha256_hex(std::string_view bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw_io("sha256 digest failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex;
    hex.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        hex.push_back(kHex[md[i] >> 4]);
        hex.push_back(kHex[md[i] & 0xF]);
    }
    return hex;
}

std::string file_sha256(const std::filesystem::path& path) {
    return sha256_hex(read_text(path));
}

std::string scatter_csv(const std::vector<SystemSample>& samples) {
    std::string out = "point_id,P,T\n";
    for (const auto& s : samples) {
        out += std::to_string(s.task_id) + ',' + std::to_string(s.population) + ',' +
               format_double(s.new_tags) + '\n';
    }
    return out;
}

ScatterFile parse_scatter_csv(std::string_view text) {
    const auto lines = lines_of(text);
    if (lines.empty()) {
        throw_bad_input("fewer than 3 valid rows");
    }
    const auto header = split(lines.front().second, ',');
    bool with_id = false;
    if (header.size() == 3 && header[0] == "point_id" && header[1] == "P" && header[2] == "T") {
        with_id = true;
    } else if (!(header.size() == 2 && header[0] == "P" && header[1] == "T")) {
        throw_bad_input("line " + std::to_string(lines.front().first) +
                        ": expected header 'point_id,P,T' or 'P,T'");
    }

    ScatterFile file;
    std::uint64_t row_index = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto [number, line] = lines[i];
        const auto fields = split(line, ',');
        if (fields.size() != header.size()) {
            bad_row(number, line, "expected " + std::to_string(header.size()) + " fields");
        }
        std::uint64_t id = row_index++;
        if (with_id) {
            auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), id);
            if (ec != std::errc() || ptr != fields[0].data() + fields[0].size()) {
                bad_row(number, line, "malformed point_id");
            }
        }
        double p = 0.0;
        double t = 0.0;
        const std::size_t off = with_id ? 1 : 0;
        if (!parse_number(fields[off], p) || !std::isfinite(p) || p != std::floor(p)) {
            bad_row(number, line, "malformed P (expected an integer count)");
        }
        if (!parse_number(fields[off + 1], t) || std::isnan(t)) {
            bad_row(number, line, "malformed T");
        }
        if (p < 1.0) {
            file.diagnostics.push_back("line " + std::to_string(number) + ": rejected, P < 1");
            continue;
        }
        if (!(t > 0.0) || !std::isfinite(t)) {
            file.diagnostics.push_back("line " + std::to_string(number) + ": rejected, T must be finite and > 0");
            continue;
        }
        if (p > 9.007199254740992e15) {
            bad_row(number, line, "P too large");
        }
        file.samples.push_back({static_cast<std::uint64_t>(p), t, id});
    }
    if (file.samples.size() < 3) {
        throw_bad_input("fewer than 3 valid rows");
    }
    return file;
}

ScatterFile read_scatter_csv(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        throw_io("missing file '" + path.string() + "'");
    }
    return parse_scatter_csv(read_text(path));
}

std::string table1_csv(const std::vector<SweepRow>& rows) {
    std::string out = "family,n_sims,mean_gamma,sd_gamma\n";
    for (const auto& r : rows) {
        out += r.label + ',' + std::to_string(r.n_sims) + ',' + format_double(r.mean_gamma) + ',' +
               format_double(r.sd_gamma) + '\n';
    }
    return out;
}

std::string hgamma_csv(const std::vector<HGammaPoint>& points) {
    std::string out = "family,p1,p2,H,gamma\n";
    for (const auto& p : points) {
        out += p.label + ',' + format_double(p.spec.p1) + ',' + p2_text(p.spec) + ',' +
               format_double(p.entropy.h_rescaled) + ',' + format_double(p.gamma) + '\n';
    }
    return out;
}

std::string fig2_csv(const std::vector<Fig2Row>& rows) {
    std::string out = "C,beta,H\n";
    for (const auto& r : rows) {
        out += format_double(r.c) + ',' + format_double(r.beta) + ',' +
               format_double(r.entropy.h_rescaled) + '\n';
    }
    return out;
}

std::string entropy_csv(const std::vector<Fig2Row>& rows) {
    std::string out = "C,beta,N,h1,h_rescaled,mode\n";
    for (const auto& r : rows) {
        out += format_double(r.c) + ',' + format_double(r.beta) + ',' +
               std::to_string(r.entropy.n_users) + ',' + format_double(r.entropy.h1) + ',' +
               format_double(r.entropy.h_rescaled) + ',' + std::string(mode_name(r.entropy.mode)) + '\n';
    }
    return out;
}

std::vector<EntropyPoint> parse_entropy_points_csv(std::string_view text) {
    const auto lines = lines_of(text);
    if (lines.empty()) {
        throw_bad_input("empty entropy dataset");
    }
    const auto header = split(lines.front().second, ',');
    auto column = [&](std::string_view name) -> std::ptrdiff_t {
        const auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : it - header.begin();
    };
    const auto ci = column("C");
    const auto bi = column("beta");
    auto hi = column("H");
    if (hi < 0) {
        hi = column("h_rescaled");
    }
    if (ci < 0 || bi < 0 || hi < 0) {
        throw_bad_input("line 1: expected header 'C,beta,H' or 'C,beta,N,h1,h_rescaled,mode'");
    }
    std::vector<EntropyPoint> points;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto [number, line] = lines[i];
        const auto fields = split(line, ',');
        if (fields.size() != header.size()) {
            bad_row(number, line, "expected " + std::to_string(header.size()) + " fields");
        }
        EntropyPoint p;
        if (!parse_number(fields[static_cast<std::size_t>(ci)], p.c) ||
            !parse_number(fields[static_cast<std::size_t>(bi)], p.beta) ||
            !parse_number(fields[static_cast<std::size_t>(hi)], p.h)) {
            bad_row(number, line, "malformed number");
        }
        points.push_back(p);
    }
    return points;
}

ordered_json to_json(const ScalingFit& fit) {
    return {{"gamma", fit.gamma},
            {"log_intercept", fit.log_intercept},
            {"stderr_gamma", fit.stderr_gamma},
            {"r_squared", fit.r_squared},
            {"n_points", fit.n_points}};
}

ordered_json to_json(const EntropyModelFit& fit) {
    return {{"k1", fit.k1},
            {"k2", fit.k2},
            {"k3", fit.k3},
            {"rms_residual", fit.rms_residual},
            {"h_threshold", fit.h_threshold}};
}

ordered_json to_json(const DistributionSpec& spec) {
    ordered_json j;
    j["family"] = family_name(spec.family);
    j["p1"] = spec.p1;
    j["p2"] = spec.p2 ? ordered_json(*spec.p2) : ordered_json(nullptr);
    j["max_activity"] = spec.truncated() ? ordered_json(spec.max_activity) : ordered_json(nullptr);
    return j;
}

DistributionSpec spec_from_json(const json& j) {
    try {
        DistributionSpec spec;
        spec.family = parse_enum<Family>(j, "family", parse_family);
        spec.p1 = j.at("p1").get<double>();
        if (j.contains("p2") && !j.at("p2").is_null()) {
            spec.p2 = j.at("p2").get<double>();
        }
        if (j.contains("max_activity") && !j.at("max_activity").is_null()) {
            spec.max_activity = j.at("max_activity").get<double>();
        }
        validate(spec);
        return spec;
    } catch (const json::exception& e) {
        throw_bad_input(std::string("distribution record: ") + e.what());
    }
}

ordered_json to_json(const SweepConfig& config) {
    ordered_json j;
    j["seed"] = config.seed;
    j["grid"] = {{"p_min", config.grid.p_min},
                 {"p_max", config.grid.p_max},
                 {"n_points", config.grid.n_points},
                 {"placement", placement_name(config.grid.placement)}};
    j["entropy_mode"] = mode_name(config.entropy_mode);
    j["estimator"] = estimator_name(config.estimator);
    j["entropy_n"] = config.entropy_n;
    j["fig2"] = {{"c", axis_json(config.fig2_c)}, {"beta", axis_json(config.fig2_beta)}};
    ordered_json cells = ordered_json::array();
    for (const auto& c : config.cells) {
        ordered_json cj;
        cj["label"] = c.label;
        cj["family"] = family_name(c.family);
        cj["p1"] = axis_json(c.p1);
        cj["p2"] = c.p2 ? axis_json(*c.p2) : ordered_json(nullptr);
        cj["max_activity"] = std::isfinite(c.max_activity) ? ordered_json(c.max_activity)
                                                           : ordered_json(nullptr);
        cells.push_back(std::move(cj));
    }
    j["cells"] = std::move(cells);
    return j;
}

SweepConfig config_from_json(const json& j, SweepConfig base) {
    if (!j.is_object()) {
        throw_bad_input("config: expected a JSON object");
    }
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "seed") {
                base.seed = value.get<std::uint64_t>();
            } else if (key == "threads") {
                base.threads = value.get<unsigned>();
            } else if (key == "entropy_mode") {
                base.entropy_mode = parse_enum<EntropyMode>(j, "entropy_mode", parse_mode);
            } else if (key == "estimator") {
                base.estimator = parse_enum<Estimator>(j, "estimator", parse_estimator);
            } else if (key == "entropy_n") {
                base.entropy_n = value.get<std::uint64_t>();
            } else if (key == "grid") {
                for (const auto& [gk, gv] : value.items()) {
                    if (gk == "p_min") {
                        base.grid.p_min = gv.get<std::uint64_t>();
                    } else if (gk == "p_max") {
                        base.grid.p_max = gv.get<std::uint64_t>();
                    } else if (gk == "n_points") {
                        base.grid.n_points = gv.get<std::uint64_t>();
                    } else if (gk == "placement") {
                        base.grid.placement = parse_enum<Placement>(value, "placement", parse_placement);
                    } else {
                        throw_bad_input("config: unknown grid key '" + gk + "'");
                    }
                }
            } else if (key == "fig2") {
                for (const auto& [fk, fv] : value.items()) {
                    if (fk == "c") {
                        base.fig2_c = axis_from_json(fv, base.fig2_c);
                    } else if (fk == "beta") {
                        base.fig2_beta = axis_from_json(fv, base.fig2_beta);
                    } else {
                        throw_bad_input("config: unknown fig2 key '" + fk + "'");
                    }
                }
            } else if (key == "cells") {
                base.cells.clear();
                for (const auto& cj : value) {
                    base.cells.push_back(cell_from_json(cj));
                }
            } else {
                throw_bad_input("config: unknown key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw_bad_input(std::string("config: ") + e.what());
    }
    validate(base);
    return base;
}

std::string dump(const ordered_json& j) {
    return j.dump(2) + '\n';
}

namespace {

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace

std::string render_scatter_svg(const std::vector<SystemSample>& samples,
                               const ScalingFit& fit, const SvgOptions& options) {
    if (samples.empty()) {
        throw_bad_input("nothing to render: empty scatter");
    }
    double x_lo = INFINITY;
    double x_hi = -INFINITY;
    double y_lo = INFINITY;
    double y_hi = -INFINITY;
    std::uint64_t p_lo = samples.front().population;
    std::uint64_t p_hi = p_lo;
    for (const auto& s : samples) {
        if (s.population < 1 || !(s.new_tags > 0.0)) {
            throw_bad_input("nothing to render: nonpositive sample");
        }
        p_lo = std::min(p_lo, s.population);
        p_hi = std::max(p_hi, s.population);
        y_lo = std::min(y_lo, std::log10(s.new_tags));
        y_hi = std::max(y_hi, std::log10(s.new_tags));
    }
    const double fit_lo = std::log10(predict(fit, p_lo));
    const double fit_hi = std::log10(predict(fit, p_hi));
    y_lo = std::min({y_lo, fit_lo, fit_hi});
    y_hi = std::max({y_hi, fit_lo, fit_hi});
    x_lo = std::floor(std::log10(static_cast<double>(p_lo)));
    x_hi = std::ceil(std::log10(static_cast<double>(p_hi)));
    y_lo = std::floor(y_lo);
    y_hi = std::ceil(y_hi);
    if (x_hi <= x_lo) {
        x_hi = x_lo + 1.0;
    }
    if (y_hi <= y_lo) {
        y_hi = y_lo + 1.0;
    }

    const double left = 70.0;
    const double right = options.width - 20.0;
    const double top = 40.0;
    const double bottom = options.height - 50.0;
    auto sx = [&](double lx) { return left + (lx - x_lo) / (x_hi - x_lo) * (right - left); };
    auto sy = [&](double ly) { return bottom - (ly - y_lo) / (y_hi - y_lo) * (bottom - top); };

    const std::string prefix = xml_escape(options.title_prefix);
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(options.width) +
           "\" height=\"" + std::to_string(options.height) + "\" viewBox=\"0 0 " +
           std::to_string(options.width) + ' ' + std::to_string(options.height) +
           "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<title>" + prefix + "gamma = " + sig4(fit.gamma) + ", R2 = " +
           sig4(fit.r_squared) + "</title>\n";
    out += "<text x=\"" + fixed2(options.width / 2.0) +
           "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + prefix +
           "&#947; = " + sig4(fit.gamma) + ", R&#178; = " + sig4(fit.r_squared) + "</text>\n";

    out += "<path class=\"axes\" fill=\"none\" stroke=\"black\" d=\"M" + fixed2(left) + ' ' +
           fixed2(top) + " L" + fixed2(left) + ' ' + fixed2(bottom) + " L" + fixed2(right) + ' ' +
           fixed2(bottom) + "\"/>\n";
    std::string ticks;
    std::string labels;
    for (double d = x_lo; d <= x_hi; d += 1.0) {
        const double x = sx(d);
        ticks += "M" + fixed2(x) + ' ' + fixed2(bottom) + " L" + fixed2(x) + ' ' + fixed2(bottom + 5) + ' ';
        labels += "<text class=\"xtick\" x=\"" + fixed2(x) + "\" y=\"" + fixed2(bottom + 20) +
                  "\" text-anchor=\"middle\">10^" + std::to_string(static_cast<int>(d)) + "</text>\n";
    }
    for (double d = y_lo; d <= y_hi; d += 1.0) {
        const double y = sy(d);
        ticks += "M" + fixed2(left - 5) + ' ' + fixed2(y) + " L" + fixed2(left) + ' ' + fixed2(y) + ' ';
        labels += "<text class=\"ytick\" x=\"" + fixed2(left - 8) + "\" y=\"" + fixed2(y + 4) +
                  "\" text-anchor=\"end\">10^" + std::to_string(static_cast<int>(d)) + "</text>\n";
    }
    out += "<path class=\"ticks\" fill=\"none\" stroke=\"black\" d=\"" + std::string(trim(ticks)) + "\"/>\n";
    out += labels;
    out += "<text x=\"" + fixed2((left + right) / 2) + "\" y=\"" + fixed2(options.height - 12.0) +
           "\" text-anchor=\"middle\">active population P</text>\n";
    out += "<text transform=\"translate(16 " + fixed2((top + bottom) / 2) +
           ") rotate(-90)\" text-anchor=\"middle\">new tags T</text>\n";

    out += "<g class=\"points\" fill=\"steelblue\" fill-opacity=\"0.7\">\n";
    for (const auto& s : samples) {
        out += "<circle cx=\"" + fixed2(sx(std::log10(static_cast<double>(s.population)))) +
               "\" cy=\"" + fixed2(sy(std::log10(s.new_tags))) + "\" r=\"3\"/>\n";
    }
    out += "</g>\n";
    out += "<line class=\"fit\" stroke=\"#222\" stroke-width=\"2\" x1=\"" +
           fixed2(sx(std::log10(static_cast<double>(p_lo)))) + "\" y1=\"" + fixed2(sy(fit_lo)) +
           "\" x2=\"" + fixed2(sx(std::log10(static_cast<double>(p_hi)))) + "\" y2=\"" +
           fixed2(sy(fit_hi)) + "\"/>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace allometry::io
