// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "allometry/entropy.hpp"
#include "allometry/growth.hpp"
#include "allometry/scaling.hpp"
#include "allometry/sweeps.hpp"

namespace allometry::io {

/// Shortest decimal text that parses back to the same double; locale-free.
std::string format_double(double value);

/// Writes `contents` to `path`, replacing it. Throws Io on failure.
void write_text(const std::filesystem::path& path, std::string_view contents);
std::string read_text(const std::filesystem::path& path);

std::string sha256_hex(std::string_view bytes);
std::string file_sha256(const std::filesystem::path& path);

// Scatter CSV: `point_id,P,T`.
std::string scatter_csv(const std::vector<SystemSample>& samples);

struct ScatterFile {
    std::vector<SystemSample> samples;
    std::vector<std::string> diagnostics;  // one per rejected row
};

/// Parses a `point_id,P,T` or `P,T` CSV. Rows with P < 1 or T <= 0 are
/// skipped with a diagnostic; malformed rows throw BadInput naming the line.
ScatterFile parse_scatter_csv(std::string_view text);
ScatterFile read_scatter_csv(const std::filesystem::path& path);

std::string table1_csv(const std::vector<SweepRow>& rows);
std::string hgamma_csv(const std::vector<HGammaPoint>& points);
/// `C,beta,H`
std::string fig2_csv(const std::vector<Fig2Row>& rows);
/// `C,beta,N,h1,h_rescaled,mode`
std::string entropy_csv(const std::vector<Fig2Row>& rows);
/// Reads either of the two schemas above (H taken from `H` or `h_rescaled`).
std::vector<EntropyPoint> parse_entropy_points_csv(std::string_view text);

nlohmann::ordered_json to_json(const ScalingFit& fit);
nlohmann::ordered_json to_json(const EntropyModelFit& fit);
nlohmann::ordered_json to_json(const DistributionSpec& spec);
DistributionSpec spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const SweepConfig& config);
/// Starts from `base` and overrides every key present in `j`.
SweepConfig config_from_json(const nlohmann::json& j, SweepConfig base);

/// Canonical two-space-indented JSON text with a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

struct SvgOptions {
    int width = 640;
    int height = 480;
    std::string title_prefix;
};

/// Log-log scatter with the fitted line. Points are <circle> elements, the
/// fit is the only <line> element; axes and ticks are <path>s.
std::string render_scatter_svg(const std::vector<SystemSample>& samples,
                               const ScalingFit& fit,
                               const SvgOptions& options = {});

}  // namespace allometry::io
