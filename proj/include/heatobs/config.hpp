#pragma once

// Experiment configuration: flat key=value sections.
//
//   [grid]        n, m, X
//   [dynamics]    kind, lambda, p, T, dt, stride, blowup_threshold
//   [region]      L, r, placement, seed
//   [ensemble]    count, family, amp_min, amp_max, width, seed
//   [checks]      list (comma separated suite names)
//   [check.NAME]  per-suite settings, see check_keys()
//   [output]      dir, formats
//   [gronwall]    A, B, alpha, g0, T, samples, sweep, seed
//   [convexity]   samples_file, T, h, Ctilde, Cbar
//
// Lines starting with ';' or '#' are comments.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heatobs/dynamics.hpp"
#include "heatobs/ensemble.hpp"
#include "heatobs/grid.hpp"
#include "heatobs/obsregion.hpp"

namespace heatobs {

struct OutputConfig {
    std::string dir = "heatobs_out";
    std::vector<std::string> formats{"json", "csv"};
};

struct GronwallConfig {
    double A = 1.0;
    double B = 0.0;
    double alpha = 1.0;
    double g0 = 10.0;
    double T = 1.0;
    std::size_t samples = 50;
    std::size_t sweep = 50;  // random configurations after the configured case
    std::uint64_t seed = 7;
};

struct ConvexityConfig {
    std::string samples_file;  // CSV with columns t,g; empty uses ensemble traces
    double T = 0.0;            // 0 takes the last sample time
    double h = 0.05;
    double Ctilde = 0.0;
    double Cbar = 0.0;
};

using CheckSettings = std::map<std::string, std::string>;

struct ExperimentConfig {
    GridSpec grid = GridSpec{1, 256, 8.0};
    NonlinearitySpec f{NonlinearityKind::power_odd, 1.0, 3.0};
    double T = 0.5;
    double dt = 1e-3;
    std::size_t stride = 10;
    double blowup_threshold = 1e8;
    double L = 1.0;
    double r = 0.25;
    Placement placement = Placement::centered;
    std::uint64_t region_seed = 0;
    EnsembleConfig ensemble;
    std::vector<std::string> checks;
    std::map<std::string, CheckSettings> check_settings;
    OutputConfig output;
    GronwallConfig gronwall;
    ConvexityConfig convexity;
    double tol_scale = 1.0;
    int jobs = 0;  // 0 leaves the OpenMP default

    // Typed lookup into [check.NAME] with a default.
    double check_double(const std::string& check, const std::string& key, double fallback) const;
    std::size_t check_size(const std::string& check, const std::string& key, std::size_t fallback) const;
    std::vector<double> check_list(const std::string& check, const std::string& key,
                                   const std::vector<double>& fallback) const;
};

// Suite names in execution order.
const std::vector<std::string>& suite_names();

// Keys accepted in [check.NAME].
const std::vector<std::string>& check_keys(const std::string& suite);

ExperimentConfig default_config();
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Runs every module validator the config feeds (grid, nonlinearity, region,
// ensemble); module errors propagate unchanged, format problems raise
// ConfigInvalid.
void validate(const ExperimentConfig& cfg);

// Canonical text of the fully resolved config (parseable by parse_config).
std::string resolved_text(const ExperimentConfig& cfg);

std::string sha256_hex(const std::string& bytes);

}  // namespace heatobs
