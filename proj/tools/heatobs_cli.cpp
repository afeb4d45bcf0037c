#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "heatobs/config.hpp"
#include "heatobs/error.hpp"
#include "heatobs/runner.hpp"

namespace {

struct Flags {
    std::string config;
    int jobs = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out;
    double tol_scale = 1.0;
};

void add_common(CLI::App* app, Flags& flags) {
    app->add_option("--config", flags.config, "Experiment config file");
    app->add_option("--jobs", flags.jobs, "Worker threads (0 keeps the OpenMP default)")->check(CLI::NonNegativeNumber);
    app->add_option_function<std::uint64_t>(
        "--seed",
        [&flags](const std::uint64_t& s) {
            flags.seed = s;
            flags.seed_set = true;
        },
        "Ensemble seed, overriding the config");
    app->add_option("--out", flags.out, "Output directory (HEATOBS_OUT takes precedence)");
    app->add_option("--tol-scale", flags.tol_scale, "Global tolerance multiplier")->check(CLI::PositiveNumber);
}

heatobs::ExperimentConfig resolve(const Flags& flags) {
    heatobs::ExperimentConfig cfg =
        flags.config.empty() ? heatobs::default_config() : heatobs::load_config(flags.config);
    if (flags.seed_set) cfg.ensemble.seed = flags.seed;
    if (!flags.out.empty()) cfg.output.dir = flags.out;
    if (const char* env = std::getenv("HEATOBS_OUT"); env && *env) cfg.output.dir = env;
    cfg.jobs = flags.jobs;
    cfg.tol_scale = flags.tol_scale;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks for observability estimates of semilinear heat equations"};
    app.require_subcommand(1);

    const std::map<std::string, std::string> commands{
        {"verify-semigroup", "semigroup"}, {"solve", "solve"},       {"pair", "pair"},
        {"frequency", "frequency"},         {"convexity", "convexity"}, {"interpolate", "interpolation"},
        {"observe", "observation"},         {"stability", "stability"}, {"probe-uc", "probe_uc"},
        {"gronwall", "gronwall"},
    };

    Flags flags;
    std::string report_dir;
    CLI::App* run = app.add_subcommand("run", "Run every check listed in the config");
    add_common(run, flags);
    for (const auto& [cmd, suite] : commands) add_common(app.add_subcommand(cmd, "Run the " + suite + " suite"), flags);
    CLI::App* report = app.add_subcommand("report", "Merge JSON reports in a directory into a summary table");
    report->add_option("dir", report_dir, "Report directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : heatobs::kExitError;
    }

    try {
        if (report->parsed()) return heatobs::merge_reports(report_dir, std::cout);
        const heatobs::ExperimentConfig cfg = resolve(flags);
        if (run->parsed()) return heatobs::execute(cfg, cfg.checks, std::cout);
        for (const auto& [cmd, suite] : commands)
            if (app.got_subcommand(cmd)) return heatobs::execute(cfg, {suite}, std::cout);
    } catch (const heatobs::Error& e) {
        std::cerr << "heatobs: " << heatobs::to_string(e.kind()) << ": " << e.detail() << '\n';
        return heatobs::kExitError;
    } catch (const std::exception& e) {
        std::cerr << "heatobs: error: " << e.what() << '\n';
        return heatobs::kExitError;
    }
    return heatobs::kExitError;
}
