#pragma once

// Suite execution behind the command-line tool: each suite turns an
// ExperimentConfig into reports plus CSV tables, and execute() writes them
// with a manifest into the output directory.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "heatobs/config.hpp"
#include "heatobs/report.hpp"

namespace heatobs {

struct CsvTable {
    std::string name;  // file stem
    std::string text;
};

struct SuiteResult {
    std::string name;
    std::vector<EstimateReport> reports;
    std::vector<CsvTable> tables;

    bool pass() const;
    std::size_t failures() const;
};

// Default-suite names plus the single-run suites "solve" and "pair".
bool is_suite(const std::string& name);

SuiteResult run_suite(const std::string& name, const ExperimentConfig& cfg);

// Exit codes: all pass, a check failed, could not run.
inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCheckFailed = 2;

// Validates, runs `suites` in order and writes <suite>.json, <table>.csv and
// manifest.txt into cfg.output.dir. One status line per suite goes to `log`.
// Returns kExitPass or kExitCheckFailed; errors propagate.
int execute(const ExperimentConfig& cfg, const std::vector<std::string>& suites, std::ostream& log);

// Reads every *.json report array in `dir` (summary.json excluded) and writes
// summary.csv and summary.json with one row per report. Throws NoReports when
// nothing is found.
int merge_reports(const std::string& dir, std::ostream& log);

}  // namespace heatobs
