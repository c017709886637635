#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dysonsim/config.hpp"
#include "dysonsim/estimator.hpp"

namespace dysonsim {

struct RunOptions {
    std::size_t workers = 0;  // 0: default_worker_count()
    bool with_timestamp = true;
};

// One CSV row / one entry of report["results"].
struct TimeRow {
    double time = 0.0;
    double oracle = 0.0;
    std::vector<double> cumulative;  // order 0, then cumulative sums through order K
    double estimate = 0.0;           // cumulative.back()
    double truncation_bound = 0.0;   // 2 ||O|| x trace-distance bound (mean-abs form), observable units
    double observable_bound = 0.0;   // 2 ||L_D^+ O|| (2 gamma_bar N)^K t^{K+1} / (2 (K+1)!)
    double delta_total = 0.0;
    bool within_bounds = true;
};

struct ExperimentResult {
    ExperimentConfig config;
    int order = 0;  // K
    std::vector<TimeRow> rows;
    Json report;
    std::string csv;
    bool check_passed = true;
};

// Runs the full pipeline for every time in the grid: oracle, truncated series
// estimate, bounds. Nothing is written to disk.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

// report.json and series.csv in `directory` (created if missing).
void write_outputs(const ExperimentResult& result, const std::string& directory);

// Sorted keys, two-space indent, doubles at 17 significant digits. With
// `canonical` the top-level "generated_at" field is left out.
std::string format_json(const Json& doc, bool canonical = true);

std::vector<std::string> csv_header(int order);

// Human-readable summary of a parsed config (the `validate` subcommand).
std::string describe_config(const ExperimentConfig& config);

} // namespace dysonsim
