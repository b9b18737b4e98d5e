#pragma once

#include <string>

#include "piecenet/metrics.hpp"

namespace piecenet {

struct ExperimentConfig {
  ExperimentSpec spec;
  std::string output_dir = "out";
  int grid_res = 201;
};

// JSON parsing is strict: unknown keys and scheme/field mismatches are
// configuration errors (exit code 2).
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& config);

// Flat parameter dump: magic, version, then the layout header and theta.
void write_params_file(const std::string& path, const ParameterVector& params);
ParameterVector read_params_file(const std::string& path);

// Runs the experiment and writes report.csv, trace_<t>.csv, params_<t>.bin,
// grid.csv (d <= 2) and the resolved config echo into the output directory.
// Returns the process exit code (0 ok, 1 all trials failed).
int run_experiment(const ExperimentConfig& config);

// Re-runs a published benchmark sweep (t1..t7) and prints a side-by-side
// table of reference and measured errors. Returns nonzero when a row misses
// its tolerance.
int reproduce_table(const std::string& table_id, const std::string& output_dir, int jobs);

void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace piecenet
