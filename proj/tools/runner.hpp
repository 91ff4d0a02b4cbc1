#pragma once

#include <filesystem>
#include <optional>

#include "config.hpp"

namespace parafis::tools {

// Executes the experiment and writes, under out_dir: record_<name>.csv and
// plot_<name>.csv per model, traces/<name>/rNNN.trace per repeat, fits.csv
// and summary.csv, plus a table on stdout. For replay, trace_path names the
// directory (or single file when repeats == 1) with the traces to apply.
void run_experiment(const ExperimentConfig& config,
                    const std::optional<std::filesystem::path>& trace_path);

struct FitRequest {
  std::filesystem::path input;
  std::int64_t t1 = 0;
  std::int64_t t2 = 0;
  std::int64_t t3 = 0;
  std::string column = "smoothed";
  std::string config_name;  // defaults to the input file stem
  std::optional<std::filesystem::path> out_dir;
};

// Fits the reactivity model per phase on a recorded score CSV; prints the
// parameters and optionally writes fits.csv.
void run_fit(const FitRequest& request);

}  // namespace parafis::tools
