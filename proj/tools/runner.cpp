#include "runner.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <span>
#include <vector>

#include "parafis/analysis.hpp"
#include "parafis/csv.hpp"

namespace parafis::tools {

namespace fs = std::filesystem;

namespace {

std::string repeat_file_name(int repeat) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "r%03d.trace", repeat);
  return buf;
}

std::vector<DriftTrace> load_traces(const fs::path& path, int repeats) {
  std::vector<DriftTrace> traces;
  if (fs::is_directory(path)) {
    for (int r = 0; r < repeats; ++r) traces.push_back(DriftTrace::load(path / repeat_file_name(r)));
  } else {
    if (repeats != 1)
      throw ConfigError("replaying " + std::to_string(repeats) +
                        " repeats needs a trace directory, got a single file: " + path.string());
    traces.push_back(DriftTrace::load(path));
  }
  return traces;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path.string());
  out << content;
  if (!out) throw Error("failed writing file: " + path.string());
}

std::string record_csv(const std::vector<double>& scores, const std::vector<double>& smoothed,
                       const std::vector<Phase>& phases) {
  std::string text = "step,score,smoothed,phase\n";
  for (std::size_t i = 0; i < scores.size(); ++i) {
    text += format_int(static_cast<std::int64_t>(i));
    text += ',';
    text += format_double(scores[i]);
    text += ',';
    text += format_double(smoothed[i]);
    text += ',';
    text += static_cast<char>(phases[i]);
    text += '\n';
  }
  return text;
}

std::string plot_csv(const std::vector<double>& smoothed) {
  std::string text = "step,smoothed_score\n";
  for (std::size_t i = 0; i < smoothed.size(); ++i) {
    text += format_int(static_cast<std::int64_t>(i));
    text += ',';
    text += format_double(smoothed[i]);
    text += '\n';
  }
  return text;
}

// Phase labels and fits for the non-empty phases of one smoothed series.
ConfigSummary summarize(const std::string& name, std::span<const double> smoothed,
                        std::int64_t a_len, std::int64_t b_len, double mean_accuracy) {
  ConfigSummary summary;
  summary.config = name;
  summary.mean_accuracy = mean_accuracy;
  const auto slices = split_phases(smoothed, a_len, a_len + b_len);
  const char labels[3] = {'A', 'B', 'C'};
  for (int p = 0; p < 3; ++p) {
    if (slices[p].empty()) continue;
    summary.phase_labels.push_back(labels[p]);
    summary.phase_fits.push_back(fit_phase(slices[p]));
  }
  return summary;
}

void print_table(const std::vector<ConfigSummary>& summaries) {
  std::printf("%-16s %-10s %12s %12s %12s\n", "config", "phase", "S+s_min", "tau", "mean_acc");
  for (const ConfigSummary& s : summaries) {
    for (std::size_t i = 0; i < s.phase_fits.size(); ++i) {
      const PhaseFit& f = s.phase_fits[i];
      if (i == 0)
        std::printf("%-16s %-10c %12.4f %12.1f %12.4f\n", s.config.c_str(), s.phase_labels[i],
                    f.steady_state(), f.tau, s.mean_accuracy);
      else
        std::printf("%-16s %-10c %12.4f %12.1f %12s\n", "", s.phase_labels[i], f.steady_state(),
                    f.tau, "");
    }
  }
}

}  // namespace

void run_experiment(const ExperimentConfig& config,
                    const std::optional<std::filesystem::path>& trace_path) {
  if (!config.seed.has_value())
    throw ConfigError("a master seed is required: set 'seed' in the config or pass --seed");

  const Dataset data = load_dataset(config.dataset_path, config.layout, config.dataset_name);
  const TraceMode mode = trace_path.has_value() ? TraceMode::kReplay : TraceMode::kRecord;
  std::vector<DriftTrace> replay;
  if (mode == TraceMode::kReplay) replay = load_traces(*trace_path, config.repeats);

  const std::vector<RepeatedRunResult> results =
      repeated_runs(data, config.protocol, config.models, config.repeats, *config.seed, mode,
                    mode == TraceMode::kReplay ? &replay : nullptr);

  fs::create_directories(config.out_dir);
  std::vector<ConfigSummary> summaries;
  for (const RepeatedRunResult& res : results) {
    std::int64_t a_len = 0, b_len = 0;
    for (const Phase p : res.phases) {
      a_len += p == Phase::kA;
      b_len += p == Phase::kB;
    }
    const std::vector<double> smoothed = smooth(res.mean_scores, config.smoothing);
    const std::vector<double> plot = smooth(res.mean_scores, config.plot_smoothing);

    write_file(config.out_dir / ("record_" + res.name + ".csv"),
               record_csv(res.mean_scores, smoothed, res.phases));
    write_file(config.out_dir / ("plot_" + res.name + ".csv"), plot_csv(plot));

    const fs::path trace_dir = config.out_dir / "traces" / res.name;
    fs::create_directories(trace_dir);
    for (std::size_t r = 0; r < res.traces.size(); ++r)
      res.traces[r].save(trace_dir / repeat_file_name(static_cast<int>(r)));

    summaries.push_back(summarize(res.name, smoothed, a_len, b_len, res.mean_accuracy));
  }

  {
    std::ofstream fits(config.out_dir / "fits.csv", std::ios::binary);
    if (!fits) throw Error("cannot write fits.csv");
    write_fits_csv(fits, summaries);
    std::ofstream summary(config.out_dir / "summary.csv", std::ios::binary);
    if (!summary) throw Error("cannot write summary.csv");
    write_summary_csv(summary, summaries);
  }
  print_table(summaries);
}

void run_fit(const FitRequest& request) {
  if (!(0 <= request.t1 && request.t1 <= request.t2 && request.t2 <= request.t3))
    throw ConfigError("boundaries must satisfy 0 <= t1 <= t2 <= t3");
  if (request.column != "smoothed" && request.column != "score")
    throw ConfigError("column must be 'smoothed' or 'score'");

  const CsvTable table = read_csv(request.input);
  const std::size_t col = table.column(request.column);
  if (request.t3 > static_cast<std::int64_t>(table.rows.size()))
    throw ConfigError("t3 = " + std::to_string(request.t3) + " exceeds the " +
                      std::to_string(table.rows.size()) + " rows of " + request.input.string());

  std::vector<double> series;
  series.reserve(static_cast<std::size_t>(request.t3));
  for (std::int64_t i = 0; i < request.t3; ++i)
    series.push_back(parse_double(table.rows[static_cast<std::size_t>(i)][col],
                                  request.input.string() + " row " + std::to_string(i + 2)));

  const std::string name =
      request.config_name.empty() ? request.input.stem().string() : request.config_name;
  ConfigSummary summary;
  summary.config = name;
  const auto slices = split_phases(series, request.t1, request.t2);
  const char labels[3] = {'A', 'B', 'C'};
  for (int p = 0; p < 3; ++p) {
    if (slices[p].empty()) continue;
    summary.phase_labels.push_back(labels[p]);
    summary.phase_fits.push_back(fit_phase(slices[p]));
  }
  summary.mean_accuracy =
      series.empty() ? 0.0
                     : std::accumulate(series.begin(), series.end(), 0.0) /
                           static_cast<double>(series.size());

  print_table({summary});
  if (request.out_dir.has_value()) {
    fs::create_directories(*request.out_dir);
    std::ofstream fits(*request.out_dir / "fits.csv", std::ios::binary);
    if (!fits) throw Error("cannot write fits.csv");
    write_fits_csv(fits, {summary});
  }
}

}  // namespace parafis::tools
