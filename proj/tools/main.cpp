#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "parafis/csv.hpp"
#include "runner.hpp"

namespace {

using parafis::tools::ExperimentConfig;

void apply_overrides(ExperimentConfig& config, const std::optional<std::uint64_t>& seed,
                     const std::optional<int>& repeats, const std::optional<std::string>& out) {
  if (seed.has_value()) config.seed = *seed;
  if (repeats.has_value()) {
    if (*repeats < 1) throw parafis::ConfigError("--repeats must be >= 1");
    config.repeats = *repeats;
  }
  if (out.has_value()) config.out_dir = *out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolving fuzzy classifier with drift anticipation: benchmark runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> repeats;
  std::optional<std::string> out_dir;
  std::string trace_path;

  CLI::App* run = app.add_subcommand("run", "Run an experiment and record drift traces");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--seed", seed, "Master seed (overrides the config)");
  run->add_option("--repeats", repeats, "Number of repeats (overrides the config)");
  run->add_option("--out", out_dir, "Output directory (overrides the config)");

  CLI::App* replay = app.add_subcommand("replay", "Re-run with recorded drift traces applied");
  replay->add_option("--config", config_path, "Experiment config (JSON)")->required();
  replay->add_option("--trace", trace_path,
                     "Trace directory with rNNN.trace files (or one file when repeats == 1)")
      ->required();
  replay->add_option("--seed", seed, "Master seed (overrides the config)");
  replay->add_option("--repeats", repeats, "Number of repeats (overrides the config)");
  replay->add_option("--out", out_dir, "Output directory (overrides the config)");

  parafis::tools::FitRequest fit_request;
  std::string boundaries;
  CLI::App* fit = app.add_subcommand("fit", "Fit the reactivity model to a recorded score CSV");
  fit->add_option("--input", fit_request.input, "record_<name>.csv file")->required();
  fit->add_option("--boundaries", boundaries, "Phase boundaries t1,t2,t3")->required();
  fit->add_option("--column", fit_request.column, "CSV column to fit (smoothed|score)");
  fit->add_option("--name", fit_request.config_name, "Config name in the output");
  std::optional<std::string> fit_out;
  fit->add_option("--out", fit_out, "Directory for fits.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed() || replay->parsed()) {
      ExperimentConfig config = parafis::tools::load_experiment_config(config_path);
      apply_overrides(config, seed, repeats, out_dir);
      std::optional<std::filesystem::path> trace;
      if (replay->parsed()) trace = trace_path;
      parafis::tools::run_experiment(config, trace);
    } else {
      const auto fields = parafis::split_fields(boundaries, ',');
      if (fields.size() != 3)
        throw parafis::ConfigError("--boundaries expects exactly t1,t2,t3");
      fit_request.t1 = parafis::parse_int(fields[0], "--boundaries");
      fit_request.t2 = parafis::parse_int(fields[1], "--boundaries");
      fit_request.t3 = parafis::parse_int(fields[2], "--boundaries");
      if (fit_out.has_value()) fit_request.out_dir = *fit_out;
      parafis::tools::run_fit(fit_request);
    }
  } catch (const parafis::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
