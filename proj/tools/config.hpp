#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "parafis/dataset.hpp"
#include "parafis/prequential.hpp"
#include "parafis/protocol.hpp"

namespace parafis::tools {

// One benchmark experiment: a dataset, the drift-injection protocol, the
// model configurations to compare, and the run parameters.
struct ExperimentConfig {
  std::filesystem::path dataset_path;
  std::string dataset_name;
  DatasetLayout layout;
  ProtocolPConfig protocol;  // per-repeat seed is derived at run time
  std::vector<ModelConfig> models;
  int repeats = 10;
  std::optional<std::uint64_t> seed;
  int smoothing = 5;        // window for metrics and fits
  int plot_smoothing = 100; // window for the plot series
  std::filesystem::path out_dir = "out";
};

// Parses and validates a JSON experiment config. Unknown keys and malformed
// values are ConfigErrors naming the offending field.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

}  // namespace parafis::tools
