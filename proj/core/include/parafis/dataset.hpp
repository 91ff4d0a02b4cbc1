#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "parafis/types.hpp"

namespace parafis {

enum class LabelPosition { kFirst, kLast };

struct DatasetLayout {
  char delimiter = ',';
  LabelPosition label_position = LabelPosition::kLast;
  int feature_count = 0;  // required; every row must carry this many features plus the label
};

// In-memory dataset. Features are min-max normalized to [0, 1] per column
// over the whole file (constant columns become 0). Label names keep the
// order of first occurrence in the file; `labels` holds codes into it.
struct Dataset {
  std::string name;
  int feature_dim = 0;
  std::vector<Vector> features;
  std::vector<int> labels;
  std::vector<std::string> label_names;

  std::size_t size() const { return features.size(); }
  int class_count() const { return static_cast<int>(label_names.size()); }
};

Dataset parse_dataset(std::string_view text, const DatasetLayout& layout, std::string name);

// Reads and parses a delimited file; missing file is a ConfigError naming
// the path.
Dataset load_dataset(const std::filesystem::path& path, const DatasetLayout& layout,
                     std::string name = {});

}  // namespace parafis
