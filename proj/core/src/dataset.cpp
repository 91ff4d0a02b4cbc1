#include "parafis/dataset.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "parafis/csv.hpp"

namespace parafis {

Dataset parse_dataset(std::string_view text, const DatasetLayout& layout, std::string name) {
  if (layout.feature_count < 1) throw ConfigError("dataset layout needs feature_count >= 1");

  Dataset data;
  data.name = std::move(name);
  data.feature_dim = layout.feature_count;
  std::unordered_map<std::string, int> codes;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;

    const auto fields = split_fields(line, layout.delimiter);
    const auto expected = static_cast<std::size_t>(layout.feature_count) + 1;
    if (fields.size() != expected)
      throw ParseError("row " + std::to_string(line_no) + ": expected " +
                       std::to_string(expected) + " fields, got " + std::to_string(fields.size()));

    const std::size_t label_at = layout.label_position == LabelPosition::kFirst
                                     ? 0
                                     : fields.size() - 1;
    Vector x(layout.feature_count);
    Eigen::Index fi = 0;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i == label_at) continue;
      x(fi++) = parse_double(fields[i], "row " + std::to_string(line_no) + ", field " +
                                            std::to_string(i + 1));
    }
    const std::string label(trim(fields[label_at]));
    if (label.empty())
      throw ParseError("row " + std::to_string(line_no) + ": empty label");
    auto [it, inserted] = codes.try_emplace(label, static_cast<int>(data.label_names.size()));
    if (inserted) data.label_names.push_back(label);
    data.labels.push_back(it->second);
    data.features.push_back(std::move(x));
  }

  if (data.features.empty()) throw ParseError("dataset is empty");

  Vector lo = data.features.front();
  Vector hi = data.features.front();
  for (const Vector& x : data.features) {
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  }
  const Vector range = hi - lo;
  for (Vector& x : data.features)
    for (Eigen::Index j = 0; j < x.size(); ++j)
      x(j) = range(j) > 0.0 ? (x(j) - lo(j)) / range(j) : 0.0;

  return data;
}

Dataset load_dataset(const std::filesystem::path& path, const DatasetLayout& layout,
                     std::string name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("dataset file not found: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (name.empty()) name = path.stem().string();
  try {
    return parse_dataset(buffer.str(), layout, std::move(name));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace parafis
