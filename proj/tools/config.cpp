#include "config.hpp"

#include <cctype>
#include <fstream>
#include <initializer_list>
#include <set>
#include <unordered_set>

#include <json.hpp>

namespace parafis::tools {

namespace {

using nlohmann::json;

void expect_keys(const json& obj, const std::string& ctx, std::initializer_list<const char*> allowed) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items())
    if (!ok.contains(key)) throw ConfigError(ctx + ": unknown field '" + key + "'");
}

const json& field(const json& obj, const std::string& ctx, const char* key) {
  if (!obj.is_object()) throw ConfigError(ctx + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(ctx + ": missing field '" + key + "'");
  return *it;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  return v.get<double>();
}

std::int64_t as_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return v.get<std::int64_t>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError(where + ": expected a string");
  return v.get<std::string>();
}

double number_or(const json& obj, const std::string& ctx, const char* key, double fallback) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : as_number(*it, ctx + "." + key);
}

std::int64_t integer_or(const json& obj, const std::string& ctx, const char* key,
                        std::int64_t fallback) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : as_integer(*it, ctx + "." + key);
}

DatasetLayout parse_layout(const json& obj, const std::string& ctx) {
  DatasetLayout layout;
  layout.feature_count =
      static_cast<int>(as_integer(field(obj, ctx, "feature_count"), ctx + ".feature_count"));
  if (layout.feature_count < 1) throw ConfigError(ctx + ".feature_count: must be >= 1");
  if (const auto it = obj.find("delimiter"); it != obj.end()) {
    const std::string d = as_string(*it, ctx + ".delimiter");
    if (d.size() != 1) throw ConfigError(ctx + ".delimiter: must be a single character");
    layout.delimiter = d[0];
  }
  if (const auto it = obj.find("label_position"); it != obj.end()) {
    const std::string p = as_string(*it, ctx + ".label_position");
    if (p == "first") layout.label_position = LabelPosition::kFirst;
    else if (p == "last") layout.label_position = LabelPosition::kLast;
    else throw ConfigError(ctx + ".label_position: expected 'first' or 'last'");
  }
  return layout;
}

CreationRule parse_creation_rule(const std::string& v, const std::string& where) {
  if (v == "separability") return CreationRule::kSeparabilityConditions;
  if (v == "gefs_star") return CreationRule::kGefsStar;
  throw ConfigError(where + ": expected 'separability' or 'gefs_star'");
}

InitMethod parse_init_method(const std::string& v, const std::string& where) {
  if (v == "anticipation") return InitMethod::kAnticipationPromotion;
  if (v == "i1") return InitMethod::kI1;
  if (v == "i2") return InitMethod::kI2;
  if (v == "i3") return InitMethod::kI3;
  throw ConfigError(where + ": expected 'anticipation', 'i1', 'i2' or 'i3'");
}

ModelConfig parse_model(const json& obj, const std::string& ctx) {
  expect_keys(obj, ctx,
              {"name", "creation_rule", "init_method", "alpha1", "alpha2", "n_min", "omega",
               "kappa", "m_exp"});
  ModelConfig model;
  model.name = as_string(field(obj, ctx, "name"), ctx + ".name");
  if (model.name.empty()) throw ConfigError(ctx + ".name: must not be empty");
  for (const char ch : model.name)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-'))
      throw ConfigError(ctx + ".name: only letters, digits, '_' and '-' are allowed");

  HyperParams& hp = model.params;
  hp.creation_rule = parse_creation_rule(
      as_string(field(obj, ctx, "creation_rule"), ctx + ".creation_rule"), ctx + ".creation_rule");
  hp.init_method = parse_init_method(as_string(field(obj, ctx, "init_method"), ctx + ".init_method"),
                                     ctx + ".init_method");
  hp.alpha1 = number_or(obj, ctx, "alpha1", hp.alpha1);
  hp.alpha2 = number_or(obj, ctx, "alpha2", hp.alpha2);
  hp.n_min = static_cast<int>(integer_or(obj, ctx, "n_min", hp.n_min));
  hp.omega = number_or(obj, ctx, "omega", hp.omega);
  hp.m_exp = number_or(obj, ctx, "m_exp", hp.m_exp);
  if (hp.creation_rule == CreationRule::kGefsStar) {
    hp.kappa = as_number(field(obj, ctx, "kappa"), ctx + ".kappa");
  } else {
    hp.kappa = number_or(obj, ctx, "kappa", hp.kappa);
  }
  try {
    hp.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(ctx + ": " + e.what());
  }
  return model;
}

}  // namespace

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config file not found: " + path.string());
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  const std::string ctx = "config";
  expect_keys(root, ctx,
              {"dataset", "protocol", "models", "repeats", "seed", "smoothing", "plot_smoothing",
               "out_dir"});

  ExperimentConfig cfg;

  const json& ds = field(root, ctx, "dataset");
  expect_keys(ds, ctx + ".dataset",
              {"path", "name", "delimiter", "label_position", "feature_count"});
  cfg.dataset_path = as_string(field(ds, ctx + ".dataset", "path"), ctx + ".dataset.path");
  cfg.layout = parse_layout(ds, ctx + ".dataset");
  if (const auto it = ds.find("name"); it != ds.end())
    cfg.dataset_name = as_string(*it, ctx + ".dataset.name");

  const json& proto = field(root, ctx, "protocol");
  expect_keys(proto, ctx + ".protocol", {"t1", "t2", "t3", "n1", "n2", "n3"});
  const std::string pc = ctx + ".protocol";
  cfg.protocol.t1 = as_integer(field(proto, pc, "t1"), pc + ".t1");
  cfg.protocol.t2 = as_integer(field(proto, pc, "t2"), pc + ".t2");
  cfg.protocol.t3 = as_integer(field(proto, pc, "t3"), pc + ".t3");
  cfg.protocol.n1 = static_cast<int>(as_integer(field(proto, pc, "n1"), pc + ".n1"));
  cfg.protocol.n2 = static_cast<int>(as_integer(field(proto, pc, "n2"), pc + ".n2"));
  cfg.protocol.n3 = static_cast<int>(as_integer(field(proto, pc, "n3"), pc + ".n3"));
  try {
    cfg.protocol.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(pc + ": " + e.what());
  }

  const json& models = field(root, ctx, "models");
  if (!models.is_array() || models.empty())
    throw ConfigError(ctx + ".models: expected a non-empty array");
  std::unordered_set<std::string> names;
  for (std::size_t i = 0; i < models.size(); ++i) {
    ModelConfig model = parse_model(models[i], ctx + ".models[" + std::to_string(i) + "]");
    if (!names.insert(model.name).second)
      throw ConfigError(ctx + ".models: duplicate name '" + model.name + "'");
    cfg.models.push_back(std::move(model));
  }

  cfg.repeats = static_cast<int>(integer_or(root, ctx, "repeats", cfg.repeats));
  if (cfg.repeats < 1) throw ConfigError(ctx + ".repeats: must be >= 1");
  if (const auto it = root.find("seed"); it != root.end()) {
    const std::int64_t seed = as_integer(*it, ctx + ".seed");
    if (seed < 0) throw ConfigError(ctx + ".seed: must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(seed);
  }
  cfg.smoothing = static_cast<int>(integer_or(root, ctx, "smoothing", cfg.smoothing));
  if (cfg.smoothing < 1) throw ConfigError(ctx + ".smoothing: must be >= 1");
  cfg.plot_smoothing =
      static_cast<int>(integer_or(root, ctx, "plot_smoothing", cfg.plot_smoothing));
  if (cfg.plot_smoothing < 1) throw ConfigError(ctx + ".plot_smoothing: must be >= 1");
  if (const auto it = root.find("out_dir"); it != root.end())
    cfg.out_dir = as_string(*it, ctx + ".out_dir");

  return cfg;
}

}  // namespace parafis::tools
