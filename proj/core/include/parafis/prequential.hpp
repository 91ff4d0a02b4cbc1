#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "parafis/protocol.hpp"
#include "parafis/rule_system.hpp"

namespace parafis {

// kDetect and kRecord run the detector; kRecord signals that the caller
// intends to keep the trace. kReplay bypasses the detector and fires the
// model's creation path exactly at the trace's drift-split indices.
enum class TraceMode { kDetect, kRecord, kReplay };

// Structural events of one run, ordered by stream index.
struct DriftTrace {
  std::vector<CreationEvent> events;

  std::vector<std::int64_t> split_indices() const;
  void save(const std::filesystem::path& path) const;
  static DriftTrace load(const std::filesystem::path& path);

  friend bool operator==(const DriftTrace&, const DriftTrace&) = default;
};

// Test-then-train outcome over one stream. Scores are 0/1 per step; an empty
// model scores 0 and the step still trains.
struct PrequentialResult {
  std::vector<std::uint8_t> scores;
  std::vector<Phase> phases;
  DriftTrace trace;

  double mean_accuracy() const;  // exact hit count over length
};

using SystemFactory = std::function<RuleSystem()>;

PrequentialResult prequential_run(const SystemFactory& make_system, const DriftStream& stream,
                                  TraceMode mode, const DriftTrace* replay = nullptr);

// One model configuration of a benchmark run.
struct ModelConfig {
  std::string name;
  HyperParams params;
};

// Aggregate of one model over the repeats: per-step mean scores and the
// exact mean accuracy, plus the per-repeat traces.
struct RepeatedRunResult {
  std::string name;
  std::vector<double> mean_scores;
  std::vector<Phase> phases;
  double mean_accuracy = 0.0;
  std::vector<DriftTrace> traces;
};

// Runs every model on the same `repeats` streams (repeat r uses the seed
// derived from master_seed and r) and merges in repeat order, so results do
// not depend on scheduling. For kReplay, `replay` holds one trace per repeat
// and is applied to every model.
std::vector<RepeatedRunResult> repeated_runs(const Dataset& data, ProtocolPConfig protocol,
                                             const std::vector<ModelConfig>& models, int repeats,
                                             std::uint64_t master_seed, TraceMode mode,
                                             const std::vector<DriftTrace>* replay = nullptr);

}  // namespace parafis
