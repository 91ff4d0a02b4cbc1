#include "parafis/prequential.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_set>
#include <utility>

#include "parafis/csv.hpp"
#include "parafis/rng.hpp"

namespace parafis {

namespace {

std::string kind_name(EventKind kind) {
  return kind == EventKind::kNewClass ? "new_class" : "drift_split";
}

EventKind kind_from(std::string_view token, const std::string& where) {
  if (token == "new_class") return EventKind::kNewClass;
  if (token == "drift_split") return EventKind::kDriftSplit;
  throw ParseError(where + ": unknown event kind '" + std::string(token) + "'");
}

}  // namespace

std::vector<std::int64_t> DriftTrace::split_indices() const {
  std::vector<std::int64_t> idx;
  for (const CreationEvent& e : events)
    if (e.kind == EventKind::kDriftSplit) idx.push_back(e.stream_index);
  return idx;
}

void DriftTrace::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write trace file: " + path.string());
  for (const CreationEvent& e : events)
    out << format_int(e.stream_index) << ',' << format_int(e.rule_index) << ','
        << kind_name(e.kind) << '\n';
  if (!out) throw Error("failed writing trace file: " + path.string());
}

DriftTrace DriftTrace::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open trace file: " + path.string());
  DriftTrace trace;
  std::string line;
  std::size_t line_no = 0;
  std::int64_t prev = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    const auto fields = split_fields(line, ',');
    if (fields.size() != 3)
      throw ParseError(where + ": expected <stream_index>,<rule_index>,<kind>");
    CreationEvent e;
    e.stream_index = parse_int(fields[0], where);
    e.rule_index = static_cast<int>(parse_int(fields[1], where));
    e.kind = kind_from(trim(fields[2]), where);
    if (e.stream_index < 0) throw ParseError(where + ": negative stream index");
    if (e.stream_index < prev) throw ParseError(where + ": stream indices must not decrease");
    prev = e.stream_index;
    trace.events.push_back(e);
  }
  return trace;
}

double PrequentialResult::mean_accuracy() const {
  if (scores.empty()) return 0.0;
  std::int64_t hits = 0;
  for (const auto s : scores) hits += s;
  return static_cast<double>(hits) / static_cast<double>(scores.size());
}

PrequentialResult prequential_run(const SystemFactory& make_system, const DriftStream& stream,
                                  TraceMode mode, const DriftTrace* replay) {
  if (mode == TraceMode::kReplay) {
    if (replay == nullptr) throw ConfigError("replay mode needs a trace");
  } else if (replay != nullptr) {
    throw ConfigError("a trace is only accepted in replay mode");
  }

  std::unordered_set<std::int64_t> fire_at;
  if (replay != nullptr) {
    for (const std::int64_t idx : replay->split_indices()) {
      if (idx >= stream.size())
        throw TraceMismatchError("trace index " + std::to_string(idx) +
                                 " is beyond the stream length " + std::to_string(stream.size()));
      fire_at.insert(idx);
    }
  }

  RuleSystem system = make_system();
  if (system.feature_dim() != stream.feature_dim)
    throw DimensionError("model feature dimension does not match the stream");
  if (system.class_count() < stream.class_count)
    throw ConfigError("model class inventory is smaller than the stream's");

  PrequentialResult result;
  result.scores.reserve(stream.entries.size());
  result.phases.reserve(stream.entries.size());

  for (std::int64_t i = 0; i < stream.size(); ++i) {
    const StreamEntry& entry = stream.entries[static_cast<std::size_t>(i)];
    std::uint8_t score = 0;
    if (!system.rules().empty() && system.predict(entry.x).label == entry.label) score = 1;
    result.scores.push_back(score);
    result.phases.push_back(entry.phase);

    std::vector<CreationEvent> events =
        mode == TraceMode::kReplay
            ? system.learn_replayed(entry.x, entry.label, i, fire_at.contains(i))
            : system.learn(entry.x, entry.label, i);
    for (CreationEvent& e : events) result.trace.events.push_back(e);
  }
  return result;
}

std::vector<RepeatedRunResult> repeated_runs(const Dataset& data, ProtocolPConfig protocol,
                                             const std::vector<ModelConfig>& models, int repeats,
                                             std::uint64_t master_seed, TraceMode mode,
                                             const std::vector<DriftTrace>* replay) {
  if (repeats < 1) throw ConfigError("repeats must be >= 1");
  if (models.empty()) throw ConfigError("at least one model is required");
  if (mode == TraceMode::kReplay) {
    if (replay == nullptr || static_cast<int>(replay->size()) != repeats)
      throw ConfigError("replay needs one trace per repeat");
  } else if (replay != nullptr) {
    throw ConfigError("traces are only accepted in replay mode");
  }
  for (const ModelConfig& model : models) model.params.validate();

  // One result slot per (repeat, model); repeats run in parallel and the
  // merge below walks slots in repeat order, keeping every sum deterministic.
  std::vector<std::vector<PrequentialResult>> slots(static_cast<std::size_t>(repeats));
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr error;

  const auto worker = [&]() {
    while (true) {
      const int r = next.fetch_add(1);
      if (r >= repeats || failed.load()) return;
      try {
        ProtocolPConfig cfg = protocol;
        cfg.seed = derive_seed(master_seed, static_cast<std::uint64_t>(r));
        const DriftStream stream = build_protocol_p(data, cfg);
        std::vector<PrequentialResult> per_model;
        per_model.reserve(models.size());
        for (const ModelConfig& model : models) {
          const SystemFactory factory = [&stream, &model]() {
            return RuleSystem(stream.feature_dim, stream.class_count, model.params);
          };
          per_model.push_back(prequential_run(
              factory, stream, mode,
              mode == TraceMode::kReplay ? &(*replay)[static_cast<std::size_t>(r)] : nullptr));
        }
        slots[static_cast<std::size_t>(r)] = std::move(per_model);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned n_threads = std::min<unsigned>(hw, static_cast<unsigned>(repeats));
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  const std::size_t length = slots.front().front().scores.size();
  std::vector<RepeatedRunResult> merged(models.size());
  for (std::size_t m = 0; m < models.size(); ++m) {
    RepeatedRunResult& out = merged[m];
    out.name = models[m].name;
    out.mean_scores.assign(length, 0.0);
    out.phases = slots.front()[m].phases;
    out.traces.reserve(static_cast<std::size_t>(repeats));
    double acc = 0.0;
    for (int r = 0; r < repeats; ++r) {
      PrequentialResult& res = slots[static_cast<std::size_t>(r)][m];
      if (res.scores.size() != length)
        throw Error("repeat " + std::to_string(r) + " produced a stream of different length");
      for (std::size_t i = 0; i < length; ++i) out.mean_scores[i] += res.scores[i];
      acc += res.mean_accuracy();
      out.traces.push_back(std::move(res.trace));
    }
    for (double& v : out.mean_scores) v /= static_cast<double>(repeats);
    out.mean_accuracy = acc / static_cast<double>(repeats);
  }
  return merged;
}

}  // namespace parafis
