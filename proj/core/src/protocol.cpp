#include "parafis/protocol.hpp"

#include <cstring>
#include <numeric>
#include <string>

#include "parafis/rng.hpp"

namespace parafis {

void ProtocolPConfig::validate() const {
  if (!(0 < t1 && t1 < t2 && t2 < t3))
    throw ConfigError("protocol boundaries must satisfy 0 < t1 < t2 < t3");
  if (n1 < 1) throw ConfigError("protocol needs n1 >= 1");
  if (n2 < 0 || n2 > n1) throw ConfigError("protocol needs 0 <= n2 <= n1");
  if (n3 < 0 || n3 > n1) throw ConfigError("protocol needs 0 <= n3 <= n1");
}

std::vector<std::int64_t> DriftStream::drift_times() const {
  std::vector<std::int64_t> times;
  if (b_len > 0) times.push_back(a_len);
  if (c_len > 0) times.push_back(a_len + b_len);
  return times;
}

std::uint64_t DriftStream::checksum() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffULL;
      h *= 0x100000001b3ULL;
    }
  };
  for (const StreamEntry& e : entries) {
    mix(static_cast<std::uint64_t>(e.label));
    mix(static_cast<std::uint64_t>(e.phase));
    for (Eigen::Index j = 0; j < e.x.size(); ++j) {
      std::uint64_t bits = 0;
      std::memcpy(&bits, &e.x(j), sizeof bits);
      mix(bits);
    }
  }
  return h;
}

namespace {

struct Block {
  int first_class = 0;  // position in the dataset's first-occurrence order
  int class_span = 0;
  std::int64_t wanted = 0;
  Phase phase = Phase::kA;
};

}  // namespace

DriftStream build_protocol_p(const Dataset& data, const ProtocolPConfig& config) {
  config.validate();
  const int needed = config.n1 + config.n2 + config.n3;
  if (needed > data.class_count())
    throw ConfigError("protocol needs " + std::to_string(needed) + " distinct classes, dataset '" +
                      data.name + "' has " + std::to_string(data.class_count()));

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(config.seed);
  deterministic_shuffle(order, rng);

  const Block blocks[3] = {
      {0, config.n1, config.t1, Phase::kA},
      {config.n1, config.n2, config.t2 - config.t1, Phase::kB},
      {config.n1 + config.n2, config.n3, config.t3 - config.t2, Phase::kC},
  };

  DriftStream stream;
  stream.class_count = config.n1;
  stream.feature_dim = data.feature_dim;
  std::int64_t lens[3] = {0, 0, 0};

  for (int b = 0; b < 3; ++b) {
    const Block& block = blocks[b];
    if (block.class_span == 0) continue;
    std::int64_t taken = 0;
    for (const std::size_t idx : order) {
      if (taken == block.wanted) break;
      const int cls = data.labels[idx];
      if (cls < block.first_class || cls >= block.first_class + block.class_span) continue;
      stream.entries.push_back(
          StreamEntry{data.features[idx], cls - block.first_class, block.phase});
      ++taken;
    }
    if (taken < block.wanted)
      throw ConfigError("phase " + std::string(1, static_cast<char>(block.phase)) + " needs " +
                        std::to_string(block.wanted) + " samples, dataset '" + data.name +
                        "' provides only " + std::to_string(taken));
    lens[b] = taken;
  }

  stream.a_len = lens[0];
  stream.b_len = lens[1];
  stream.c_len = lens[2];
  return stream;
}

}  // namespace parafis
