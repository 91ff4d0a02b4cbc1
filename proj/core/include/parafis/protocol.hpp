#pragma once

#include <cstdint>
#include <vector>

#include "parafis/dataset.hpp"
#include "parafis/types.hpp"

namespace parafis {

enum class Phase : char { kA = 'A', kB = 'B', kC = 'C' };

// Brutal-drift injection. Classes are grouped by order of first occurrence
// in the original file: the first n1 distinct classes form block A, the next
// n2 block B, the next n3 block C. The file is shuffled once (seeded), then
// phase A takes the first t1 block-A samples in shuffle order, phase B the
// first t2-t1 block-B samples, phase C the first t3-t2 block-C samples.
// Phases B and C are relabeled onto block A: the j-th class of the block
// presents as label j. A block with zero classes contributes no phase.
struct ProtocolPConfig {
  std::int64_t t1 = 0;
  std::int64_t t2 = 0;
  std::int64_t t3 = 0;
  int n1 = 0;
  int n2 = 0;
  int n3 = 0;
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError
};

struct StreamEntry {
  Vector x;
  int label = 0;  // presented label, in [0, n1)
  Phase phase = Phase::kA;
};

struct DriftStream {
  std::vector<StreamEntry> entries;
  std::int64_t a_len = 0;
  std::int64_t b_len = 0;
  std::int64_t c_len = 0;
  int class_count = 0;  // presented-label space, n1
  int feature_dim = 0;

  std::int64_t size() const { return static_cast<std::int64_t>(entries.size()); }
  // Ground-truth drift positions: starts of the non-empty phases B and C.
  std::vector<std::int64_t> drift_times() const;
  // FNV-1a over labels and raw feature bits; equal streams hash equal.
  std::uint64_t checksum() const;
};

DriftStream build_protocol_p(const Dataset& data, const ProtocolPConfig& config);

}  // namespace parafis
