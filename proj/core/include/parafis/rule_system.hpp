#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "parafis/structure.hpp"

namespace parafis {

struct Prediction {
  int label = 0;  // argmax class id; ties go to the lowest id
  Vector scores;  // activation-weighted per-class outputs
};

// A complete evolving classifier: principal rules, optional anticipation
// pairs (one per principal rule when the separability detector is active),
// and the class inventory seen so far. Prediction never looks at the
// anticipation module. Instances are plain values; learning and prediction
// must be serialized externally.
class RuleSystem {
 public:
  RuleSystem(int feature_dim, int class_count, HyperParams params);

  int feature_dim() const { return feature_dim_; }
  int class_count() const { return class_count_; }
  const HyperParams& params() const { return params_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<AnticipationPair>& anticipation() const { return pairs_; }
  bool knows_class(int label) const;

  // Raw Cauchy memberships, one per rule.
  Vector raw_activations(const Vector& x) const;
  // Memberships divided by their sum; entries are in (0, 1] and sum to 1.
  Vector normalized_activations(const Vector& x) const;
  // Index of the highest raw membership; ties go to the lowest index.
  int most_activated(const Vector& x) const;
  Prediction predict(const Vector& x) const;

  // One learning step (the caller scores first: test then train). Returns
  // the structural events the step fired, in order.
  std::vector<CreationEvent> learn(const Vector& x, int label, std::int64_t stream_index);

  // Learning step with the drift detector bypassed: a structural change
  // fires exactly when fire_split is set. First-seen classes still create
  // their rule organically; a forced split on such a step is a mismatch.
  std::vector<CreationEvent> learn_replayed(const Vector& x, int label,
                                            std::int64_t stream_index, bool fire_split);

  // Replace rule `index` by its two anticipation sub-rules (which keep all
  // learned state; the former sub1 takes the slot, the former sub2 goes to
  // index+1) and attach fresh pairs to both.
  void promote_subrules(int index);

 private:
  std::vector<CreationEvent> learn_impl(const Vector& x, int label, std::int64_t stream_index,
                                        std::optional<bool> forced_split);
  void create_from_init_method(int most_activated_index, const Vector& x);
  void adapt(const Vector& x, int label, int most_activated_index);

  int feature_dim_;
  int class_count_;
  HyperParams params_;
  std::vector<Rule> rules_;
  std::vector<AnticipationPair> pairs_;
  std::vector<std::uint8_t> seen_;
};

}  // namespace parafis
