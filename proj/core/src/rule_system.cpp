#include "parafis/rule_system.hpp"

#include <string>
#include <utility>

#include "parafis/adaptation.hpp"

namespace parafis {

RuleSystem::RuleSystem(int feature_dim, int class_count, HyperParams params)
    : feature_dim_(feature_dim), class_count_(class_count), params_(std::move(params)) {
  if (feature_dim_ < 1) throw ConfigError("feature dimension must be >= 1");
  if (class_count_ < 1) throw ConfigError("class count must be >= 1");
  params_.validate();
  seen_.assign(static_cast<std::size_t>(class_count_), 0);
}

bool RuleSystem::knows_class(int label) const {
  return label >= 0 && label < class_count_ && seen_[static_cast<std::size_t>(label)] != 0;
}

Vector RuleSystem::raw_activations(const Vector& x) const {
  if (rules_.empty()) throw EmptyModelError("no rules yet");
  if (x.size() != feature_dim_) throw DimensionError("sample dimension does not match model");
  Vector k(static_cast<Eigen::Index>(rules_.size()));
  for (std::size_t i = 0; i < rules_.size(); ++i)
    k(static_cast<Eigen::Index>(i)) = rules_[i].membership(x);
  return k;
}

Vector RuleSystem::normalized_activations(const Vector& x) const {
  Vector k = raw_activations(x);
  return k / k.sum();
}

int RuleSystem::most_activated(const Vector& x) const {
  const Vector k = raw_activations(x);
  int best = 0;
  for (int i = 1; i < k.size(); ++i)
    if (k(i) > k(best)) best = i;
  return best;
}

Prediction RuleSystem::predict(const Vector& x) const {
  const Vector beta = normalized_activations(x);
  Vector scores = Vector::Zero(class_count_);
  for (std::size_t i = 0; i < rules_.size(); ++i)
    scores += beta(static_cast<Eigen::Index>(i)) * rules_[i].output(x);
  int best = 0;
  for (int j = 1; j < class_count_; ++j)
    if (scores(j) > scores(best)) best = j;
  return Prediction{best, std::move(scores)};
}

std::vector<CreationEvent> RuleSystem::learn(const Vector& x, int label,
                                             std::int64_t stream_index) {
  return learn_impl(x, label, stream_index, std::nullopt);
}

std::vector<CreationEvent> RuleSystem::learn_replayed(const Vector& x, int label,
                                                      std::int64_t stream_index,
                                                      bool fire_split) {
  return learn_impl(x, label, stream_index, fire_split);
}

std::vector<CreationEvent> RuleSystem::learn_impl(const Vector& x, int label,
                                                  std::int64_t stream_index,
                                                  std::optional<bool> forced_split) {
  if (x.size() != feature_dim_) throw DimensionError("sample dimension does not match model");
  if (label < 0 || label >= class_count_)
    throw ConfigError("label " + std::to_string(label) + " outside the class inventory");

  std::vector<CreationEvent> events;
  if (!seen_[static_cast<std::size_t>(label)]) {
    if (forced_split.has_value() && *forced_split)
      throw TraceMismatchError("replayed split collides with a first-seen class at stream index " +
                               std::to_string(stream_index));
    rules_.push_back(rule_from_point(x, class_count_, params_.omega));
    if (params_.anticipation_enabled())
      pairs_.push_back(AnticipationPair{rule_from_point(x, class_count_, params_.omega),
                                        rule_from_point(x, class_count_, params_.omega)});
    seen_[static_cast<std::size_t>(label)] = 1;
    events.push_back({stream_index, static_cast<int>(rules_.size()) - 1, EventKind::kNewClass});
    return events;
  }
  if (rules_.empty()) throw EmptyModelError("no rules yet");

  const int m = most_activated(x);
  bool create = false;
  if (forced_split.has_value()) {
    create = *forced_split;
  } else if (params_.creation_rule == CreationRule::kSeparabilityConditions) {
    create = condition1_separability(pairs_[static_cast<std::size_t>(m)]) &&
             condition2_inertia(pairs_[static_cast<std::size_t>(m)], params_.n_min);
  } else {
    create = gefs_star_should_create(rules_[static_cast<std::size_t>(m)], x, params_.kappa,
                                     params_.m_exp);
  }

  if (create) {
    if (params_.init_method == InitMethod::kAnticipationPromotion) {
      promote_subrules(m);
      events.push_back({stream_index, m, EventKind::kDriftSplit});
    } else {
      create_from_init_method(m, x);
      events.push_back({stream_index, static_cast<int>(rules_.size()) - 1, EventKind::kDriftSplit});
    }
    return events;
  }

  adapt(x, label, m);
  return events;
}

void RuleSystem::create_from_init_method(int most_activated_index, const Vector& x) {
  Matrix covariance = init_covariance(params_.init_method, rules_, feature_dim_);
  const auto nb = feature_dim_ + 1;
  rules_.emplace_back(x, std::move(covariance), Matrix::Zero(class_count_, nb),
                      params_.omega * Matrix::Identity(nb, nb), 1);
  if (params_.anticipation_enabled()) {
    // Re-arm the detector: the triggering rule gets a fresh pair, otherwise
    // its diverged sub-rules would fire again on the very next sample.
    pairs_[static_cast<std::size_t>(most_activated_index)] =
        make_pair_from_rule(rules_[static_cast<std::size_t>(most_activated_index)], params_.omega);
    pairs_.push_back(make_pair_from_rule(rules_.back(), params_.omega));
  }
}

void RuleSystem::adapt(const Vector& x, int label, int most_activated_index) {
  // Activations are taken on the state before any update of this step; the
  // same values appear through effective_membership.
  const Vector beta = normalized_activations(x);
  const auto m = static_cast<std::size_t>(most_activated_index);

  update_premise(rules_[m], x, ForgettingFactor(1.0));
  if (params_.anticipation_enabled()) {
    update_premise(pairs_[m].sub1, x, ForgettingFactor(params_.alpha1));
    update_premise(pairs_[m].sub2, x, ForgettingFactor(params_.alpha2));
  }

  Vector target = Vector::Zero(class_count_);
  target(label) = 1.0;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const double b = beta(static_cast<Eigen::Index>(i));
    update_consequent(rules_[i], x, target, b);
    if (params_.anticipation_enabled()) {
      AnticipationPair& pair = pairs_[i];
      const double k1 = pair.sub1.membership(x);
      const double k2 = pair.sub2.membership(x);
      const double share = b / (k1 + k2);
      update_consequent(pair.sub1, x, target, share * k1);
      update_consequent(pair.sub2, x, target, share * k2);
    }
  }
}

void RuleSystem::promote_subrules(int index) {
  if (!params_.anticipation_enabled())
    throw ConfigError("promotion requires the anticipation module");
  if (index < 0 || static_cast<std::size_t>(index) >= rules_.size())
    throw Error("rule index out of range");
  const auto i = static_cast<std::size_t>(index);

  AnticipationPair promoted = std::move(pairs_[i]);
  rules_[i] = std::move(promoted.sub1);
  rules_.insert(rules_.begin() + static_cast<std::ptrdiff_t>(i) + 1, std::move(promoted.sub2));
  pairs_[i] = make_pair_from_rule(rules_[i], params_.omega);
  pairs_.insert(pairs_.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                make_pair_from_rule(rules_[i + 1], params_.omega));
}

}  // namespace parafis
