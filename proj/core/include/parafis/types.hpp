#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "parafis/errors.hpp"

namespace parafis {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Covariance initialization used when a drift detection creates structure.
//   kI1: diagonal of per-dimension minima over the existing rules
//   kI2: 0.01 * identity
//   kI3: mean of the existing full covariances, divided by 10
//   kAnticipationPromotion: no fresh rule; the detected rule is replaced by
//   its two anticipation sub-rules, which keep everything they learned.
enum class InitMethod { kI1, kI2, kI3, kAnticipationPromotion };

// Structural change detector. kSeparabilityConditions is the anticipation
// module (sub-rule divergence test); kGefsStar is the distance-to-prototype
// criterion of the GEFS* baseline, which runs without anticipation pairs.
enum class CreationRule { kSeparabilityConditions, kGefsStar };

enum class EventKind { kNewClass, kDriftSplit };

struct CreationEvent {
  std::int64_t stream_index = 0;
  int rule_index = 0;
  EventKind kind = EventKind::kNewClass;

  friend bool operator==(const CreationEvent&, const CreationEvent&) = default;
};

// Exponential forgetting expressed as a factor alpha in (0, 1]. alpha = 1
// means no forgetting; otherwise the effective sample count is capped at
// tmax = round(1 / (1 - alpha)), never below 2.
class ForgettingFactor {
 public:
  explicit ForgettingFactor(double alpha);

  double alpha() const { return alpha_; }
  bool forgets() const { return alpha_ < 1.0; }
  std::int64_t tmax() const { return tmax_; }

 private:
  double alpha_;
  std::int64_t tmax_;
};

struct HyperParams {
  // Forgetting factors of the two anticipation sub-rules; convention
  // 0 < alpha2 <= alpha1 <= 1. With the customary alpha1 = 1, sub-rule 2 is
  // the reactive one and sub-rule 1 keeps the long history.
  double alpha1 = 1.0;
  double alpha2 = 0.9;
  int n_min = 20;       // points both sub-rules must absorb before a split
  double omega = 100.0; // initial scale of the WRLS correlation matrix
  InitMethod init_method = InitMethod::kAnticipationPromotion;
  CreationRule creation_rule = CreationRule::kSeparabilityConditions;
  double kappa = 2.6;   // GEFS* radius scale
  double m_exp = 4.0;   // GEFS* radius shrink exponent

  bool anticipation_enabled() const {
    return creation_rule == CreationRule::kSeparabilityConditions;
  }

  void validate() const;  // throws ConfigError
};

}  // namespace parafis
