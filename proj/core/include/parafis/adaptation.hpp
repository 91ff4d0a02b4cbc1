#pragma once

#include "parafis/rule.hpp"

namespace parafis {

class RuleSystem;

// Running update of the rule prototype from one sample with optional
// exponential forgetting: the effective time is t = min(k + 1, tmax) where k
// is the rule's sample count. The center moves first and the covariance
// update uses the moved center. Increments the sample count.
void update_premise(Rule& rule, const Vector& x, const ForgettingFactor& forgetting);

// One weighted recursive least-squares step on the rule conclusions.
// `weight` is the activation in [0, 1]; weight 0 is an exact no-op. The
// correlation matrix is updated first and the refreshed gain drives the
// conclusion update.
void update_consequent(Rule& rule, const Vector& x, const Vector& target, double weight);

// Sum-normalized activation of one rule; the single source of truth for the
// WRLS weight of a principal rule. Matches normalized_activations entrywise.
double effective_membership(const RuleSystem& system, const Vector& x, int rule_index);

}  // namespace parafis
