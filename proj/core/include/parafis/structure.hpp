#pragma once

#include <vector>

#include "parafis/rule.hpp"

namespace parafis {

// Drift-anticipation state attached to one principal rule: two shadow rules
// that see the same samples as their principal but learn the premise with
// their own forgetting factors (alpha1 drives sub1, alpha2 drives sub2).
struct AnticipationPair {
  Rule sub1;
  Rule sub2;
};

// Fresh rule over a single point: center on the point, covariance 0.01 * I,
// zero conclusions, correlation omega * I. The point itself counts as the
// rule's first sample, so the creation state survives the next update.
Rule rule_from_point(const Vector& x, int class_count, double omega);

// Covariance for a rule created by a detected drift. kI1 and kI3 fall back
// to kI2 when there are no existing rules. Promotion has no fresh rule, so
// kAnticipationPromotion is rejected here.
Matrix init_covariance(InitMethod method, const std::vector<Rule>& existing, int feature_dim);

// Distance criterion of the GEFS* baseline: create when the Mahalanobis
// distance of x to the rule exceeds kappa * p^(1/sqrt(2)) scaled up by
// (1 - 1/(k+1))^-m_exp. False for a rule with no samples (infinite radius).
bool gefs_star_should_create(const Rule& rule, const Vector& x, double kappa, double m_exp);

// Euclidean distance from the rule center to its Mahalanobis unit ellipsoid
// along the direction of other_center. Centers must not coincide.
double sigma_along_axis(const Rule& rule, const Vector& other_center);

// The sub-rules have drifted apart: center distance exceeds the sum of the
// two ellipsoid envelopes along the joining axis. Coincident centers: false.
bool condition1_separability(const AnticipationPair& pair);

// Both sub-rules have absorbed more than n_min samples.
bool condition2_inertia(const AnticipationPair& pair, int n_min);

// Fresh pair for a principal rule: both sub-rules copy its premise and
// sample count 1; sub1 inherits conclusions and correlation, sub2 restarts
// from zero conclusions with correlation omega * I.
AnticipationPair make_pair_from_rule(const Rule& rule, double omega);

}  // namespace parafis
