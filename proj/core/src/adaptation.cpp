#include "parafis/adaptation.hpp"

#include <algorithm>
#include <utility>

#include "parafis/rule_system.hpp"

namespace parafis {

void update_premise(Rule& rule, const Vector& x, const ForgettingFactor& forgetting) {
  if (x.size() != rule.feature_dim())
    throw DimensionError("sample dimension does not match rule");
  if (!x.allFinite()) throw Error("non-finite sample");

  const std::int64_t k = rule.sample_count();
  const double t = static_cast<double>(std::min(k + 1, forgetting.tmax()));
  const double keep = (t - 1.0) / t;

  const Vector center = keep * rule.center() + (1.0 / t) * x;
  const Vector d = x - center;
  const Matrix covariance = keep * rule.covariance() + (1.0 / t) * (d * d.transpose());
  rule.set_premise(center, covariance);
  rule.set_sample_count(k + 1);
}

void update_consequent(Rule& rule, const Vector& x, const Vector& target, double weight) {
  if (x.size() != rule.feature_dim())
    throw DimensionError("sample dimension does not match rule");
  if (target.size() != rule.class_count())
    throw DimensionError("target dimension does not match rule classes");
  if (!(weight >= 0.0) || weight > 1.0)
    throw ConfigError("WRLS weight must be in [0, 1]");
  if (weight == 0.0) return;

  const Vector xb = with_bias(x);
  const Vector cx = rule.correlation() * xb;
  const double denom = 1.0 + weight * xb.dot(cx);
  Matrix correlation = rule.correlation() - (weight / denom) * (cx * cx.transpose());
  correlation = (0.5 * (correlation + correlation.transpose())).eval();

  const Vector gain = weight * (correlation * xb);
  const Vector residual = target - rule.conclusion() * xb;
  rule.set_conclusion(rule.conclusion() + residual * gain.transpose());
  rule.set_correlation(std::move(correlation));
}

double effective_membership(const RuleSystem& system, const Vector& x, int rule_index) {
  const Vector beta = system.normalized_activations(x);
  if (rule_index < 0 || rule_index >= beta.size())
    throw DimensionError("rule index out of range");
  return beta(rule_index);
}

}  // namespace parafis
