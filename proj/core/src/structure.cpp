#include "parafis/structure.hpp"

#include <cmath>
#include <utility>

namespace parafis {

Rule rule_from_point(const Vector& x, int class_count, double omega) {
  if (x.size() == 0) throw DimensionError("point must not be empty");
  if (!x.allFinite()) throw Error("non-finite point");
  if (class_count < 1) throw ConfigError("class count must be >= 1");
  if (!(omega > 0.0)) throw ConfigError("omega must be > 0");
  const auto n = x.size();
  return Rule(x, 0.01 * Matrix::Identity(n, n), Matrix::Zero(class_count, n + 1),
              omega * Matrix::Identity(n + 1, n + 1), 1);
}

Matrix init_covariance(InitMethod method, const std::vector<Rule>& existing, int feature_dim) {
  if (feature_dim < 1) throw DimensionError("feature dimension must be >= 1");
  const Matrix fallback = 0.01 * Matrix::Identity(feature_dim, feature_dim);
  switch (method) {
    case InitMethod::kI2:
      return fallback;
    case InitMethod::kI1: {
      if (existing.empty()) return fallback;
      Vector diag = existing.front().covariance().diagonal();
      for (std::size_t i = 1; i < existing.size(); ++i)
        diag = diag.cwiseMin(existing[i].covariance().diagonal());
      return diag.asDiagonal();
    }
    case InitMethod::kI3: {
      if (existing.empty()) return fallback;
      Matrix mean = Matrix::Zero(feature_dim, feature_dim);
      for (const Rule& rule : existing) mean += rule.covariance();
      mean /= static_cast<double>(existing.size());
      return ((mean + mean.transpose()) / 2.0 / 10.0).eval();
    }
    case InitMethod::kAnticipationPromotion:
      break;
  }
  throw ConfigError("promotion does not initialize a fresh covariance");
}

bool gefs_star_should_create(const Rule& rule, const Vector& x, double kappa, double m_exp) {
  if (!(kappa > 0.0) || !(m_exp > 0.0))
    throw ConfigError("GEFS* parameters must be positive");
  const std::int64_t k = rule.sample_count();
  if (k <= 0) return false;  // radius diverges for a rule with no samples
  const double p = static_cast<double>(rule.feature_dim());
  const double shrink = 1.0 - 1.0 / (static_cast<double>(k) + 1.0);
  const double radius = kappa * std::pow(p, 1.0 / std::sqrt(2.0)) / std::pow(shrink, m_exp);
  return rule.mahalanobis_sq(x) > radius * radius;
}

double sigma_along_axis(const Rule& rule, const Vector& other_center) {
  const Vector d = other_center - rule.center();
  const double len_sq = d.squaredNorm();
  if (len_sq == 0.0) throw Error("sigma_along_axis: coincident centers");
  const double q = d.dot(rule.covariance_inverse() * d);
  if (!(q > 0.0) || !std::isfinite(q))
    throw DegenerateCovarianceError("degenerate covariance along axis");
  return std::sqrt(len_sq / q);
}

bool condition1_separability(const AnticipationPair& pair) {
  const double dist = (pair.sub1.center() - pair.sub2.center()).norm();
  if (dist == 0.0) return false;
  return dist > sigma_along_axis(pair.sub1, pair.sub2.center()) +
                    sigma_along_axis(pair.sub2, pair.sub1.center());
}

bool condition2_inertia(const AnticipationPair& pair, int n_min) {
  if (n_min < 1) throw ConfigError("n_min must be >= 1");
  return std::min(pair.sub1.sample_count(), pair.sub2.sample_count()) > n_min;
}

AnticipationPair make_pair_from_rule(const Rule& rule, double omega) {
  if (!(omega > 0.0)) throw ConfigError("omega must be > 0");
  const auto nb = rule.feature_dim() + 1;
  Rule sub1(rule.center(), rule.covariance(), rule.conclusion(), rule.correlation(), 1);
  Rule sub2(rule.center(), rule.covariance(), Matrix::Zero(rule.class_count(), nb),
            omega * Matrix::Identity(nb, nb), 1);
  return AnticipationPair{std::move(sub1), std::move(sub2)};
}

}  // namespace parafis
