#pragma once

#include "parafis/types.hpp"

namespace parafis {

// One generalized Takagi-Sugeno rule: a hyper-ellipsoidal prototype (center
// plus full covariance, Mahalanobis geometry, Cauchy kernel) together with
// one affine output per class and the correlation matrix of its recursive
// least-squares learner.
//
// The covariance is kept symmetric and floor-regularized, and its inverse is
// cached; both are refreshed on every premise change.
class Rule {
 public:
  Rule(Vector center, Matrix covariance, Matrix conclusion, Matrix correlation,
       std::int64_t sample_count);

  int feature_dim() const { return static_cast<int>(center_.size()); }
  int class_count() const { return static_cast<int>(conclusion_.rows()); }

  const Vector& center() const { return center_; }
  const Matrix& covariance() const { return covariance_; }
  const Matrix& covariance_inverse() const { return covariance_inverse_; }
  const Matrix& conclusion() const { return conclusion_; }    // c x (n+1)
  const Matrix& correlation() const { return correlation_; }  // (n+1) x (n+1)
  std::int64_t sample_count() const { return sample_count_; }

  // Squared Mahalanobis distance (x - mu)^T A^-1 (x - mu).
  double mahalanobis_sq(const Vector& x) const;
  // Cauchy kernel 1 / (1 + d^2); in (0, 1], equal to 1 only at the center.
  double membership(const Vector& x) const;
  // Per-class affine outputs Pi * (1, x).
  Vector output(const Vector& x) const;

  void set_premise(const Vector& center, const Matrix& covariance);
  void set_conclusion(Matrix conclusion);
  void set_correlation(Matrix correlation);
  void set_sample_count(std::int64_t count);

  // Eigenvalues below this floor trigger regularization of the stored
  // covariance: floor * identity is added before inversion.
  static constexpr double kEigenvalueFloor = 1e-10;

 private:
  void refresh_inverse();

  Vector center_;
  Matrix covariance_;
  Matrix covariance_inverse_;
  Matrix conclusion_;
  Matrix correlation_;
  std::int64_t sample_count_ = 0;
};

// Extended input (1, x) seen by the affine conclusions and WRLS.
Vector with_bias(const Vector& x);

}  // namespace parafis
