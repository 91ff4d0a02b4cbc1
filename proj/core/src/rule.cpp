#include "parafis/rule.hpp"

#include <cmath>
#include <utility>

namespace parafis {

Vector with_bias(const Vector& x) {
  Vector xb(x.size() + 1);
  xb(0) = 1.0;
  xb.tail(x.size()) = x;
  return xb;
}

Rule::Rule(Vector center, Matrix covariance, Matrix conclusion,
           Matrix correlation, std::int64_t sample_count)
    : center_(std::move(center)),
      covariance_(std::move(covariance)),
      conclusion_(std::move(conclusion)),
      correlation_(std::move(correlation)),
      sample_count_(sample_count) {
  const auto n = center_.size();
  if (n == 0) throw DimensionError("rule center must not be empty");
  if (covariance_.rows() != n || covariance_.cols() != n)
    throw DimensionError("rule covariance must be n x n");
  if (conclusion_.rows() < 1 || conclusion_.cols() != n + 1)
    throw DimensionError("rule conclusion must be c x (n+1)");
  if (correlation_.rows() != n + 1 || correlation_.cols() != n + 1)
    throw DimensionError("rule correlation must be (n+1) x (n+1)");
  if (sample_count_ < 0) throw ConfigError("rule sample count must be >= 0");
  refresh_inverse();
}

void Rule::refresh_inverse() {
  covariance_ = (0.5 * (covariance_ + covariance_.transpose())).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(covariance_);
  if (eig.info() != Eigen::Success || !eig.eigenvalues().allFinite())
    throw DegenerateCovarianceError("covariance eigendecomposition failed");

  double shift = 0.0;
  if (eig.eigenvalues().minCoeff() < kEigenvalueFloor) {
    shift = kEigenvalueFloor;
    covariance_ += shift * Matrix::Identity(covariance_.rows(), covariance_.cols());
  }
  Eigen::ArrayXd lambda = eig.eigenvalues().array() + shift;
  if (lambda.minCoeff() <= 0.0)
    throw DegenerateCovarianceError("covariance not positive definite after regularization");
  covariance_inverse_ =
      eig.eigenvectors() * lambda.inverse().matrix().asDiagonal() * eig.eigenvectors().transpose();
  if (!covariance_inverse_.allFinite())
    throw DegenerateCovarianceError("covariance inverse is not finite");
}

double Rule::mahalanobis_sq(const Vector& x) const {
  if (x.size() != center_.size())
    throw DimensionError("sample dimension does not match rule");
  const Vector d = x - center_;
  double d2 = d.dot(covariance_inverse_ * d);
  if (!std::isfinite(d2)) throw DegenerateCovarianceError("non-finite Mahalanobis distance");
  if (d2 < 0.0) {
    if (d2 < -1e-9) throw DegenerateCovarianceError("negative Mahalanobis distance");
    d2 = 0.0;  // roundoff at the center
  }
  return d2;
}

double Rule::membership(const Vector& x) const {
  return 1.0 / (1.0 + mahalanobis_sq(x));
}

Vector Rule::output(const Vector& x) const {
  if (x.size() != center_.size())
    throw DimensionError("sample dimension does not match rule");
  return conclusion_ * with_bias(x);
}

void Rule::set_premise(const Vector& center, const Matrix& covariance) {
  if (center.size() != center_.size())
    throw DimensionError("new center dimension does not match rule");
  if (covariance.rows() != center_.size() || covariance.cols() != center_.size())
    throw DimensionError("new covariance dimension does not match rule");
  center_ = center;
  covariance_ = covariance;
  refresh_inverse();
}

void Rule::set_conclusion(Matrix conclusion) {
  if (conclusion.rows() != conclusion_.rows() || conclusion.cols() != conclusion_.cols())
    throw DimensionError("conclusion shape must not change");
  conclusion_ = std::move(conclusion);
}

void Rule::set_correlation(Matrix correlation) {
  if (correlation.rows() != correlation_.rows() || correlation.cols() != correlation_.cols())
    throw DimensionError("correlation shape must not change");
  correlation_ = std::move(correlation);
}

void Rule::set_sample_count(std::int64_t count) {
  if (count < 0) throw ConfigError("rule sample count must be >= 0");
  sample_count_ = count;
}

}  // namespace parafis
