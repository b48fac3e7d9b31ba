#pragma once

#include <Eigen/Dense>

#include "harvest/scorer.hpp"

namespace harvest {

/// Exponentially weighted least squares with forgetting factor beta and
/// ridge penalty lambda. After t updates the weights are the exact minimizer
/// of sum_i beta^(t-i) (y_i - x_i'w)^2 + beta^t lambda |w|^2; the recursive
/// update is algebraically equivalent to re-solving the weighted normal
/// equations from scratch. beta = 1 reduces to plain ridge regression.
class Ewls final : public Scorer {
 public:
  /// dim is the raw feature dimension; an always-1 intercept column is
  /// appended internally (the ridge penalty covers all coordinates).
  Ewls(std::size_t dim, double beta, double lambda);

  std::string_view name() const override { return "ewls"; }
  void update(const Observation& obs) override;
  double score(std::span<const double> features) const override;

  std::size_t observation_count() const { return count_; }
  const Eigen::VectorXd& weights() const { return w_; }
  /// Inverse of the regularized information matrix; symmetric positive
  /// definite for all update sequences.
  const Eigen::MatrixXd& inverse_information() const { return inv_info_; }

 private:
  Eigen::VectorXd augment(std::span<const double> features) const;

  std::size_t dim_;  // including intercept
  double beta_;
  double lambda_;
  std::size_t count_ = 0;
  Eigen::VectorXd w_;
  Eigen::MatrixXd inv_info_;
};

}  // namespace harvest
