#pragma once

#include <Eigen/Dense>
#include <vector>

#include "harvest/scorer.hpp"

namespace harvest {

struct LogRegParams {
  double lambda = 1.0;   // ridge on non-intercept weights
  int max_iters = 100;
  double grad_tol = 1e-6;
};

/// Fitted model: w over the input columns plus a trailing intercept. When
/// the training data contains a single class the model degenerates to a
/// constant equal to the class rate (flagged via `constant`).
struct LogRegModel {
  Eigen::VectorXd w;
  bool constant = false;
  double prior = 0.5;
};

/// l2-regularized logistic regression fit by damped Newton iterations until
/// the gradient infinity-norm falls below grad_tol or the iteration cap.
/// Rows exclude the intercept column; it is appended internally and exempt
/// from the penalty.
LogRegModel logreg_fit(const std::vector<std::vector<double>>& rows,
                       const std::vector<std::uint8_t>& labels, const LogRegParams& params);

double logreg_score(const LogRegModel& model, std::span<const double> features);

/// Objective pieces on intercept-augmented design X (last column ones),
/// exposed for finite-difference checks.
double logreg_loss(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& w,
                   double lambda);
Eigen::VectorXd logreg_gradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                const Eigen::VectorXd& w, double lambda);

}  // namespace harvest
