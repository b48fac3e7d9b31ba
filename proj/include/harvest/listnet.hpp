#pragma once

#include <Eigen/Dense>
#include <vector>

#include "harvest/scorer.hpp"

namespace harvest {

struct ListNetParams {
  int iterations = 100;
  double tol = 1e-5;   // stop when the loss improves by less than this
  double step = 0.1;
};

/// Log-probability of observing `permutation` (indices into scores, best
/// first) under the Plackett-Luce model with exp(score) weights: each
/// position is drawn from the softmax of the not-yet-ranked suffix.
double ranking_log_probability(std::span<const double> scores,
                               std::span<const std::size_t> permutation);

/// Top-one listwise cross entropy between the ground-truth distribution
/// softmax(labels) and the model distribution softmax(Xw).
double listnet_top_one_loss(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            const Eigen::VectorXd& w);
Eigen::VectorXd listnet_gradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& w);

/// Linear scoring function trained by gradient descent on the top-one
/// listwise loss over the full observation list.
Eigen::VectorXd listnet_fit(const std::vector<std::vector<double>>& rows,
                            const std::vector<std::uint8_t>& labels, const ListNetParams& params);

double listnet_score(const Eigen::VectorXd& w, std::span<const double> features);

}  // namespace harvest
