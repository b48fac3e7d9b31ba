#include "harvest/listnet.hpp"

#include <cmath>

#include "harvest/errors.hpp"

namespace harvest {

namespace {

Eigen::VectorXd softmax(const Eigen::VectorXd& z) {
  const double m = z.maxCoeff();
  Eigen::VectorXd e = (z.array() - m).exp();
  return e / e.sum();
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows) {
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index d = static_cast<Eigen::Index>(rows.empty() ? 0 : rows[0].size());
  Eigen::MatrixXd X(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      X(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return X;
}

}  // namespace

double ranking_log_probability(std::span<const double> scores,
                               std::span<const std::size_t> permutation) {
  if (scores.size() != permutation.size())
    throw ContractViolation("ranking_log_probability: size mismatch");
  // Work with exp(score - max) for stability; the shift cancels in every ratio.
  double m = scores.empty() ? 0.0 : scores[0];
  for (double s : scores) m = std::max(m, s);
  double log_p = 0.0;
  double suffix = 0.0;
  // Denominators telescope: position i divides by the sum over ranks >= i.
  for (std::size_t i = permutation.size(); i-- > 0;) {
    const double e = std::exp(scores[permutation[i]] - m);
    suffix += e;
    log_p += std::log(e) - std::log(suffix);
  }
  return log_p;
}

double listnet_top_one_loss(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            const Eigen::VectorXd& w) {
  const Eigen::VectorXd p = softmax(y);
  const Eigen::VectorXd z = X * w;
  const double m = z.maxCoeff();
  const double lse = m + std::log((z.array() - m).exp().sum());
  // -sum p_i log q_i with log q_i = z_i - logsumexp(z).
  return -(p.array() * (z.array() - lse)).sum();
}

Eigen::VectorXd listnet_gradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& w) {
  const Eigen::VectorXd p = softmax(y);
  const Eigen::VectorXd q = softmax(X * w);
  return X.transpose() * (q - p);
}

Eigen::VectorXd listnet_fit(const std::vector<std::vector<double>>& rows,
                            const std::vector<std::uint8_t>& labels, const ListNetParams& params) {
  if (rows.size() != labels.size() || rows.size() < 2)
    throw ContractViolation("listnet_fit: need at least two aligned observations");
  const Eigen::MatrixXd X = to_matrix(rows);
  Eigen::VectorXd y(static_cast<Eigen::Index>(labels.size()));
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = labels[static_cast<std::size_t>(i)];

  Eigen::VectorXd w = Eigen::VectorXd::Zero(X.cols());
  double loss = listnet_top_one_loss(X, y, w);
  for (int iter = 0; iter < params.iterations; ++iter) {
    w -= params.step * listnet_gradient(X, y, w);
    const double next = listnet_top_one_loss(X, y, w);
    if (std::abs(loss - next) < params.tol) {
      loss = next;
      break;
    }
    loss = next;
  }
  return w;
}

double listnet_score(const Eigen::VectorXd& w, std::span<const double> features) {
  if (features.size() != static_cast<std::size_t>(w.size()))
    throw ContractViolation("listnet_score: feature dimension mismatch");
  double z = 0.0;
  for (std::size_t i = 0; i < features.size(); ++i)
    z += w[static_cast<Eigen::Index>(i)] * features[i];
  return z;
}

}  // namespace harvest
