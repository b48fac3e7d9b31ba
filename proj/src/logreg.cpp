#include "harvest/logreg.hpp"

#include <cmath>

#include "harvest/errors.hpp"

namespace harvest {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

Eigen::MatrixXd augment(const std::vector<std::vector<double>>& rows) {
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index d = static_cast<Eigen::Index>(rows.empty() ? 0 : rows[0].size());
  Eigen::MatrixXd X(n, d + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) X(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    X(i, d) = 1.0;
  }
  return X;
}

// The penalty skips the trailing intercept coordinate.
Eigen::VectorXd penalized(const Eigen::VectorXd& w) {
  Eigen::VectorXd p = w;
  p[p.size() - 1] = 0.0;
  return p;
}

}  // namespace

double logreg_loss(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& w,
                   double lambda) {
  const Eigen::VectorXd z = X * w;
  double nll = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    // log(1 + exp(z)) - y z, computed stably.
    const double zi = z[i];
    const double log1pexp = zi > 0 ? zi + std::log1p(std::exp(-zi)) : std::log1p(std::exp(zi));
    nll += log1pexp - y[i] * zi;
  }
  const Eigen::VectorXd p = penalized(w);
  return nll + 0.5 * lambda * p.squaredNorm();
}

Eigen::VectorXd logreg_gradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                const Eigen::VectorXd& w, double lambda) {
  Eigen::VectorXd mu = (X * w).unaryExpr([](double z) { return sigmoid(z); });
  return X.transpose() * (mu - y) + lambda * penalized(w);
}

LogRegModel logreg_fit(const std::vector<std::vector<double>>& rows,
                       const std::vector<std::uint8_t>& labels, const LogRegParams& params) {
  if (rows.size() != labels.size() || rows.empty())
    throw ContractViolation("logreg_fit: rows and labels must be non-empty and aligned");

  std::size_t positives = 0;
  for (auto y : labels) positives += y;
  LogRegModel model;
  if (positives == 0 || positives == labels.size()) {
    model.constant = true;
    model.prior = static_cast<double>(positives) / static_cast<double>(labels.size());
    return model;
  }

  const Eigen::MatrixXd X = augment(rows);
  Eigen::VectorXd y(static_cast<Eigen::Index>(labels.size()));
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = labels[static_cast<std::size_t>(i)];

  const Eigen::Index d = X.cols();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
  double loss = logreg_loss(X, y, w, params.lambda);

  for (int iter = 0; iter < params.max_iters; ++iter) {
    const Eigen::VectorXd grad = logreg_gradient(X, y, w, params.lambda);
    if (grad.lpNorm<Eigen::Infinity>() <= params.grad_tol) break;

    // Newton direction from the IRLS Hessian X'SX + lambda*I(no intercept).
    const Eigen::VectorXd mu = (X * w).unaryExpr([](double z) { return sigmoid(z); });
    const Eigen::VectorXd s = mu.array() * (1.0 - mu.array());
    Eigen::MatrixXd H = X.transpose() * s.asDiagonal() * X;
    for (Eigen::Index j = 0; j + 1 < d; ++j) H(j, j) += params.lambda;
    H(d - 1, d - 1) += 1e-10;  // guard against a flat intercept block
    const Eigen::VectorXd dir = H.ldlt().solve(grad);

    // Backtracking keeps the Newton step from overshooting on separable data.
    double step = 1.0;
    for (int half = 0; half < 40; ++half) {
      const Eigen::VectorXd cand = w - step * dir;
      const double cand_loss = logreg_loss(X, y, cand, params.lambda);
      if (cand_loss <= loss) {
        w = cand;
        loss = cand_loss;
        break;
      }
      step *= 0.5;
    }
  }
  model.w = w;
  return model;
}

double logreg_score(const LogRegModel& model, std::span<const double> features) {
  if (model.constant) return model.prior;
  if (features.size() + 1 != static_cast<std::size_t>(model.w.size()))
    throw ContractViolation("logreg_score: feature dimension mismatch");
  double z = model.w[model.w.size() - 1];
  for (std::size_t i = 0; i < features.size(); ++i)
    z += model.w[static_cast<Eigen::Index>(i)] * features[i];
  return sigmoid(z);
}

}  // namespace harvest
