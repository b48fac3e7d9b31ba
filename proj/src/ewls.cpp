#include "harvest/ewls.hpp"

#include "harvest/errors.hpp"

namespace harvest {

Ewls::Ewls(std::size_t dim, double beta, double lambda)
    : dim_(dim + 1), beta_(beta), lambda_(lambda) {
  if (!(beta > 0.0 && beta <= 1.0)) throw ContractViolation("ewls: beta must lie in (0,1]");
  if (lambda <= 0.0) throw ContractViolation("ewls: lambda must be positive");
  w_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim_));
  inv_info_ = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim_),
                                        static_cast<Eigen::Index>(dim_)) /
              lambda_;
}

Eigen::VectorXd Ewls::augment(std::span<const double> features) const {
  if (features.size() + 1 != dim_)
    throw ContractViolation("ewls: feature dimension changed mid-run");
  Eigen::VectorXd x(static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < features.size(); ++i) x[static_cast<Eigen::Index>(i)] = features[i];
  x[static_cast<Eigen::Index>(dim_ - 1)] = 1.0;
  return x;
}

void Ewls::update(const Observation& obs) {
  const Eigen::VectorXd x = augment(obs.features);
  const double y = obs.label;
  // Classical RLS step on Phi_t = beta Phi_{t-1} + x x', b_t = beta b + x y,
  // with Phi_0 = lambda I. Sherman-Morrison keeps inv_info_ = Phi_t^{-1}.
  const Eigen::VectorXd px = inv_info_ * x;
  const double denom = beta_ + x.dot(px);
  const Eigen::VectorXd gain = px / denom;
  w_ += gain * (y - x.dot(w_));
  inv_info_ = (inv_info_ - gain * px.transpose()) / beta_;
  inv_info_ = ((inv_info_ + inv_info_.transpose()) * 0.5).eval();  // keep symmetric
  ++count_;
}

double Ewls::score(std::span<const double> features) const {
  return augment(features).dot(w_);
}

}  // namespace harvest
