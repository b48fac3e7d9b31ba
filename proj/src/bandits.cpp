#include "harvest/bandits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "harvest/errors.hpp"

namespace harvest {

namespace {

void check_arm(int arm, int k, const char* who) {
  if (arm < 0 || arm >= k)
    throw ContractViolation(std::string(who) + ": arm index " + std::to_string(arm) +
                            " out of range");
}

void check_payoff(double payoff, const char* who) {
  if (!(payoff >= 0.0 && payoff <= 1.0))
    throw ContractViolation(std::string(who) + ": payoff must lie in [0,1]");
}

int check_k(int k) {
  if (k < 1) throw ContractViolation("bandit: need at least one arm");
  return k;
}

}  // namespace

RoundRobinPolicy::RoundRobinPolicy(int k) : k_(check_k(k)) {}

Ucb1Policy::Ucb1Policy(int k) : pulls_(static_cast<std::size_t>(check_k(k)), 0),
                                payoff_(static_cast<std::size_t>(k), 0.0) {}

int Ucb1Policy::select(Rng&) {
  const std::size_t k = pulls_.size();
  for (std::size_t a = 0; a < k; ++a)
    if (pulls_[a] == 0) return static_cast<int>(a);  // forced initialization
  int best_arm = 0;
  double best = -1.0;
  for (std::size_t a = 0; a < k; ++a) {
    const double mean = payoff_[a] / static_cast<double>(pulls_[a]);
    const double bonus =
        std::sqrt(2.0 * std::log(static_cast<double>(total_)) / static_cast<double>(pulls_[a]));
    if (mean + bonus > best) {
      best = mean + bonus;
      best_arm = static_cast<int>(a);
    }
  }
  return best_arm;
}

void Ucb1Policy::update(int arm, double payoff) {
  check_arm(arm, arm_count(), "ucb1");
  check_payoff(payoff, "ucb1");
  pulls_[static_cast<std::size_t>(arm)] += 1;
  payoff_[static_cast<std::size_t>(arm)] += payoff;
  total_ += 1;
}

EpsGreedyPolicy::EpsGreedyPolicy(int k, double epsilon)
    : epsilon_(epsilon), pulls_(static_cast<std::size_t>(check_k(k)), 0),
      payoff_(static_cast<std::size_t>(k), 0.0) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw ContractViolation("eps_greedy: epsilon must lie in [0,1]");
}

int EpsGreedyPolicy::select(Rng& rng) {
  if (uniform_real(rng) < epsilon_) return static_cast<int>(uniform_index(rng, pulls_.size()));
  int best_arm = 0;
  double best = -1.0;
  for (std::size_t a = 0; a < pulls_.size(); ++a) {
    const double mean = pulls_[a] > 0 ? payoff_[a] / static_cast<double>(pulls_[a]) : 0.0;
    if (mean > best) {
      best = mean;
      best_arm = static_cast<int>(a);
    }
  }
  return best_arm;
}

void EpsGreedyPolicy::update(int arm, double payoff) {
  check_arm(arm, arm_count(), "eps_greedy");
  check_payoff(payoff, "eps_greedy");
  pulls_[static_cast<std::size_t>(arm)] += 1;
  payoff_[static_cast<std::size_t>(arm)] += payoff;
}

Exp3Policy::Exp3Policy(int k, double gamma)
    : gamma_(gamma), weights_(static_cast<std::size_t>(check_k(k)), 1.0) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw ContractViolation("exp3: gamma must lie in (0,1]");
}

std::vector<double> Exp3Policy::probabilities() const {
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  const std::size_t k = weights_.size();
  std::vector<double> p(k);
  for (std::size_t a = 0; a < k; ++a)
    p[a] = (1.0 - gamma_) * weights_[a] / total + gamma_ / static_cast<double>(k);
  return p;
}

int Exp3Policy::select(Rng& rng) {
  const std::vector<double> p = probabilities();
  double u = uniform_real(rng);
  for (std::size_t a = 0; a + 1 < p.size(); ++a) {
    if (u < p[a]) return static_cast<int>(a);
    u -= p[a];
  }
  return static_cast<int>(p.size() - 1);
}

void Exp3Policy::update(int arm, double payoff) {
  check_arm(arm, arm_count(), "exp3");
  check_payoff(payoff, "exp3");
  const std::vector<double> p = probabilities();
  const double xhat = payoff / p[static_cast<std::size_t>(arm)];
  weights_[static_cast<std::size_t>(arm)] *=
      std::exp(gamma_ * xhat / static_cast<double>(weights_.size()));
  // Rescale so weights stay finite over long runs; ratios are preserved.
  const double top = *std::max_element(weights_.begin(), weights_.end());
  for (double& w : weights_) w /= top;
}

ThompsonPolicy::ThompsonPolicy(int k, double cap)
    : cap_(cap), alpha_(static_cast<std::size_t>(check_k(k)), 1.0),
      beta_(static_cast<std::size_t>(k), 1.0) {
  if (cap_ > 0.0 && cap_ < 2.0) throw ContractViolation("d3ts: cap C must be >= 2");
}

int ThompsonPolicy::select(Rng& rng) {
  int best_arm = 0;
  double best = -1.0;
  for (std::size_t a = 0; a < alpha_.size(); ++a) {
    const double sample = beta_sample(rng, alpha_[a], beta_[a]);
    if (sample > best) {
      best = sample;
      best_arm = static_cast<int>(a);
    }
  }
  return best_arm;
}

void ThompsonPolicy::update(int arm, double payoff) {
  check_arm(arm, arm_count(), "thompson");
  check_payoff(payoff, "thompson");
  double& a = alpha_[static_cast<std::size_t>(arm)];
  double& b = beta_[static_cast<std::size_t>(arm)];
  if (cap_ <= 0.0 || a + b < cap_) {
    a += payoff;
    b += 1.0 - payoff;
  } else {
    a = (a + payoff) * cap_ / (cap_ + 1.0);
    b = (b + (1.0 - payoff)) * cap_ / (cap_ + 1.0);
  }
}

std::unique_ptr<BanditPolicy> make_policy(const std::string& strategy, int k, double cap_c,
                                          double epsilon, double gamma) {
  if (strategy == "round_robin") return std::make_unique<RoundRobinPolicy>(k);
  if (strategy == "ucb1") return std::make_unique<Ucb1Policy>(k);
  if (strategy == "ts") return std::make_unique<ThompsonPolicy>(k, 0.0);
  if (strategy == "d3ts") return std::make_unique<ThompsonPolicy>(k, cap_c);
  if (strategy == "eps_greedy") return std::make_unique<EpsGreedyPolicy>(k, epsilon);
  if (strategy == "exp3") return std::make_unique<Exp3Policy>(k, gamma);
  throw ValidationError("unknown bandit strategy '" + strategy + "'");
}

// ---------------------------------------------------------------------------

namespace {

// Unnormalized mass of a rank (1-based) under the family.
double rank_weight(RankFamily family, double parameter, std::size_t rank) {
  if (family == RankFamily::geometric)
    return std::pow(1.0 - parameter, static_cast<double>(rank - 1)) * parameter;
  return std::pow(static_cast<double>(rank), -parameter);
}

}  // namespace

double top_k_mass(RankFamily family, double parameter, std::size_t n, std::size_t k) {
  double top = 0.0, total = 0.0;
  for (std::size_t rank = 1; rank <= n; ++rank) {
    const double w = rank_weight(family, parameter, rank);
    total += w;
    if (rank <= k) top += w;
  }
  return total > 0.0 ? top / total : 0.0;
}

MassSolveResult solve_mass_parameter(std::size_t n, std::size_t k, double x, RankFamily family) {
  if (k < 1 || k >= n) throw ContractViolation("solve_mass_parameter: need 1 <= k < n");
  if (!(x > 0.0 && x < 1.0)) throw ContractViolation("solve_mass_parameter: need 0 < x < 1");

  double lo = family == RankFamily::geometric ? 1e-9 : 1.0;
  double hi = family == RankFamily::geometric ? 1.0 - 1e-9 : 50.0;
  const double lo_mass = top_k_mass(family, lo, n, k);
  const double hi_mass = top_k_mass(family, hi, n, k);
  constexpr double kTol = 1e-6;

  if (x <= lo_mass) {
    // The family cannot spread mass flatter than its uniform limit.
    if (lo_mass - x <= kTol)
      return {lo, lo_mass, true};
    throw InfeasibleParameter(
        "requested top-" + std::to_string(k) + " mass " + std::to_string(x) +
        " is below the feasible range (" + std::to_string(lo_mass) + ", " +
        std::to_string(hi_mass) + ")");
  }
  if (x > hi_mass)
    throw InfeasibleParameter(
        "requested top-" + std::to_string(k) + " mass " + std::to_string(x) +
        " is above the feasible range (" + std::to_string(lo_mass) + ", " +
        std::to_string(hi_mass) + ")");

  // top_k_mass is increasing in the parameter for both families.
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double m = top_k_mass(family, mid, n, k);
    if (std::abs(m - x) <= kTol) return {mid, m, false};
    (m < x ? lo : hi) = mid;
  }
  return {mid, top_k_mass(family, mid, n, k), false};
}

RankDistribution make_rank_distribution(const std::vector<NodeId>& border,
                                        const std::vector<double>& scores, RankFamily family,
                                        double parameter, Rng& rng) {
  if (border.empty()) throw BorderExhausted("make_rank_distribution: border set is empty");
  if (border.size() != scores.size())
    throw ContractViolation("make_rank_distribution: scores not aligned with border");

  RankDistribution dist;
  dist.family = family;
  dist.parameter = parameter;

  // Shuffle before the stable sort so equal scores receive a uniformly
  // random rank order.
  std::vector<std::size_t> order(border.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  dist.ranked.reserve(order.size());
  for (std::size_t i : order) dist.ranked.push_back(border[i]);

  dist.probs.resize(order.size());
  double total = 0.0;
  for (std::size_t rank = 1; rank <= order.size(); ++rank) {
    dist.probs[rank - 1] = rank_weight(family, parameter, rank);
    total += dist.probs[rank - 1];
  }
  for (double& p : dist.probs) p /= total;
  return dist;
}

NodeId sample_from_ranks(const RankDistribution& dist, double mix_p, Rng& rng) {
  if (dist.ranked.empty()) throw BorderExhausted("sample_from_ranks: empty distribution");
  if (mix_p > 0.0 && uniform_real(rng) < mix_p)
    return dist.ranked[uniform_index(rng, dist.ranked.size())];
  double u = uniform_real(rng);
  for (std::size_t i = 0; i + 1 < dist.probs.size(); ++i) {
    if (u < dist.probs[i]) return dist.ranked[i];
    u -= dist.probs[i];
  }
  return dist.ranked.back();
}

}  // namespace harvest
