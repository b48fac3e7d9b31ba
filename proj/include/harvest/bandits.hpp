#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "harvest/graph.hpp"
#include "harvest/rng.hpp"

namespace harvest {

/// Arm-selection policy over a fixed set of K arms. Implementations are pure
/// functions of (internal state, RNG stream position): replaying the stream
/// reproduces every selection.
class BanditPolicy {
 public:
  virtual ~BanditPolicy() = default;
  virtual std::string_view name() const = 0;
  virtual int arm_count() const = 0;
  virtual int select(Rng& rng) = 0;
  /// payoff must lie in [0,1].
  virtual void update(int arm, double payoff) = 0;
};

/// Cycles through arms in registration order: arm = (t-1) mod K.
class RoundRobinPolicy final : public BanditPolicy {
 public:
  explicit RoundRobinPolicy(int k);
  std::string_view name() const override { return "round_robin"; }
  int arm_count() const override { return k_; }
  int select(Rng&) override { return static_cast<int>(next_++ % static_cast<std::uint64_t>(k_)); }
  void update(int, double) override {}

 private:
  int k_;
  std::uint64_t next_ = 0;
};

/// UCB1: one forced pull per arm, then argmax of mean + sqrt(2 ln N / n_k).
class Ucb1Policy final : public BanditPolicy {
 public:
  explicit Ucb1Policy(int k);
  std::string_view name() const override { return "ucb1"; }
  int arm_count() const override { return static_cast<int>(pulls_.size()); }
  int select(Rng& rng) override;
  void update(int arm, double payoff) override;

 private:
  std::vector<std::int64_t> pulls_;
  std::vector<double> payoff_;
  std::int64_t total_ = 0;
};

/// epsilon-greedy: uniform arm with probability epsilon, otherwise the best
/// empirical mean (unpulled arms count as mean 0, ties to the lowest index).
class EpsGreedyPolicy final : public BanditPolicy {
 public:
  EpsGreedyPolicy(int k, double epsilon);
  std::string_view name() const override { return "eps_greedy"; }
  int arm_count() const override { return static_cast<int>(pulls_.size()); }
  int select(Rng& rng) override;
  void update(int arm, double payoff) override;

 private:
  double epsilon_;
  std::vector<std::int64_t> pulls_;
  std::vector<double> payoff_;
};

/// Exp3 with mixing gamma: p_k = (1-gamma) w_k / sum(w) + gamma / K and
/// importance-weighted exponential updates. Weights are renormalized after
/// each update, which leaves the sampling distribution unchanged.
class Exp3Policy final : public BanditPolicy {
 public:
  Exp3Policy(int k, double gamma);
  std::string_view name() const override { return "exp3"; }
  int arm_count() const override { return static_cast<int>(weights_.size()); }
  int select(Rng& rng) override;
  void update(int arm, double payoff) override;
  std::vector<double> probabilities() const;

 private:
  double gamma_;
  std::vector<double> weights_;
};

/// Thompson sampling over Beta(alpha_k, beta_k) posteriors; selects the arm
/// with the largest sample. With cap C > 0 this is Dynamic Thompson
/// Sampling: once alpha+beta reaches C, updates renormalize by C/(C+1) so
/// the posterior keeps tracking a drifting payoff rate. cap 0 disables the
/// cap (plain TS). Both start from the uniform prior alpha = beta = 1.
class ThompsonPolicy final : public BanditPolicy {
 public:
  ThompsonPolicy(int k, double cap);
  std::string_view name() const override { return cap_ > 0 ? "d3ts" : "ts"; }
  int arm_count() const override { return static_cast<int>(alpha_.size()); }
  int select(Rng& rng) override;
  void update(int arm, double payoff) override;

  double alpha(int arm) const { return alpha_[static_cast<std::size_t>(arm)]; }
  double beta(int arm) const { return beta_[static_cast<std::size_t>(arm)]; }

 private:
  double cap_;
  std::vector<double> alpha_;
  std::vector<double> beta_;
};

/// Builds a policy by strategy name: round_robin, ucb1, ts, d3ts,
/// eps_greedy or exp3.
std::unique_ptr<BanditPolicy> make_policy(const std::string& strategy, int k, double cap_c,
                                          double epsilon, double gamma);

// ---------------------------------------------------------------------------
// Score-to-probability sampling over ranked border nodes.

enum class RankFamily { geometric, zeta };

/// Probability over border nodes that decays with score rank: geometric
/// P(rank) ~ (1-q)^(rank-1) q, or zeta P(rank) ~ rank^(-r), truncated to the
/// border size and normalized. Rank ties are broken uniformly at random.
struct RankDistribution {
  RankFamily family = RankFamily::geometric;
  double parameter = 0.5;
  std::vector<NodeId> ranked;  // best-scored first
  std::vector<double> probs;   // aligned with ranked; sums to 1
};

RankDistribution make_rank_distribution(const std::vector<NodeId>& border,
                                        const std::vector<double>& scores, RankFamily family,
                                        double parameter, Rng& rng);

/// Probability mass of the k top-ranked entries among n under the family.
double top_k_mass(RankFamily family, double parameter, std::size_t n, std::size_t k);

struct MassSolveResult {
  double parameter = 0.0;
  double achieved = 0.0;     // top-k mass at the returned parameter
  bool at_bound = false;     // requested mass sits at the family's uniform limit
};

/// Finds the family parameter whose truncated top-k mass is x, by bisection
/// to |mass - x| <= 1e-6. Geometric searches q in (1e-9, 1-1e-9); zeta
/// searches r in [1, 50]. Throws InfeasibleParameter outside the feasible
/// range, naming it.
MassSolveResult solve_mass_parameter(std::size_t n, std::size_t k, double x, RankFamily family);

/// Draws a node: with probability mix_p a uniformly random border node,
/// otherwise a draw from the rank distribution.
NodeId sample_from_ranks(const RankDistribution& dist, double mix_p, Rng& rng);

}  // namespace harvest
