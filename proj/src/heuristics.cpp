#include "harvest/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "harvest/errors.hpp"

namespace harvest {

int mod_score(const ObservedState& state, NodeId node) {
  if (!state.is_border(node))
    throw ContractViolation("mod_score: node " + std::to_string(node) + " is not a border node");
  int targets = 0;
  for (NodeId v : state.observed_neighbors(node)) targets += state.known_label(v);
  return targets;
}

namespace {

// Nodes of the observed graph (Q then B) and a shared Jacobi sweep body.
struct PropagationProblem {
  std::vector<NodeId> nodes;
  const ObservedState& state;

  explicit PropagationProblem(const ObservedState& st) : state(st) {
    nodes.reserve(st.queried_order().size() + st.border().size());
    for (NodeId v : st.queried_order()) nodes.push_back(v);
    for (NodeId v : st.border()) nodes.push_back(v);
  }

  double relaxed(const std::vector<double>& f, NodeId v, double w0) const {
    double num = 0.0;
    for (NodeId u : state.observed_neighbors(v)) num += f[u];
    double den = static_cast<double>(state.observed_neighbors(v).size());
    if (state.is_queried(v)) {
      num += w0 * state.known_label(v);
      den += w0;
    }
    return den > 0.0 ? num / den : f[v];
  }
};

template <bool Parallel>
PropagationResult propagate_impl(const ObservedState& state, const PropagationConfig& cfg) {
  if (cfg.tol <= 0.0) throw ContractViolation("as_propagate: tol must be positive");
  if (cfg.max_iters < 1) throw ContractViolation("as_propagate: max_iters must be >= 1");
  if (cfg.virtual_weight <= 0.0)
    throw ContractViolation("as_propagate: virtual_weight must be positive");
  if (state.queried_order().empty())
    throw ContractViolation("as_propagate: observed graph is empty");

  const PropagationProblem prob(state);
  PropagationResult res;
  res.score.assign(state.node_count(), cfg.prior);
  std::vector<double> next = res.score;

  const std::int64_t n = static_cast<std::int64_t>(prob.nodes.size());
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    double delta = 0.0;
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static) reduction(max : delta)
      for (std::int64_t i = 0; i < n; ++i) {
        const NodeId v = prob.nodes[static_cast<std::size_t>(i)];
        next[v] = prob.relaxed(res.score, v, cfg.virtual_weight);
        delta = std::max(delta, std::abs(next[v] - res.score[v]));
      }
    } else {
      for (std::int64_t i = 0; i < n; ++i) {
        const NodeId v = prob.nodes[static_cast<std::size_t>(i)];
        next[v] = prob.relaxed(res.score, v, cfg.virtual_weight);
        delta = std::max(delta, std::abs(next[v] - res.score[v]));
      }
    }
    res.score.swap(next);
    res.iterations = iter + 1;
    if (delta < cfg.tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace

PropagationResult as_propagate(const ObservedState& state, const PropagationConfig& cfg) {
  return propagate_impl<true>(state, cfg);
}

PropagationResult as_propagate_serial(const ObservedState& state, const PropagationConfig& cfg) {
  return propagate_impl<false>(state, cfg);
}

NodeId EquivClassBandit::select(const ObservedState& state, Rng& rng) {
  const auto& border = state.border();
  if (border.empty()) throw BorderExhausted("snucb1: border set is empty");

  // Rebuild classes from the current border. Signatures that persist keep
  // their statistics; vanished ones are dropped; new ones queue for a
  // forced first pull.
  for (auto& [sig, stats] : classes_) stats.members.clear();
  for (NodeId v : border) {
    const auto nbrs = state.observed_neighbors(v);
    Signature sig(nbrs.begin(), nbrs.end());
    auto [it, inserted] = classes_.try_emplace(std::move(sig));
    if (inserted) it->second.created_seq = next_seq_++;
    it->second.members.push_back(v);
  }
  for (auto it = classes_.begin(); it != classes_.end();)
    it = it->second.members.empty() ? classes_.erase(it) : std::next(it);

  // Fresh classes first, in order of first appearance.
  const ClassStats* chosen = nullptr;
  const Signature* chosen_sig = nullptr;
  for (const auto& [sig, stats] : classes_) {
    if (stats.pulls != 0) continue;
    if (!chosen || stats.created_seq < chosen->created_seq) {
      chosen = &stats;
      chosen_sig = &sig;
    }
  }

  if (!chosen) {
    std::int64_t total_pulls = 0;
    for (const auto& [sig, stats] : classes_) total_pulls += stats.pulls;
    double best = -1.0;
    for (const auto& [sig, stats] : classes_) {
      const double mean = stats.payoff_sum / static_cast<double>(stats.pulls);
      const double bonus = std::sqrt(2.0 * std::log(static_cast<double>(total_pulls)) /
                                     static_cast<double>(stats.pulls));
      const double index = mean + bonus;
      if (index > best) {
        best = index;
        chosen = &stats;
        chosen_sig = &sig;
      }
    }
  }

  last_selected_ = *chosen_sig;
  pending_update_ = true;
  return chosen->members[uniform_index(rng, chosen->members.size())];
}

void EquivClassBandit::update(double payoff) {
  if (!pending_update_) throw ContractViolation("snucb1: update without a pending selection");
  pending_update_ = false;
  auto it = classes_.find(last_selected_);
  if (it == classes_.end()) return;  // class vanished with its last member
  it->second.pulls += 1;
  it->second.payoff_sum += payoff;
}

}  // namespace harvest
