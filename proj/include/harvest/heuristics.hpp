#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "harvest/observed.hpp"
#include "harvest/rng.hpp"

namespace harvest {

/// Maximum Observed Degree score: the number of queried target neighbors of
/// a border node. Throws ContractViolation if node is not in B.
int mod_score(const ObservedState& state, NodeId node);

struct PropagationConfig {
  double virtual_weight = 1.0;  // pull of a queried node's own label
  double tol = 1e-6;            // max per-node change at convergence
  int max_iters = 500;
  double prior = 0.0;           // initial value for every node
};

struct PropagationResult {
  std::vector<double> score;  // indexed by node id; meaningful on Q and B
  bool converged = false;
  int iterations = 0;
};

/// Label propagation on the observed graph. Each queried node is anchored to
/// its label through a virtual neighbor of weight w0; iteration repeats
///   f(v) <- (sum of neighbor f + w0*y_v*[v queried]) / (deg(v) + w0*[v queried])
/// until the largest per-node change drops below tol. The fixed point solves
/// the corresponding linear system, so the result is independent of sweep
/// order. Jacobi sweeps are OpenMP-parallel; bit-identical to the serial
/// reference below.
PropagationResult as_propagate(const ObservedState& state, const PropagationConfig& cfg);

/// Serial reference for as_propagate, kept for tests and benchmarks.
PropagationResult as_propagate_serial(const ObservedState& state, const PropagationConfig& cfg);

/// SN-UCB1: border nodes sharing the exact same set of queried neighbors
/// form one volatile equivalence class. Classes are rebuilt from the border
/// every step; a class whose signature has never been pulled is tried first
/// (FIFO by first appearance), after which UCB1 indices decide. Statistics
/// die with their signature: a split produces fresh classes.
class EquivClassBandit {
 public:
  /// Picks the next node to query. Throws BorderExhausted on an empty border.
  NodeId select(const ObservedState& state, Rng& rng);
  /// Reports the payoff of the node returned by the last select().
  void update(double payoff);

  std::size_t class_count() const { return classes_.size(); }

 private:
  struct ClassStats {
    std::uint64_t created_seq = 0;
    std::int64_t pulls = 0;
    double payoff_sum = 0.0;
    std::vector<NodeId> members;  // rebuilt each step
  };
  using Signature = std::vector<NodeId>;  // sorted queried-neighbor set

  std::map<Signature, ClassStats> classes_;
  std::uint64_t next_seq_ = 0;
  Signature last_selected_;
  bool pending_update_ = false;
};

}  // namespace harvest
