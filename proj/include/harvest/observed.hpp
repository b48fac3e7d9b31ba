#pragma once

#include <span>
#include <vector>

#include "harvest/graph.hpp"

namespace harvest {

/// What one oracle query reveals.
struct QueryResult {
  NodeId node;
  std::uint8_t label;
  const SparseVec* attributes;            // borrowed from the hidden graph
  std::vector<NodeId> revealed_neighbors; // nodes that just entered the border
};

/// The searcher's view after t queries: the queried set Q, the border set B
/// (unqueried neighbors of Q) and the observed graph, which contains every
/// edge inside Q plus edges from Q to B -- never an edge between two border
/// nodes. Labels and attributes are stored for queried nodes only, so code
/// consuming this type cannot read ground truth it should not see.
///
/// Single-owner: one run mutates one state sequentially. Read-only access is
/// safe to share within a step (feature extraction parallelizes over border
/// nodes). Borrows attribute storage from the HiddenGraph it was built from.
class ObservedState {
 public:
  std::size_t step() const { return queried_order_.size(); }
  std::size_t node_count() const { return observed_adj_.size(); }

  bool is_queried(NodeId v) const { return in_queried_[v] != 0; }
  bool is_border(NodeId v) const { return border_pos_[v] >= 0; }

  /// Queried nodes in query order (seeds first).
  const std::vector<NodeId>& queried_order() const { return queried_order_; }

  /// Current border set; order is deterministic given the query sequence.
  const std::vector<NodeId>& border() const { return border_; }

  /// Neighbors of v in the observed graph, sorted. For a border node these
  /// are exactly its known queried neighbors.
  std::span<const NodeId> observed_neighbors(NodeId v) const { return observed_adj_[v]; }

  /// Label of a queried node. Throws ContractViolation for anything else.
  std::uint8_t known_label(NodeId v) const;

  /// Attributes of a queried node. Throws ContractViolation for anything else.
  const SparseVec& known_attributes(NodeId v) const;

 private:
  ObservedState() = default;
  void reveal(const HiddenGraph& hidden, NodeId node);

  std::vector<NodeId> queried_order_;
  std::vector<std::uint8_t> in_queried_;
  std::vector<NodeId> border_;
  std::vector<std::int32_t> border_pos_;  // index into border_, -1 if absent
  std::vector<std::vector<NodeId>> observed_adj_;
  std::vector<std::int8_t> labels_;       // -1 until revealed
  std::vector<const SparseVec*> attrs_;   // nullptr until revealed

  friend ObservedState init_state(const HiddenGraph&, const std::vector<NodeId>&);
  friend QueryResult query(ObservedState&, const HiddenGraph&, NodeId);
};

/// Builds the t = |seeds| state: seeds are pre-queried, their unqueried
/// neighbors form the initial border.
ObservedState init_state(const HiddenGraph& hidden, const std::vector<NodeId>& seeds);

/// Queries one border node: moves it into Q, reveals its label/attributes,
/// extends the border with its unseen neighbors, and adds its edges to all
/// observed nodes. Edges between the remaining border nodes stay hidden.
QueryResult query(ObservedState& state, const HiddenGraph& hidden, NodeId node);

/// Checks every ObservedState invariant against the hidden graph; throws
/// ValidationError with a description on the first violation.
void validate_state(const ObservedState& state, const HiddenGraph& hidden);

}  // namespace harvest
