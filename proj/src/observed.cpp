#include "harvest/observed.hpp"

#include <algorithm>
#include <string>

#include "harvest/errors.hpp"

namespace harvest {

namespace {

void insert_sorted(std::vector<NodeId>& v, NodeId x) {
  v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

}  // namespace

std::uint8_t ObservedState::known_label(NodeId v) const {
  if (v >= labels_.size() || labels_[v] < 0)
    throw ContractViolation("label of node " + std::to_string(v) + " is not observed");
  return static_cast<std::uint8_t>(labels_[v]);
}

const SparseVec& ObservedState::known_attributes(NodeId v) const {
  if (v >= attrs_.size() || attrs_[v] == nullptr)
    throw ContractViolation("attributes of node " + std::to_string(v) + " are not observed");
  return *attrs_[v];
}

// Shared mechanics of seeding and querying: move `node` into Q, record its
// label/attributes, connect it to every observed neighbor, and push unseen
// neighbors into the border.
void ObservedState::reveal(const HiddenGraph& hidden, NodeId node) {
  if (const auto pos = border_pos_[node]; pos >= 0) {
    const NodeId last = border_.back();
    border_[static_cast<std::size_t>(pos)] = last;
    border_pos_[last] = pos;
    border_.pop_back();
    border_pos_[node] = -1;
  }
  in_queried_[node] = 1;
  queried_order_.push_back(node);
  labels_[node] = static_cast<std::int8_t>(hidden.labels[node]);
  attrs_[node] = &hidden.attrs[node];

  for (NodeId w : hidden.adj[node]) {
    if (in_queried_[w]) continue;  // edge already observed when w was queried
    if (border_pos_[w] < 0) {
      border_pos_[w] = static_cast<std::int32_t>(border_.size());
      border_.push_back(w);
    }
    // node is now queried, so node-w is a Q-B edge and becomes visible.
    insert_sorted(observed_adj_[node], w);
    insert_sorted(observed_adj_[w], node);
  }
}

ObservedState init_state(const HiddenGraph& hidden, const std::vector<NodeId>& seeds) {
  if (seeds.empty()) throw ValidationError("init_state: seed list is empty");
  const std::size_t n = hidden.node_count();
  ObservedState st;
  st.in_queried_.assign(n, 0);
  st.border_pos_.assign(n, -1);
  st.observed_adj_.resize(n);
  st.labels_.assign(n, -1);
  st.attrs_.assign(n, nullptr);
  for (NodeId s : seeds) {
    if (s >= n) throw ValidationError("init_state: unknown seed id " + std::to_string(s));
    if (st.in_queried_[s]) throw ValidationError("init_state: duplicate seed " + std::to_string(s));
    st.reveal(hidden, s);
  }
  return st;
}

QueryResult query(ObservedState& state, const HiddenGraph& hidden, NodeId node) {
  if (state.border_.empty()) throw BorderExhausted("query: border set is empty");
  if (node >= state.node_count() || !state.is_border(node))
    throw ContractViolation("query: node " + std::to_string(node) + " is not in the border set");

  const std::size_t border_before = state.border_.size();
  state.reveal(hidden, node);

  QueryResult res;
  res.node = node;
  res.label = hidden.labels[node];
  res.attributes = &hidden.attrs[node];
  // reveal() appends new border members past the slot vacated by `node`.
  for (std::size_t i = border_before - 1; i < state.border_.size(); ++i)
    res.revealed_neighbors.push_back(state.border_[i]);
  return res;
}

void validate_state(const ObservedState& state, const HiddenGraph& hidden) {
  const std::size_t n = hidden.node_count();
  auto fail = [](const std::string& msg) { throw ValidationError("state invariant: " + msg); };

  if (state.node_count() != n) fail("node count mismatch with hidden graph");
  std::size_t queried_seen = 0;
  for (NodeId v = 0; v < n; ++v) {
    const bool q = state.is_queried(v);
    const bool b = state.is_border(v);
    if (q && b) fail("node " + std::to_string(v) + " is in both Q and B");
    queried_seen += q;

    if (q) {
      if (state.known_label(v) != hidden.labels[v])
        fail("label of queried node " + std::to_string(v) + " is wrong");
      if (&state.known_attributes(v) != &hidden.attrs[v])
        fail("attributes of queried node " + std::to_string(v) + " are wrong");
    }

    const auto nbrs = state.observed_neighbors(v);
    if (!q && !b && !nbrs.empty()) fail("unobserved node " + std::to_string(v) + " has edges");
    if (!std::is_sorted(nbrs.begin(), nbrs.end())) fail("adjacency list not sorted");
    if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end()) fail("duplicate edge");
    for (NodeId u : nbrs) {
      if (u == v) fail("self loop");
      if (!std::binary_search(hidden.adj[v].begin(), hidden.adj[v].end(), u))
        fail("observed edge absent from hidden graph");
      if (b && state.is_border(u)) fail("border-border edge is visible");
      if (!state.is_queried(u) && !state.is_border(u)) fail("edge endpoint outside Q union B");
      const auto back = state.observed_neighbors(u);
      if (!std::binary_search(back.begin(), back.end(), v)) fail("asymmetric observed edge");
    }
    if (b) {
      bool has_queried_neighbor = false;
      for (NodeId u : nbrs) has_queried_neighbor |= state.is_queried(u);
      if (!has_queried_neighbor) fail("border node without queried neighbor");
    }
  }
  if (queried_seen != state.queried_order().size()) fail("|Q| != t");

  // Completeness: every hidden edge whose endpoints are both queried, or
  // queried-to-border, must be observed.
  for (NodeId v = 0; v < n; ++v) {
    if (!state.is_queried(v)) continue;
    for (NodeId u : hidden.adj[v]) {
      if (state.is_queried(u) || state.is_border(u)) {
        const auto nbrs = state.observed_neighbors(v);
        if (!std::binary_search(nbrs.begin(), nbrs.end(), u))
          fail("missing observed edge " + std::to_string(v) + "-" + std::to_string(u));
      }
    }
  }
}

}  // namespace harvest
