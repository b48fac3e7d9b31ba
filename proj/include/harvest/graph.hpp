#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace harvest {

using NodeId = std::uint32_t;
using AttrId = std::uint32_t;

/// Sparse attribute vector, sorted by attribute index; omitted entries are 0.
using SparseVec = std::vector<std::pair<AttrId, double>>;

/// Bidirectional map between external node keys and dense internal ids.
class IdMap {
 public:
  NodeId intern(const std::string& name);
  std::optional<NodeId> find(const std::string& name) const;
  const std::string& name(NodeId id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
};

/// The full ground-truth network. Visible only to the query oracle; search
/// code sees it exclusively through ObservedState. Immutable after load and
/// safe to share read-only across concurrent runs.
struct HiddenGraph {
  IdMap ids;
  std::vector<std::vector<NodeId>> adj;  // sorted, symmetric, simple
  std::vector<std::uint8_t> labels;      // one per node, in {0,1}
  std::vector<SparseVec> attrs;          // sorted by attribute index
  AttrId attr_dim = 0;

  std::size_t node_count() const { return labels.size(); }
  std::size_t edge_count() const;
  std::size_t target_count() const;
  std::vector<NodeId> targets() const;

  /// Structural digest over nodes, edges, labels and attributes. Used to
  /// check that record/replay traces refer to the same hidden graph.
  std::uint64_t fingerprint() const;
};

struct LoadStats {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicate_edges_dropped = 0;
  std::size_t comment_lines = 0;
};

/// Reads the three-file dataset format (see README). The labels file defines
/// the node universe; nodes absent from the edges file are kept as isolated
/// nodes. attrs_path may be empty (no attributes, M = 0).
HiddenGraph load_graph(const std::filesystem::path& edges_path,
                       const std::filesystem::path& labels_path,
                       const std::filesystem::path& attrs_path = {},
                       LoadStats* stats = nullptr);

/// Writes a graph back out in the loadable three-file format.
void save_graph(const HiddenGraph& g, const std::filesystem::path& edges_path,
                const std::filesystem::path& labels_path,
                const std::filesystem::path& attrs_path);

struct SynthParams {
  std::uint32_t n = 1000;
  double target_fraction = 0.1;
  double p_in = 0.02;       // same-block edge probability
  double p_out = 0.002;     // cross-block edge probability
  std::uint32_t attr_dim = 8;
  double attr_flip = 0.2;   // per-entry noise on the label prototype
  std::uint64_t seed = 1;
};

/// Planted two-block graph with label-correlated binary attributes.
/// Pure function of the parameter set (same seed, same graph).
HiddenGraph synth_generate(const SynthParams& p);

}  // namespace harvest
