#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "harvest/observed.hpp"

namespace harvest {

/// Number of fixed (non-attribute) feature slots.
inline constexpr std::size_t kBaseFeatureCount = 11;

/// Per-border-node features computed from the observed graph only. Neighbor
/// statistics use queried neighbors exclusively; labels and attributes of
/// border nodes are unknown by construction. Every frac_* is its num_*
/// divided by the stated denominator, with 0/0 defined as 0.
struct FeatureVector {
  double observed_degree = 0;        // queried neighbors of the node
  double observed_triangles = 0;     // triangles closed inside the observed graph
  double num_target_neighbors = 0;
  double frac_target_neighbors = 0;  // / observed_degree
  double num_tri_two_target = 0;     // triangles whose two other corners are targets
  double frac_tri_two_target = 0;    // / observed_triangles
  double num_tri_two_nontarget = 0;
  double frac_tri_two_nontarget = 0;
  double num_nbrs_mostly_target = 0;  // neighbors whose own queried neighbors are >50% targets
  double frac_nbrs_mostly_target = 0; // / observed_degree
  double rw2_payoff = 0;              // expected payoff of a 2-step random walk
  std::vector<double> attr_blend;     // mean attribute value over queried neighbors

  /// Flat row: the 11 fixed slots followed by attr_blend.
  std::vector<double> flatten() const;
  static std::vector<std::string> names(AttrId attr_dim);
  static std::size_t dimension(AttrId attr_dim) { return kBaseFeatureCount + attr_dim; }
};

/// Features of one border node. Throws ContractViolation if node is not in B.
FeatureVector extract(const ObservedState& state, NodeId node, AttrId attr_dim);

/// Expected payoff of a two-step random walk from a border node: the number
/// of length-2 walks u-v-w ending at a queried target divided by the number
/// of length-2 walks u-v-w with w queried; 0 when no such walk exists.
double rw2_feature(const ObservedState& state, NodeId node);

/// Flattened feature rows for every border node, aligned with state.border().
/// OpenMP-parallel over border nodes; bit-identical to the serial reference.
std::vector<std::vector<double>> extract_border(const ObservedState& state, AttrId attr_dim);

/// Serial reference for extract_border, kept for tests and benchmarks.
std::vector<std::vector<double>> extract_border_serial(const ObservedState& state,
                                                       AttrId attr_dim);

/// Column z-scoring fit on training rows. Columns whose standard deviation
/// falls below the floor are centered but not scaled.
struct Standardizer {
  static constexpr double kStdFloor = 1e-9;
  std::vector<double> mean;
  std::vector<double> stddev;  // 1.0 for floored columns

  static Standardizer fit(const std::vector<std::vector<double>>& rows);
  std::vector<double> transform(const std::vector<double>& row) const;
  void transform_in_place(std::vector<double>& row) const;
};

/// Training and border rows under one scaling fit on the training rows only.
struct FeatureMatrix {
  Standardizer scaler;
  std::vector<std::vector<double>> training;
  std::vector<std::vector<double>> border;
};

/// Fits the scaler on training_rows and applies it to both row sets.
FeatureMatrix build_matrix(const std::vector<std::vector<double>>& training_rows,
                           const std::vector<std::vector<double>>& border_rows);

}  // namespace harvest
