#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "harvest/rng.hpp"

namespace harvest {

struct ForestParams {
  int n_trees = 100;
  int mtry = 0;       // candidate features per split; 0 = floor(sqrt(d))
  int min_split = 5;  // smallest node eligible for splitting
  int max_depth = 0;  // 0 = unbounded
};

/// Bootstrap-aggregated CART trees with the Gini split criterion. Each tree
/// draws its RNG from (seed, tree_index), so fitting is deterministic and
/// independent of how many threads build trees. Score is the fraction of
/// trees voting target.
class Forest {
 public:
  /// Fits on raw rows. With fewer rows than min_split the forest collapses
  /// to a single leaf returning the class rate.
  static Forest fit(const std::vector<std::vector<double>>& rows,
                    const std::vector<std::uint8_t>& labels, const ForestParams& params,
                    std::uint64_t seed, bool parallel = true);

  double score(std::span<const double> features) const;
  bool is_constant() const { return constant_; }
  std::size_t tree_count() const { return trees_.size(); }

  struct Node {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::uint8_t vote = 0;      // leaf: strict-majority class
  };
  using Tree = std::vector<Node>;
  const std::vector<Tree>& trees() const { return trees_; }

 private:
  std::vector<Tree> trees_;
  bool constant_ = false;
  double constant_rate_ = 0.0;
};

}  // namespace harvest
