#include "harvest/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "harvest/errors.hpp"

namespace harvest {

namespace {

struct SplitChoice {
  bool found = false;
  std::int32_t feature = -1;
  double threshold = 0.0;
  double gain = -1.0;
};

double gini(std::size_t pos, std::size_t n) {
  if (n == 0) return 0.0;
  const double p = static_cast<double>(pos) / static_cast<double>(n);
  return 2.0 * p * (1.0 - p);
}

struct TreeBuilder {
  const std::vector<std::vector<double>>& rows;
  const std::vector<std::uint8_t>& labels;
  const ForestParams& params;
  int mtry;
  Rng rng;
  Forest::Tree tree;

  // Finds the Gini-optimal (feature, threshold) over mtry sampled features.
  // Impure nodes accept zero-gain splits: each split strictly shrinks both
  // children, so recursion still terminates, and interactions invisible to
  // a single feature (parity-style data) remain learnable.
  SplitChoice best_split(std::vector<std::uint32_t>& idx, std::size_t pos) {
    const std::size_t n = idx.size();
    const double parent = gini(pos, n);

    const int d = static_cast<int>(rows[0].size());
    std::vector<int> feats(d);
    std::iota(feats.begin(), feats.end(), 0);
    for (int i = 0; i < mtry; ++i) {
      const std::size_t j = i + uniform_index(rng, static_cast<std::size_t>(d - i));
      std::swap(feats[static_cast<std::size_t>(i)], feats[j]);
    }

    SplitChoice best;
    std::vector<std::pair<double, std::uint8_t>> vals(n);
    for (int fi = 0; fi < mtry; ++fi) {
      const int f = feats[static_cast<std::size_t>(fi)];
      for (std::size_t i = 0; i < n; ++i)
        vals[i] = {rows[idx[i]][static_cast<std::size_t>(f)], labels[idx[i]]};
      std::sort(vals.begin(), vals.end());
      std::size_t left_n = 0, left_pos = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        ++left_n;
        left_pos += vals[i].second;
        if (vals[i].first == vals[i + 1].first) continue;  // no boundary here
        const std::size_t right_n = n - left_n;
        const std::size_t right_pos = pos - left_pos;
        const double child =
            (static_cast<double>(left_n) * gini(left_pos, left_n) +
             static_cast<double>(right_n) * gini(right_pos, right_n)) /
            static_cast<double>(n);
        const double gain = parent - child;
        if (gain > best.gain) {
          best.found = true;
          best.feature = f;
          best.threshold = 0.5 * (vals[i].first + vals[i + 1].first);
          best.gain = gain;
        }
      }
    }
    if (best.found && best.gain < -1e-12) best.found = false;
    return best;
  }

  std::int32_t build(std::vector<std::uint32_t> idx, int depth) {
    const std::size_t n = idx.size();
    std::size_t pos = 0;
    for (auto i : idx) pos += labels[i];

    const std::int32_t id = static_cast<std::int32_t>(tree.size());
    tree.emplace_back();
    tree[static_cast<std::size_t>(id)].vote = 2 * pos > n ? 1 : 0;

    const bool pure = pos == 0 || pos == n;
    const bool too_small = n < static_cast<std::size_t>(params.min_split);
    const bool too_deep = params.max_depth > 0 && depth >= params.max_depth;
    if (pure || too_small || too_deep) return id;

    const SplitChoice split = best_split(idx, pos);
    if (!split.found) return id;

    std::vector<std::uint32_t> left, right;
    for (auto i : idx)
      (rows[i][static_cast<std::size_t>(split.feature)] <= split.threshold ? left : right)
          .push_back(i);
    idx.clear();
    idx.shrink_to_fit();

    tree[static_cast<std::size_t>(id)].feature = split.feature;
    tree[static_cast<std::size_t>(id)].threshold = split.threshold;
    const std::int32_t l = build(std::move(left), depth + 1);
    tree[static_cast<std::size_t>(id)].left = l;
    const std::int32_t r = build(std::move(right), depth + 1);
    tree[static_cast<std::size_t>(id)].right = r;
    return id;
  }
};

Forest::Tree fit_tree(const std::vector<std::vector<double>>& rows,
                      const std::vector<std::uint8_t>& labels, const ForestParams& params,
                      int mtry, std::uint64_t tree_seed) {
  Rng rng(tree_seed);
  const std::size_t n = rows.size();
  std::vector<std::uint32_t> sample(n);
  for (auto& s : sample) s = static_cast<std::uint32_t>(uniform_index(rng, n));
  TreeBuilder builder{rows, labels, params, mtry, std::move(rng), {}};
  builder.build(std::move(sample), 0);
  return std::move(builder.tree);
}

std::uint8_t tree_vote(const Forest::Tree& tree, std::span<const double> x) {
  std::int32_t at = 0;
  while (tree[static_cast<std::size_t>(at)].feature >= 0) {
    const auto& node = tree[static_cast<std::size_t>(at)];
    at = x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
  }
  return tree[static_cast<std::size_t>(at)].vote;
}

}  // namespace

Forest Forest::fit(const std::vector<std::vector<double>>& rows,
                   const std::vector<std::uint8_t>& labels, const ForestParams& params,
                   std::uint64_t seed, bool parallel) {
  if (rows.size() != labels.size() || rows.empty())
    throw ContractViolation("forest: rows and labels must be non-empty and aligned");
  if (params.n_trees <= 0) throw ContractViolation("forest: n_trees must be positive");

  Forest forest;
  if (rows.size() < static_cast<std::size_t>(params.min_split)) {
    std::size_t pos = 0;
    for (auto y : labels) pos += y;
    forest.constant_ = true;
    forest.constant_rate_ = static_cast<double>(pos) / static_cast<double>(labels.size());
    return forest;
  }

  const int d = static_cast<int>(rows[0].size());
  const int mtry = params.mtry > 0
                       ? std::min(params.mtry, d)
                       : std::max(1, static_cast<int>(std::floor(std::sqrt(double(d)))));

  forest.trees_.resize(static_cast<std::size_t>(params.n_trees));
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < params.n_trees; ++t)
      forest.trees_[static_cast<std::size_t>(t)] =
          fit_tree(rows, labels, params, mtry, mix_seed(seed, static_cast<std::uint64_t>(t)));
  } else {
    for (int t = 0; t < params.n_trees; ++t)
      forest.trees_[static_cast<std::size_t>(t)] =
          fit_tree(rows, labels, params, mtry, mix_seed(seed, static_cast<std::uint64_t>(t)));
  }
  return forest;
}

double Forest::score(std::span<const double> features) const {
  if (constant_) return constant_rate_;
  std::size_t votes = 0;
  for (const auto& tree : trees_) votes += tree_vote(tree, features);
  return static_cast<double>(votes) / static_cast<double>(trees_.size());
}

}  // namespace harvest
