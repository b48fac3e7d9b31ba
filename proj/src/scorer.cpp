#include "harvest/scorer.hpp"

#include "harvest/errors.hpp"

namespace harvest {

std::size_t argmax_with_ties(std::span<const double> scores, Rng& rng) {
  if (scores.empty()) throw ContractViolation("argmax_with_ties: empty score vector");
  double best = scores[0];
  std::size_t count = 1;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > best) {
      best = scores[i];
      count = 1;
    } else if (scores[i] == best) {
      ++count;
    }
  }
  if (count == 1) {
    for (std::size_t i = 0; i < scores.size(); ++i)
      if (scores[i] == best) return i;
  }
  // Pick uniformly among the tied maxima; consumes RNG only on actual ties,
  // which keeps replayed runs aligned with their originals.
  std::size_t pick = uniform_index(rng, count);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] == best && pick-- == 0) return i;
  }
  return scores.size() - 1;  // unreachable
}

NodeId rank_border(const ObservedState& state, const Scorer& scorer,
                   const std::vector<std::vector<double>>& border_rows, Rng& rng) {
  const auto& border = state.border();
  if (border.empty()) throw BorderExhausted("rank_border: border set is empty");
  if (border_rows.size() != border.size())
    throw ContractViolation("rank_border: row count does not match border size");
  std::vector<double> scores(border.size());
  for (std::size_t i = 0; i < border.size(); ++i) scores[i] = scorer.score(border_rows[i]);
  return border[argmax_with_ties(scores, rng)];
}

}  // namespace harvest
