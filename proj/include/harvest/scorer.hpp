#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "harvest/features.hpp"
#include "harvest/observed.hpp"
#include "harvest/rng.hpp"

namespace harvest {

/// One training example: the raw (pre-standardization) feature row of the
/// queried node at decision time and its revealed label.
struct Observation {
  std::vector<double> features;
  std::uint8_t label = 0;
};

/// A fitted model mapping border nodes to payoff scores; higher means more
/// likely target. Scorers receive raw feature rows and handle intercepts and
/// standardization internally, so every implementation is interchangeable
/// behind this contract.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual std::string_view name() const = 0;
  /// Absorbs one training example.
  virtual void update(const Observation& obs) = 0;
  /// Scores one raw feature row. Deterministic given the fitted state.
  virtual double score(std::span<const double> features) const = 0;
};

/// Fallback for degenerate (single-class) training data: a constant score.
class PriorScorer final : public Scorer {
 public:
  explicit PriorScorer(double rate) : rate_(rate) {}
  std::string_view name() const override { return "prior"; }
  void update(const Observation&) override {}
  double score(std::span<const double>) const override { return rate_; }

 private:
  double rate_;
};

/// Index of the maximal score; ties broken uniformly at random.
std::size_t argmax_with_ties(std::span<const double> scores, Rng& rng);

/// The border node the scorer ranks highest, ties broken uniformly at
/// random. border_rows are raw feature rows aligned with state.border().
NodeId rank_border(const ObservedState& state, const Scorer& scorer,
                   const std::vector<std::vector<double>>& border_rows, Rng& rng);

}  // namespace harvest
