#include "harvest/features.hpp"

#include <algorithm>
#include <cmath>

#include "harvest/errors.hpp"

namespace harvest {

std::vector<double> FeatureVector::flatten() const {
  std::vector<double> row;
  row.reserve(kBaseFeatureCount + attr_blend.size());
  row.push_back(observed_degree);
  row.push_back(observed_triangles);
  row.push_back(num_target_neighbors);
  row.push_back(frac_target_neighbors);
  row.push_back(num_tri_two_target);
  row.push_back(frac_tri_two_target);
  row.push_back(num_tri_two_nontarget);
  row.push_back(frac_tri_two_nontarget);
  row.push_back(num_nbrs_mostly_target);
  row.push_back(frac_nbrs_mostly_target);
  row.push_back(rw2_payoff);
  row.insert(row.end(), attr_blend.begin(), attr_blend.end());
  return row;
}

std::vector<std::string> FeatureVector::names(AttrId attr_dim) {
  std::vector<std::string> n = {
      "observed_degree",      "observed_triangles",    "num_target_neighbors",
      "frac_target_neighbors", "num_tri_two_target",   "frac_tri_two_target",
      "num_tri_two_nontarget", "frac_tri_two_nontarget", "num_nbrs_mostly_target",
      "frac_nbrs_mostly_target", "rw2_payoff"};
  for (AttrId a = 0; a < attr_dim; ++a) n.push_back("attr_blend_" + std::to_string(a));
  return n;
}

namespace {

bool observed_edge(const ObservedState& st, NodeId u, NodeId v) {
  const auto nu = st.observed_neighbors(u);
  const auto nv = st.observed_neighbors(v);
  const auto& shorter = nu.size() <= nv.size() ? nu : nv;
  const NodeId other = nu.size() <= nv.size() ? v : u;
  return std::binary_search(shorter.begin(), shorter.end(), other);
}

double ratio(double num, double den) { return den > 0 ? num / den : 0.0; }

}  // namespace

FeatureVector extract(const ObservedState& state, NodeId node, AttrId attr_dim) {
  if (!state.is_border(node))
    throw ContractViolation("extract: node " + std::to_string(node) + " is not a border node");

  FeatureVector f;
  f.attr_blend.assign(attr_dim, 0.0);
  const auto nbrs = state.observed_neighbors(node);  // all queried, node is in B
  const double deg = static_cast<double>(nbrs.size());
  f.observed_degree = deg;

  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    const NodeId v = nbrs[i];
    const bool v_target = state.known_label(v) != 0;
    f.num_target_neighbors += v_target;

    // Triangle census over neighbor pairs.
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      const NodeId w = nbrs[j];
      if (!observed_edge(state, v, w)) continue;
      f.observed_triangles += 1;
      const bool w_target = state.known_label(w) != 0;
      if (v_target && w_target) f.num_tri_two_target += 1;
      if (!v_target && !w_target) f.num_tri_two_nontarget += 1;
    }

    // Is v mostly surrounded by targets? Only v's queried neighbors count,
    // and "mostly" means a strict majority.
    std::size_t v_known = 0, v_known_targets = 0;
    for (NodeId w : state.observed_neighbors(v)) {
      if (!state.is_queried(w)) continue;
      ++v_known;
      v_known_targets += state.known_label(w);
    }
    if (2 * v_known_targets > v_known) f.num_nbrs_mostly_target += 1;

    for (const auto& [a, x] : state.known_attributes(v))
      if (a < attr_dim) f.attr_blend[a] += x;
  }

  f.frac_target_neighbors = ratio(f.num_target_neighbors, deg);
  f.frac_tri_two_target = ratio(f.num_tri_two_target, f.observed_triangles);
  f.frac_tri_two_nontarget = ratio(f.num_tri_two_nontarget, f.observed_triangles);
  f.frac_nbrs_mostly_target = ratio(f.num_nbrs_mostly_target, deg);
  if (deg > 0)
    for (double& x : f.attr_blend) x /= deg;
  f.rw2_payoff = rw2_feature(state, node);
  return f;
}

double rw2_feature(const ObservedState& state, NodeId node) {
  if (!state.is_border(node))
    throw ContractViolation("rw2_feature: node " + std::to_string(node) + " is not a border node");
  // Walks node -> v -> w with both edges observed and w queried. The first
  // hop lands on a queried v (border nodes have no visible edges between
  // them), the second hop may touch any observed neighbor of v, and only
  // queried endpoints w count toward the walk total.
  std::size_t walks = 0, target_walks = 0;
  for (NodeId v : state.observed_neighbors(node)) {
    for (NodeId w : state.observed_neighbors(v)) {
      if (!state.is_queried(w)) continue;
      ++walks;
      target_walks += state.known_label(w);
    }
  }
  return walks > 0 ? static_cast<double>(target_walks) / static_cast<double>(walks) : 0.0;
}

std::vector<std::vector<double>> extract_border_serial(const ObservedState& state,
                                                       AttrId attr_dim) {
  const auto& border = state.border();
  std::vector<std::vector<double>> rows(border.size());
  for (std::size_t i = 0; i < border.size(); ++i)
    rows[i] = extract(state, border[i], attr_dim).flatten();
  return rows;
}

std::vector<std::vector<double>> extract_border(const ObservedState& state, AttrId attr_dim) {
  const auto& border = state.border();
  std::vector<std::vector<double>> rows(border.size());
  // Each row is an independent pure function of the state.
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < border.size(); ++i)
    rows[i] = extract(state, border[i], attr_dim).flatten();
  return rows;
}

Standardizer Standardizer::fit(const std::vector<std::vector<double>>& rows) {
  Standardizer s;
  if (rows.empty()) return s;
  const std::size_t d = rows[0].size();
  s.mean.assign(d, 0.0);
  s.stddev.assign(d, 1.0);
  for (const auto& r : rows)
    for (std::size_t j = 0; j < d; ++j) s.mean[j] += r[j];
  for (double& m : s.mean) m /= static_cast<double>(rows.size());
  std::vector<double> var(d, 0.0);
  for (const auto& r : rows)
    for (std::size_t j = 0; j < d; ++j) {
      const double c = r[j] - s.mean[j];
      var[j] += c * c;
    }
  for (std::size_t j = 0; j < d; ++j) {
    const double sd = std::sqrt(var[j] / static_cast<double>(rows.size()));
    if (sd > kStdFloor) s.stddev[j] = sd;
  }
  return s;
}

std::vector<double> Standardizer::transform(const std::vector<double>& row) const {
  std::vector<double> out = row;
  transform_in_place(out);
  return out;
}

void Standardizer::transform_in_place(std::vector<double>& row) const {
  for (std::size_t j = 0; j < row.size() && j < mean.size(); ++j)
    row[j] = (row[j] - mean[j]) / stddev[j];
}

FeatureMatrix build_matrix(const std::vector<std::vector<double>>& training_rows,
                           const std::vector<std::vector<double>>& border_rows) {
  if (training_rows.empty()) throw ContractViolation("build_matrix: no training rows");
  FeatureMatrix m;
  m.scaler = Standardizer::fit(training_rows);
  m.training = training_rows;
  m.border = border_rows;
  for (auto& r : m.training) m.scaler.transform_in_place(r);
  for (auto& r : m.border) m.scaler.transform_in_place(r);
  return m;
}

}  // namespace harvest
