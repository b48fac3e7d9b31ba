#include "harvest/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "harvest/errors.hpp"
#include "harvest/rng.hpp"

namespace harvest {

NodeId IdMap::intern(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  const NodeId id = static_cast<NodeId>(names_.size());
  names_.push_back(name);
  index_.emplace(name, id);
  return id;
}

std::optional<NodeId> IdMap::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t HiddenGraph::edge_count() const {
  std::size_t deg_sum = 0;
  for (const auto& nbrs : adj) deg_sum += nbrs.size();
  return deg_sum / 2;
}

std::size_t HiddenGraph::target_count() const {
  std::size_t c = 0;
  for (auto y : labels) c += y;
  return c;
}

std::vector<NodeId> HiddenGraph::targets() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < labels.size(); ++v)
    if (labels[v]) out.push_back(v);
  return out;
}

std::uint64_t HiddenGraph::fingerprint() const {
  // FNV-1a over the structure, independent of external key spellings.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(labels.size());
  mix(attr_dim);
  for (NodeId v = 0; v < labels.size(); ++v) {
    mix(labels[v]);
    for (NodeId u : adj[v])
      if (u > v) mix((std::uint64_t(v) << 32) | u);
    for (const auto& [a, x] : attrs[v]) {
      mix((std::uint64_t(v) << 32) | a);
      std::uint64_t bits;
      static_assert(sizeof(bits) == sizeof(x));
      std::memcpy(&bits, &x, sizeof(bits));
      mix(bits);
    }
  }
  return h;
}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> fields;
};

// Tab-separated reader; '#' lines are comments, blank lines skipped.
template <typename Fn>
void for_each_line(const std::filesystem::path& path, std::size_t expect_fields,
                   std::size_t* comments, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (comments) ++*comments;
      continue;
    }
    Line l{lineno, {}};
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      l.fields.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (l.fields.size() != expect_fields)
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(expect_fields) + " tab-separated fields, got " +
                       std::to_string(l.fields.size()));
    fn(l);
  }
}

double parse_double(const std::string& s, const std::filesystem::path& path, std::size_t lineno) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(path.string() + ":" + std::to_string(lineno) + ": bad number '" + s + "'");
  }
}

std::uint64_t parse_uint(const std::string& s, const std::filesystem::path& path,
                         std::size_t lineno) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ParseError(path.string() + ":" + std::to_string(lineno) + ": bad integer '" + s + "'");
  return v;
}

}  // namespace

HiddenGraph load_graph(const std::filesystem::path& edges_path,
                       const std::filesystem::path& labels_path,
                       const std::filesystem::path& attrs_path, LoadStats* stats) {
  LoadStats local;
  HiddenGraph g;

  // Labels first: they define the node universe.
  for_each_line(labels_path, 2, &local.comment_lines, [&](const Line& l) {
    const NodeId id = g.ids.intern(l.fields[0]);
    if (id < g.labels.size())
      throw ValidationError(labels_path.string() + ":" + std::to_string(l.number) +
                            ": duplicate label for node '" + l.fields[0] + "'");
    const std::uint64_t y = parse_uint(l.fields[1], labels_path, l.number);
    if (y > 1)
      throw ValidationError(labels_path.string() + ":" + std::to_string(l.number) +
                            ": label must be 0 or 1, got " + l.fields[1]);
    g.labels.push_back(static_cast<std::uint8_t>(y));
  });
  if (g.labels.empty()) throw ValidationError(labels_path.string() + ": no labeled nodes");

  g.adj.resize(g.labels.size());
  g.attrs.resize(g.labels.size());

  auto resolve = [&](const std::string& key, const std::filesystem::path& path,
                     std::size_t lineno) -> NodeId {
    const auto id = g.ids.find(key);
    if (!id)
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": node '" + key +
                            "' has no entry in the labels file");
    return *id;
  };

  for_each_line(edges_path, 2, &local.comment_lines, [&](const Line& l) {
    const NodeId u = resolve(l.fields[0], edges_path, l.number);
    const NodeId v = resolve(l.fields[1], edges_path, l.number);
    if (u == v) {
      ++local.self_loops_dropped;
      return;
    }
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  });

  for (auto& nbrs : g.adj) {
    std::sort(nbrs.begin(), nbrs.end());
    const auto last = std::unique(nbrs.begin(), nbrs.end());
    local.duplicate_edges_dropped += static_cast<std::size_t>(nbrs.end() - last) ;
    nbrs.erase(last, nbrs.end());
  }
  local.duplicate_edges_dropped /= 2;  // counted once per endpoint

  if (!attrs_path.empty()) {
    for_each_line(attrs_path, 3, &local.comment_lines, [&](const Line& l) {
      const NodeId v = resolve(l.fields[0], attrs_path, l.number);
      const AttrId a = static_cast<AttrId>(parse_uint(l.fields[1], attrs_path, l.number));
      const double x = parse_double(l.fields[2], attrs_path, l.number);
      g.attrs[v].emplace_back(a, x);
      g.attr_dim = std::max(g.attr_dim, a + 1);
    });
    for (auto& row : g.attrs) std::sort(row.begin(), row.end());
  }

  if (stats) *stats = local;
  return g;
}

void save_graph(const HiddenGraph& g, const std::filesystem::path& edges_path,
                const std::filesystem::path& labels_path,
                const std::filesystem::path& attrs_path) {
  std::ofstream labels(labels_path);
  if (!labels) throw ValidationError("cannot write " + labels_path.string());
  for (NodeId v = 0; v < g.node_count(); ++v)
    labels << g.ids.name(v) << '\t' << int(g.labels[v]) << '\n';

  std::ofstream edges(edges_path);
  if (!edges) throw ValidationError("cannot write " + edges_path.string());
  for (NodeId v = 0; v < g.node_count(); ++v)
    for (NodeId u : g.adj[v])
      if (v < u) edges << g.ids.name(v) << '\t' << g.ids.name(u) << '\n';

  std::ofstream attrs(attrs_path);
  if (!attrs) throw ValidationError("cannot write " + attrs_path.string());
  std::ostringstream num;
  for (NodeId v = 0; v < g.node_count(); ++v)
    for (const auto& [a, x] : g.attrs[v]) {
      num.str("");
      num << x;
      attrs << g.ids.name(v) << '\t' << a << '\t' << num.str() << '\n';
    }
}

HiddenGraph synth_generate(const SynthParams& p) {
  if (p.n == 0) throw ValidationError("synth: n must be positive");
  if (!(p.target_fraction > 0.0 && p.target_fraction < 1.0))
    throw ValidationError("synth: target_fraction must lie in (0,1)");
  if (!(p.p_out >= 0.0 && p.p_out <= p.p_in && p.p_in <= 1.0))
    throw ValidationError("synth: need 0 <= p_out <= p_in <= 1");
  if (!(p.attr_flip >= 0.0 && p.attr_flip <= 1.0))
    throw ValidationError("synth: attr_flip must lie in [0,1]");

  HiddenGraph g;
  g.labels.assign(p.n, 0);
  const std::size_t k =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(p.n * p.target_fraction)));
  for (std::size_t i = 0; i < k && i < p.n; ++i) g.labels[i] = 1;

  Rng label_rng(mix_seed(p.seed, 0x5b));
  std::shuffle(g.labels.begin(), g.labels.end(), label_rng);

  for (std::uint32_t v = 0; v < p.n; ++v) g.ids.intern(std::to_string(v));

  g.adj.resize(p.n);
  Rng edge_rng(mix_seed(p.seed, 0xed));
  for (NodeId u = 0; u < p.n; ++u) {
    for (NodeId v = u + 1; v < p.n; ++v) {
      const double prob = (g.labels[u] == g.labels[v]) ? p.p_in : p.p_out;
      if (prob > 0.0 && uniform_real(edge_rng) < prob) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
      }
    }
  }
  for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());

  // Attribute prototype: targets all-ones, non-targets all-zeros; each entry
  // independently flipped with probability attr_flip. Only ones are stored.
  g.attr_dim = p.attr_dim;
  g.attrs.resize(p.n);
  Rng attr_rng(mix_seed(p.seed, 0xa7));
  for (NodeId v = 0; v < p.n; ++v) {
    for (AttrId a = 0; a < p.attr_dim; ++a) {
      bool bit = g.labels[v] != 0;
      if (p.attr_flip > 0.0 && uniform_real(attr_rng) < p.attr_flip) bit = !bit;
      if (bit) g.attrs[v].emplace_back(a, 1.0);
    }
  }
  return g;
}

}  // namespace harvest
