// Copyright 2026 The advsgm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "advsgm/graph.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "advsgm/errors.h"
#include "advsgm/numerics.h"

namespace advsgm {
namespace {

// Splits a line into whitespace-separated tokens.
std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos > start) tokens.push_back(line.substr(start, pos - start));
  }
  return tokens;
}

bool IsSkippable(const std::vector<std::string_view>& tokens) {
  return tokens.empty() || tokens.front().front() == '#';
}

std::int64_t ParseInt(std::string_view token, std::size_t line_no) {
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("expected an integer, got '" + std::string(token) + "'",
                     line_no);
  }
  return value;
}

// Reads "x y" integer pairs, invoking `fn(x, y, line_no)` for each.
template <typename Fn>
void ForEachPair(std::istream& in, Fn fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = Tokenize(line);
    if (IsSkippable(tokens)) continue;
    if (tokens.size() != 2) {
      throw ParseError("expected 2 fields, got " + std::to_string(tokens.size()),
                       line_no);
    }
    fn(ParseInt(tokens[0], line_no), ParseInt(tokens[1], line_no), line_no);
  }
}

}  // namespace

Graph Graph::FromEdges(std::size_t num_nodes, std::vector<Edge> edges) {
  for (Edge& e : edges) {
    if (e.u == e.v) {
      throw ValidationError("self-loop on node " + std::to_string(e.u));
    }
    if (e.u >= num_nodes || e.v >= num_nodes) {
      throw ValidationError("edge endpoint out of range");
    }
    e = Canonical(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  g.num_nodes_ = num_nodes;
  g.edges_ = std::move(edges);
  std::vector<std::size_t> degree(num_nodes, 0);
  for (const Edge& e : g.edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  g.offsets_.assign(num_nodes + 1, 0);
  for (std::size_t i = 0; i < num_nodes; ++i) {
    g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  }
  g.adjacency_.resize(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : g.edges_) {
    g.adjacency_[cursor[e.u]++] = e.v;
    g.adjacency_[cursor[e.v]++] = e.u;
  }
  for (std::size_t i = 0; i < num_nodes; ++i) {
    std::sort(g.adjacency_.begin() + g.offsets_[i],
              g.adjacency_.begin() + g.offsets_[i + 1]);
  }
  return g;
}

std::span<const NodeId> Graph::neighbors(NodeId node) const {
  return std::span<const NodeId>(adjacency_).subspan(
      offsets_[node], offsets_[node + 1] - offsets_[node]);
}

bool Graph::HasEdge(NodeId x, NodeId y) const {
  if (x >= num_nodes_ || y >= num_nodes_ || x == y) return false;
  const auto adj = neighbors(x);
  return std::binary_search(adj.begin(), adj.end(), y);
}

std::int64_t Graph::original_id(NodeId node) const {
  return original_ids_.empty() ? static_cast<std::int64_t>(node)
                               : original_ids_[node];
}

std::optional<NodeId> Graph::FindOriginal(std::int64_t original) const {
  if (original_ids_.empty()) {
    if (original < 0 || static_cast<std::size_t>(original) >= num_nodes_) {
      return std::nullopt;
    }
    return static_cast<NodeId>(original);
  }
  const auto it = original_index_.find(original);
  if (it == original_index_.end()) return std::nullopt;
  return it->second;
}

bool Graph::has_labels() const {
  return std::any_of(labels_.begin(), labels_.end(),
                     [](const auto& l) { return l.has_value(); });
}

std::optional<Label> Graph::label(NodeId node) const {
  return labels_.empty() ? std::nullopt : labels_[node];
}

Graph Graph::WithOriginalIds(std::vector<std::int64_t> original_ids) const {
  if (original_ids.size() != num_nodes_) {
    throw ValidationError("id map size does not match node count");
  }
  Graph g = *this;
  g.original_index_.clear();
  for (NodeId i = 0; i < original_ids.size(); ++i) {
    if (!g.original_index_.emplace(original_ids[i], i).second) {
      throw ValidationError("duplicate original id " +
                            std::to_string(original_ids[i]));
    }
  }
  g.original_ids_ = std::move(original_ids);
  return g;
}

Graph Graph::WithLabels(std::vector<std::optional<Label>> labels) const {
  if (!labels.empty() && labels.size() != num_nodes_) {
    throw ValidationError("label vector size does not match node count");
  }
  Graph g = *this;
  g.labels_ = std::move(labels);
  return g;
}

Graph Graph::WithEdges(std::vector<Edge> edges) const {
  Graph g = FromEdges(num_nodes_, std::move(edges));
  g.original_ids_ = original_ids_;
  g.original_index_ = original_index_;
  g.labels_ = labels_;
  return g;
}

Graph LoadEdgeList(std::istream& in) {
  std::unordered_map<std::int64_t, NodeId> compact;
  std::vector<std::int64_t> originals;
  auto intern = [&](std::int64_t id) {
    auto [it, inserted] =
        compact.try_emplace(id, static_cast<NodeId>(originals.size()));
    if (inserted) originals.push_back(id);
    return it->second;
  };
  std::vector<Edge> edges;
  ForEachPair(in, [&](std::int64_t x, std::int64_t y, std::size_t) {
    const NodeId cx = intern(x);
    const NodeId cy = intern(y);
    if (cx != cy) edges.push_back(Canonical(cx, cy));
  });
  if (edges.empty()) throw ValidationError("edge list has no edges");
  Graph g = Graph::FromEdges(originals.size(), std::move(edges));
  return g.WithOriginalIds(std::move(originals));
}

Graph LoadEdgeListFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return LoadEdgeList(in);
}

Graph LoadLabels(std::istream& in, const Graph& graph) {
  std::vector<std::optional<Label>> labels(graph.num_nodes());
  ForEachPair(in, [&](std::int64_t node, std::int64_t label,
                      std::size_t line_no) {
    const auto id = graph.FindOriginal(node);
    if (!id) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": label for unknown node " + std::to_string(node));
    }
    auto& slot = labels[*id];
    if (slot && *slot != label) {
      throw ValidationError("conflicting labels for node " +
                            std::to_string(node));
    }
    slot = label;
  });
  return graph.WithLabels(std::move(labels));
}

void WriteGraph(const Graph& graph, std::ostream& out) {
  out << "# nodes " << graph.num_nodes() << " edges " << graph.num_edges()
      << '\n';
  WritePairs(graph.edges(), out);
}

Graph ReadGraph(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("missing graph header", 1);
  const auto tokens = Tokenize(header);
  if (tokens.size() != 5 || tokens[0] != "#" || tokens[1] != "nodes" ||
      tokens[3] != "edges") {
    throw ParseError("malformed graph header", 1);
  }
  const std::int64_t nodes = ParseInt(tokens[2], 1);
  const std::int64_t declared = ParseInt(tokens[4], 1);
  if (nodes < 0 || declared < 0) throw ParseError("negative count", 1);
  std::vector<Edge> edges;
  ForEachPair(in, [&](std::int64_t x, std::int64_t y, std::size_t line_no) {
    if (x < 0 || y < 0 || x >= nodes || y >= nodes) {
      throw ParseError("node id out of range", line_no + 1);
    }
    edges.push_back(Edge{static_cast<NodeId>(x), static_cast<NodeId>(y)});
  });
  if (static_cast<std::int64_t>(edges.size()) != declared) {
    throw IntegrityError("graph file declares " + std::to_string(declared) +
                         " edges but holds " + std::to_string(edges.size()));
  }
  return Graph::FromEdges(static_cast<std::size_t>(nodes), std::move(edges));
}

void WriteIdMap(const Graph& graph, std::ostream& out) {
  for (NodeId i = 0; i < graph.num_nodes(); ++i) {
    out << graph.original_id(i) << ' ' << i << '\n';
  }
}

std::vector<std::int64_t> ReadIdMap(std::istream& in, std::size_t num_nodes) {
  std::vector<std::int64_t> originals(num_nodes);
  std::vector<bool> seen(num_nodes, false);
  ForEachPair(in, [&](std::int64_t original, std::int64_t compact,
                      std::size_t line_no) {
    if (compact < 0 || static_cast<std::size_t>(compact) >= num_nodes ||
        seen[compact]) {
      throw ParseError("bad compact id " + std::to_string(compact), line_no);
    }
    seen[compact] = true;
    originals[compact] = original;
  });
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw IntegrityError("id map does not cover every node");
  }
  return originals;
}

void WriteLabels(const Graph& graph, std::ostream& out) {
  for (NodeId i = 0; i < graph.num_nodes(); ++i) {
    if (const auto l = graph.label(i)) {
      out << graph.original_id(i) << ' ' << *l << '\n';
    }
  }
}

void WritePairs(std::span<const Edge> pairs, std::ostream& out) {
  for (const Edge& e : pairs) out << e.u << ' ' << e.v << '\n';
}

std::vector<Edge> ReadPairs(std::istream& in) {
  std::vector<Edge> pairs;
  ForEachPair(in, [&](std::int64_t x, std::int64_t y, std::size_t line_no) {
    if (x < 0 || y < 0) throw ParseError("negative node id", line_no);
    pairs.push_back(Edge{static_cast<NodeId>(x), static_cast<NodeId>(y)});
  });
  return pairs;
}

EdgeSplit SplitEdges(const Graph& graph, double train_fraction,
                     std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train fraction must lie in (0, 1)");
  }
  if (graph.num_edges() < 10) {
    throw ConfigError("splitting needs at least 10 edges");
  }
  const std::size_t num_edges = graph.num_edges();
  const auto num_test = static_cast<std::size_t>(
      std::llround(static_cast<double>(num_edges) * (1.0 - train_fraction)));
  const double n = static_cast<double>(graph.num_nodes());
  const double non_edges = n * (n - 1.0) / 2.0 - static_cast<double>(num_edges);
  if (non_edges < static_cast<double>(num_test)) {
    throw ConfigError("graph too dense: " + std::to_string(num_test) +
                      " negative test pairs requested, only " +
                      std::to_string(static_cast<long long>(non_edges)) +
                      " non-edges exist");
  }

  Rng rng(seed);
  std::vector<Edge> shuffled(graph.edges().begin(), graph.edges().end());
  std::shuffle(shuffled.begin(), shuffled.end(), rng);

  EdgeSplit split;
  split.seed = seed;
  split.test_pos.assign(shuffled.begin(), shuffled.begin() + num_test);
  std::vector<Edge> train(shuffled.begin() + num_test, shuffled.end());
  std::sort(split.test_pos.begin(), split.test_pos.end());
  split.train_graph = graph.WithEdges(std::move(train));

  std::uniform_int_distribution<NodeId> pick(
      0, static_cast<NodeId>(graph.num_nodes() - 1));
  std::set<Edge> chosen;
  const std::size_t max_attempts = 100 * std::max<std::size_t>(num_test, 1);
  std::size_t attempts = 0;
  while (split.test_neg.size() < num_test) {
    if (attempts++ >= max_attempts) {
      throw ConfigError("negative test sampling exceeded " +
                        std::to_string(max_attempts) + " attempts");
    }
    const NodeId x = pick(rng);
    const NodeId y = pick(rng);
    if (x == y || graph.HasEdge(x, y)) continue;
    const Edge e = Canonical(x, y);
    if (chosen.insert(e).second) split.test_neg.push_back(e);
  }
  return split;
}

Graph GenerateSbm(std::span<const std::size_t> block_sizes, double p_in,
                  double p_out, std::uint64_t seed) {
  if (!(p_in >= 0.0 && p_in <= 1.0 && p_out >= 0.0 && p_out <= 1.0)) {
    throw ConfigError("SBM probabilities must lie in [0, 1]");
  }
  std::vector<Label> block_of;
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    if (block_sizes[b] == 0) throw ConfigError("SBM block of size zero");
    block_of.insert(block_of.end(), block_sizes[b], static_cast<Label>(b));
  }
  const std::size_t n = block_of.size();
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double p = block_of[u] == block_of[v] ? p_in : p_out;
      if (unit(rng) < p) edges.push_back(Edge{u, v});
    }
  }
  std::vector<std::optional<Label>> labels(block_of.begin(), block_of.end());
  return Graph::FromEdges(n, std::move(edges)).WithLabels(std::move(labels));
}

}  // namespace advsgm
