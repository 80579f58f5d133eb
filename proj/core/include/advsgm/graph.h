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

// Undirected simple graphs: loading, validation, persistence, train/test
// splitting and a stochastic-block-model generator for desk-scale data.

#ifndef ADVSGM_GRAPH_H_
#define ADVSGM_GRAPH_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace advsgm {

using NodeId = std::uint32_t;
using Label = std::int64_t;

// An undirected edge in canonical orientation (u < v).
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Returns the edge with endpoints ordered; does not reject self-loops.
inline Edge Canonical(NodeId x, NodeId y) {
  return x < y ? Edge{x, y} : Edge{y, x};
}

// Immutable undirected simple graph over compact node ids 0..num_nodes-1.
//
// Nodes may carry the id they had in the source file (`original_id`) and an
// optional class label. Adjacency lists are sorted and symmetric.
class Graph {
 public:
  Graph() = default;

  // Canonicalizes and deduplicates `edges`. Throws ValidationError on
  // self-loops or out-of-range endpoints.
  static Graph FromEdges(std::size_t num_nodes, std::vector<Edge> edges);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const NodeId> neighbors(NodeId node) const;
  std::size_t degree(NodeId node) const { return neighbors(node).size(); }
  bool HasEdge(NodeId x, NodeId y) const;

  // Compact id -> id used in the source file. Identity when never set.
  std::int64_t original_id(NodeId node) const;
  std::span<const std::int64_t> original_ids() const { return original_ids_; }
  std::optional<NodeId> FindOriginal(std::int64_t original) const;

  bool has_labels() const;
  std::optional<Label> label(NodeId node) const;
  std::span<const std::optional<Label>> labels() const { return labels_; }

  // Copies sharing this graph's node set, with replaced annotations.
  Graph WithOriginalIds(std::vector<std::int64_t> original_ids) const;
  Graph WithLabels(std::vector<std::optional<Label>> labels) const;
  // Same node set and annotations, different edges.
  Graph WithEdges(std::vector<Edge> edges) const;

 private:
  std::size_t num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<std::int64_t> original_ids_;
  std::unordered_map<std::int64_t, NodeId> original_index_;
  std::vector<std::optional<Label>> labels_;
};

// Parses a whitespace-separated "u v" edge list ('#' starts a comment line).
// Self-loops are dropped, both orientations of an edge are merged, and ids are
// compacted to 0..|V|-1 in order of first appearance (the mapping is kept as
// original ids). A node seen only in a self-loop is kept as an isolated node.
// Throws ParseError on malformed lines and ValidationError when no edge
// survives.
Graph LoadEdgeList(std::istream& in);
Graph LoadEdgeListFile(const std::string& path);

// Reads "original_node label" lines and attaches them through the id map.
// Throws ValidationError for unknown nodes and conflicting duplicates.
Graph LoadLabels(std::istream& in, const Graph& graph);

// Canonical persisted form: a "# nodes <N> edges <M>" header followed by one
// "u v" line per canonical edge in compact ids. ReadGraph accepts exactly what
// WriteGraph produces, so isolated nodes survive the round trip.
void WriteGraph(const Graph& graph, std::ostream& out);
Graph ReadGraph(std::istream& in);

// "original compact" per line.
void WriteIdMap(const Graph& graph, std::ostream& out);
std::vector<std::int64_t> ReadIdMap(std::istream& in, std::size_t num_nodes);

// "original_node label" per line, labeled nodes only.
void WriteLabels(const Graph& graph, std::ostream& out);

// One "u v" line per pair, compact ids.
void WritePairs(std::span<const Edge> pairs, std::ostream& out);
std::vector<Edge> ReadPairs(std::istream& in);

struct EdgeSplit {
  Graph train_graph;
  std::vector<Edge> test_pos;
  std::vector<Edge> test_neg;
  std::uint64_t seed = 0;
};

// Uniform random edge partition with round(|E| * (1 - train_fraction)) test
// edges and as many non-edge test pairs, drawn by rejection sampling.
// Throws ConfigError when the fraction is out of range, the graph has fewer
// than 10 edges, or there are not enough non-edges.
EdgeSplit SplitEdges(const Graph& graph, double train_fraction,
                     std::uint64_t seed);

// Stochastic block model with planted labels equal to block indices.
Graph GenerateSbm(std::span<const std::size_t> block_sizes, double p_in,
                  double p_out, std::uint64_t seed);

}  // namespace advsgm

#endif  // ADVSGM_GRAPH_H_
