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

#include "advsgm/sampling.h"

#include <algorithm>
#include <random>
#include <string>
#include <unordered_set>

#include "advsgm/errors.h"

namespace advsgm {

std::vector<std::size_t> SampleWithoutReplacement(std::size_t population,
                                                  std::size_t count, Rng& rng) {
  if (count > population) {
    throw ConfigError("cannot draw " + std::to_string(count) +
                      " distinct items from " + std::to_string(population));
  }
  // Floyd's algorithm gives a uniform subset in O(count); the shuffle makes
  // the order uniform as well.
  std::vector<std::size_t> out;
  out.reserve(count);
  std::unordered_set<std::size_t> chosen;
  chosen.reserve(count * 2);
  for (std::size_t j = population - count; j < population; ++j) {
    std::uniform_int_distribution<std::size_t> pick(0, j);
    const std::size_t t = pick(rng);
    const std::size_t item = chosen.contains(t) ? j : t;
    chosen.insert(item);
    out.push_back(item);
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

Batch SamplePositiveBatch(const Graph& graph, std::size_t batch_size,
                          Rng& rng) {
  if (batch_size == 0) throw ConfigError("batch size must be positive");
  if (batch_size > graph.num_edges()) {
    throw ConfigError("batch size " + std::to_string(batch_size) +
                      " exceeds edge count " +
                      std::to_string(graph.num_edges()));
  }
  Batch batch;
  batch.kind = BatchKind::kPositive;
  batch.gamma = static_cast<double>(batch_size) /
                static_cast<double>(graph.num_edges());
  std::bernoulli_distribution flip(0.5);
  const auto edges = graph.edges();
  for (std::size_t idx :
       SampleWithoutReplacement(graph.num_edges(), batch_size, rng)) {
    const Edge& e = edges[idx];
    batch.pairs.push_back(flip(rng) ? NodePair{e.v, e.u} : NodePair{e.u, e.v});
  }
  return batch;
}

Batch SampleNegativeBatch(const Graph& graph, const Batch& positive,
                          std::size_t negatives_per_positive, Rng& rng) {
  if (positive.kind != BatchKind::kPositive) {
    throw ConfigError("negative batches are built from a positive batch");
  }
  const std::size_t k = negatives_per_positive;
  const std::size_t total = positive.pairs.size() * k;
  if (k == 0) throw ConfigError("negatives per positive must be positive");
  if (total > graph.num_nodes()) {
    throw ConfigError("B*k = " + std::to_string(total) +
                      " exceeds node count " +
                      std::to_string(graph.num_nodes()));
  }
  const auto nodes = SampleWithoutReplacement(graph.num_nodes(), total, rng);
  Batch batch;
  batch.kind = BatchKind::kNegative;
  batch.gamma =
      static_cast<double>(total) / static_cast<double>(graph.num_nodes());
  batch.pairs.reserve(total);
  for (std::size_t b = 0; b < positive.pairs.size(); ++b) {
    for (std::size_t m = 0; m < k; ++m) {
      batch.pairs.push_back(NodePair{positive.pairs[b].i,
                                     static_cast<NodeId>(nodes[b * k + m])});
    }
  }
  return batch;
}

}  // namespace advsgm
