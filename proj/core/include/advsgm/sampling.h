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

// Positive/negative batch generation with the without-replacement semantics
// the privacy accountant assumes.

#ifndef ADVSGM_SAMPLING_H_
#define ADVSGM_SAMPLING_H_

#include <cstddef>
#include <vector>

#include "advsgm/graph.h"
#include "advsgm/numerics.h"

namespace advsgm {

// An oriented node pair: `i` indexes the input-role matrix, `j` the
// output-role matrix.
struct NodePair {
  NodeId i = 0;
  NodeId j = 0;

  friend bool operator==(const NodePair&, const NodePair&) = default;
};

enum class BatchKind { kPositive, kNegative };

struct Batch {
  BatchKind kind = BatchKind::kPositive;
  std::vector<NodePair> pairs;
  // Subsampling rate reported to the accountant: B/|E| or Bk/|V|.
  double gamma = 0.0;
};

// Draws `count` distinct values from [0, population) uniformly at random, in
// uniformly random order.
std::vector<std::size_t> SampleWithoutReplacement(std::size_t population,
                                                  std::size_t count, Rng& rng);

// B distinct edges, uniform over all B-subsets of E. Each edge is used in a
// uniformly random orientation so both endpoints take the input role.
// Throws ConfigError when B is zero or exceeds |E|.
Batch SamplePositiveBatch(const Graph& graph, std::size_t batch_size, Rng& rng);

// Draws B*k distinct nodes, splits them in draw order into B groups of k and
// pairs the b-th positive pair's start node with every node of group b.
// Negative pairs may coincide with real edges. Throws ConfigError when
// B*k > |V| or `positive` is not a positive batch.
Batch SampleNegativeBatch(const Graph& graph, const Batch& positive,
                          std::size_t negatives_per_positive, Rng& rng);

}  // namespace advsgm

#endif  // ADVSGM_SAMPLING_H_
