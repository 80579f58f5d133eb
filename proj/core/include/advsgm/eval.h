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

// Link-prediction and node-clustering metrics.

#ifndef ADVSGM_EVAL_H_
#define ADVSGM_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "advsgm/embedding.h"
#include "advsgm/graph.h"

namespace advsgm {

// v_i . v_j over input-role rows.
std::vector<double> ScorePairs(const EmbeddingMatrix& in,
                               std::span<const Edge> pairs);

// Probability that a random positive outscores a random negative, ties
// counted half. Exact, by sort and rank. Throws ValidationError if either
// side is empty.
double Auc(std::span<const double> positives, std::span<const double> negatives);

// AUC of input-role dot products on the split's held-out pairs.
double LinkPredictionAuc(const EmbeddingMatrix& in, const EdgeSplit& split);

struct AffinityOptions {
  double damping = 0.9;
  std::size_t max_iter = 500;
  std::size_t convergence_window = 15;
};

struct Clustering {
  std::vector<std::int64_t> labels;   // exemplar point index per point
  std::vector<std::size_t> exemplars;  // sorted
  std::size_t iterations_run = 0;
  bool converged = false;
};

// Affinity propagation on s(i, k) = -||x_i - x_k||^2 with every preference
// set to `preference`. Throws std::invalid_argument for fewer than two
// points or damping outside [0.5, 1).
Clustering AffinityPropagation(const std::vector<std::vector<double>>& points,
                               double preference,
                               const AffinityOptions& options = {});

// As above with the preference set to the median off-diagonal similarity.
Clustering AffinityPropagation(const std::vector<std::vector<double>>& points,
                               const AffinityOptions& options = {});

// Median of s(i, k) over i != k.
double MedianSimilarity(const std::vector<std::vector<double>>& points);

// Mutual information of two labelings in nats. Throws ValidationError when
// the labelings differ in length or are empty.
double MutualInformation(std::span<const std::int64_t> pred,
                         std::span<const std::int64_t> truth);

struct ClusteringScore {
  Clustering clustering;
  double mutual_information = 0.0;
  std::size_t labeled_nodes = 0;
};

// Clusters every node's input-role vector and scores the clustering against
// the graph's labels over labeled nodes. Throws ValidationError when the
// graph carries no labels.
ClusteringScore ClusterAndScore(const EmbeddingMatrix& in, const Graph& graph,
                                const AffinityOptions& options = {});

}  // namespace advsgm

#endif  // ADVSGM_EVAL_H_
