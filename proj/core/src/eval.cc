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

#include "advsgm/eval.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "advsgm/errors.h"
#include "advsgm/numerics.h"

namespace advsgm {

std::vector<double> ScorePairs(const EmbeddingMatrix& in,
                               std::span<const Edge> pairs) {
  std::vector<double> scores;
  scores.reserve(pairs.size());
  for (const Edge& e : pairs) {
    if (e.u >= in.rows() || e.v >= in.rows()) {
      throw ValidationError("pair references a node outside the embedding");
    }
    scores.push_back(Dot(in.row(e.u), in.row(e.v)));
  }
  return scores;
}

double Auc(std::span<const double> positives,
           std::span<const double> negatives) {
  if (positives.empty() || negatives.empty()) {
    throw ValidationError("AUC needs at least one positive and one negative");
  }
  struct Scored {
    double score;
    bool positive;
  };
  std::vector<Scored> all;
  all.reserve(positives.size() + negatives.size());
  for (double s : positives) all.push_back({s, true});
  for (double s : negatives) all.push_back({s, false});
  std::sort(all.begin(), all.end(),
            [](const Scored& x, const Scored& y) { return x.score < y.score; });

  // Twice the rank sum keeps tied midranks integral.
  double twice_rank_sum = 0.0;
  for (std::size_t lo = 0; lo < all.size();) {
    std::size_t hi = lo;
    while (hi < all.size() && all[hi].score == all[lo].score) ++hi;
    const double twice_mid = static_cast<double>(lo + 1 + hi);
    for (std::size_t x = lo; x < hi; ++x) {
      if (all[x].positive) twice_rank_sum += twice_mid;
    }
    lo = hi;
  }
  const double n_pos = static_cast<double>(positives.size());
  const double n_neg = static_cast<double>(negatives.size());
  const double wins = (twice_rank_sum - n_pos * (n_pos + 1.0)) / 2.0;
  return wins / (n_pos * n_neg);
}

double LinkPredictionAuc(const EmbeddingMatrix& in, const EdgeSplit& split) {
  const std::vector<double> pos = ScorePairs(in, split.test_pos);
  const std::vector<double> neg = ScorePairs(in, split.test_neg);
  return Auc(pos, neg);
}

namespace {

std::vector<double> Similarities(
    const std::vector<std::vector<double>>& points) {
  const std::size_t n = points.size();
  std::vector<double> s(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      double d = 0.0;
      for (std::size_t m = 0; m < points[i].size(); ++m) {
        const double diff = points[i][m] - points[k][m];
        d += diff * diff;
      }
      s[i * n + k] = s[k * n + i] = -d;
    }
  }
  return s;
}

double OffDiagonalMedian(const std::vector<double>& s, std::size_t n) {
  std::vector<double> off;
  off.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (i != k) off.push_back(s[i * n + k]);
    }
  }
  const std::size_t mid = off.size() / 2;
  std::nth_element(off.begin(), off.begin() + mid, off.end());
  const double upper = off[mid];
  if (off.size() % 2 == 1) return upper;
  const double lower = *std::max_element(off.begin(), off.begin() + mid);
  return (lower + upper) / 2.0;
}

Clustering RunAffinity(std::vector<double> s, std::size_t n, double preference,
                       const AffinityOptions& options) {
  if (!(options.damping >= 0.5 && options.damping < 1.0)) {
    throw std::invalid_argument("damping must lie in [0.5, 1)");
  }
  if (options.convergence_window == 0 || options.max_iter == 0) {
    throw std::invalid_argument("iteration limits must be positive");
  }
  for (std::size_t i = 0; i < n; ++i) s[i * n + i] = preference;

  Clustering out;
  // Every similarity equal to the preference: no point is preferable as an
  // exemplar, so all points form one cluster around point 0.
  const bool all_equal =
      std::all_of(s.begin(), s.end(), [&](double x) { return x == s[0]; });
  if (all_equal) {
    out.labels.assign(n, 0);
    out.exemplars = {0};
    out.converged = true;
    return out;
  }

  const double damping = options.damping;
  const std::size_t window = options.convergence_window;
  std::vector<double> r(n * n, 0.0);
  std::vector<double> a(n * n, 0.0);
  std::vector<double> tmp(n * n);
  std::vector<std::vector<bool>> history(window, std::vector<bool>(n, false));
  std::vector<bool> exemplar(n, false);
  const double neg_inf = -std::numeric_limits<double>::infinity();

  for (std::size_t it = 0; it < options.max_iter; ++it) {
    // Responsibilities.
    for (std::size_t i = 0; i < n; ++i) {
      double best = neg_inf;
      double second = neg_inf;
      std::size_t best_k = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const double v = a[i * n + k] + s[i * n + k];
        if (v > best) {
          second = best;
          best = v;
          best_k = k;
        } else if (v > second) {
          second = v;
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        const double target = s[i * n + k] - (k == best_k ? second : best);
        r[i * n + k] = damping * r[i * n + k] + (1.0 - damping) * target;
      }
    }
    // Availabilities.
    for (std::size_t k = 0; k < n; ++k) {
      double column = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double v = r[i * n + k];
        column += i == k ? v : std::max(v, 0.0);
      }
      for (std::size_t i = 0; i < n; ++i) {
        const double v = r[i * n + k];
        const double own = i == k ? v : std::max(v, 0.0);
        double target = column - own;
        if (i != k) target = std::min(target, 0.0);
        a[i * n + k] = damping * a[i * n + k] + (1.0 - damping) * target;
      }
    }
    std::size_t count = 0;
    for (std::size_t k = 0; k < n; ++k) {
      exemplar[k] = a[k * n + k] + r[k * n + k] > 0.0;
      history[it % window][k] = exemplar[k];
      count += exemplar[k];
    }
    out.iterations_run = it + 1;
    if (it >= window) {
      bool stable = true;
      for (std::size_t k = 0; k < n && stable; ++k) {
        std::size_t hits = 0;
        for (std::size_t w = 0; w < window; ++w) hits += history[w][k];
        stable = hits == 0 || hits == window;
      }
      if (stable && count > 0) {
        out.converged = true;
        break;
      }
    }
  }

  std::vector<std::size_t> centers;
  for (std::size_t k = 0; k < n; ++k) {
    if (exemplar[k]) centers.push_back(k);
  }
  if (centers.empty()) {
    out.labels.assign(n, -1);
    return out;
  }
  auto assign = [&](const std::vector<std::size_t>& ex) {
    std::vector<std::size_t> c(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      for (std::size_t x = 1; x < ex.size(); ++x) {
        if (s[i * n + ex[x]] > s[i * n + ex[best]]) best = x;
      }
      c[i] = best;
    }
    for (std::size_t x = 0; x < ex.size(); ++x) c[ex[x]] = x;
    return c;
  };
  // Refine each exemplar to the member maximizing total similarity within
  // its cluster, then reassign.
  std::vector<std::size_t> c = assign(centers);
  for (std::size_t x = 0; x < centers.size(); ++x) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i] == x) members.push_back(i);
    }
    double best = neg_inf;
    for (std::size_t j : members) {
      double total = 0.0;
      for (std::size_t i : members) total += s[i * n + j];
      if (total > best) {
        best = total;
        centers[x] = j;
      }
    }
  }
  c = assign(centers);
  out.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.labels[i] = static_cast<std::int64_t>(centers[c[i]]);
  }
  out.exemplars.assign(centers.begin(), centers.end());
  std::sort(out.exemplars.begin(), out.exemplars.end());
  out.exemplars.erase(std::unique(out.exemplars.begin(), out.exemplars.end()),
                      out.exemplars.end());
  return out;
}

void CheckPoints(const std::vector<std::vector<double>>& points) {
  if (points.size() < 2) {
    throw std::invalid_argument("affinity propagation needs two points");
  }
  for (const auto& p : points) {
    if (p.size() != points[0].size()) {
      throw std::invalid_argument("points differ in dimension");
    }
  }
}

}  // namespace

double MedianSimilarity(const std::vector<std::vector<double>>& points) {
  CheckPoints(points);
  return OffDiagonalMedian(Similarities(points), points.size());
}

Clustering AffinityPropagation(const std::vector<std::vector<double>>& points,
                               double preference,
                               const AffinityOptions& options) {
  CheckPoints(points);
  return RunAffinity(Similarities(points), points.size(), preference, options);
}

Clustering AffinityPropagation(const std::vector<std::vector<double>>& points,
                               const AffinityOptions& options) {
  CheckPoints(points);
  std::vector<double> s = Similarities(points);
  const double preference = OffDiagonalMedian(s, points.size());
  return RunAffinity(std::move(s), points.size(), preference, options);
}

double MutualInformation(std::span<const std::int64_t> pred,
                         std::span<const std::int64_t> truth) {
  if (pred.size() != truth.size()) {
    throw ValidationError("labelings differ in length");
  }
  if (pred.empty()) throw ValidationError("no labeled nodes to compare");
  std::map<std::pair<std::int64_t, std::int64_t>, double> joint;
  std::map<std::int64_t, double> pred_count;
  std::map<std::int64_t, double> truth_count;
  for (std::size_t x = 0; x < pred.size(); ++x) {
    joint[{pred[x], truth[x]}] += 1.0;
    pred_count[pred[x]] += 1.0;
    truth_count[truth[x]] += 1.0;
  }
  const double total = static_cast<double>(pred.size());
  const double log_total = std::log(total);
  double mi = 0.0;
  for (const auto& [key, count] : joint) {
    mi += count / total *
          (std::log(count) + log_total - std::log(pred_count[key.first]) -
           std::log(truth_count[key.second]));
  }
  return std::max(mi, 0.0);
}

ClusteringScore ClusterAndScore(const EmbeddingMatrix& in, const Graph& graph,
                                const AffinityOptions& options) {
  if (!graph.has_labels()) {
    throw ValidationError("clustering evaluation needs node labels");
  }
  if (in.rows() != graph.num_nodes()) {
    throw ValidationError("embedding rows do not match the graph");
  }
  std::vector<std::vector<double>> points;
  points.reserve(in.rows());
  for (std::size_t i = 0; i < in.rows(); ++i) {
    points.emplace_back(in.row(i).begin(), in.row(i).end());
  }
  ClusteringScore score;
  score.clustering = AffinityPropagation(points, options);
  std::vector<std::int64_t> pred;
  std::vector<std::int64_t> truth;
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    if (const auto label = graph.label(v)) {
      pred.push_back(score.clustering.labels[v]);
      truth.push_back(*label);
    }
  }
  score.labeled_nodes = pred.size();
  score.mutual_information = MutualInformation(pred, truth);
  return score;
}

}  // namespace advsgm
