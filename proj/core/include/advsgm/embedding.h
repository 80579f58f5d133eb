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

// Skip-gram embedding storage and the closed-form per-pair loss and gradient.

#ifndef ADVSGM_EMBEDDING_H_
#define ADVSGM_EMBEDDING_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "advsgm/graph.h"
#include "advsgm/numerics.h"

namespace advsgm {

enum class EmbeddingRole { kInput, kOutput };

// Dense row-major |V| x r matrix; one row per node.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::size_t rows, std::size_t dim, EmbeddingRole role)
      : rows_(rows), dim_(dim), role_(role), data_(rows * dim, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t dim() const { return dim_; }
  EmbeddingRole role() const { return role_; }

  std::span<double> row(std::size_t i) {
    return std::span<double>(data_).subspan(i * dim_, dim_);
  }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * dim_, dim_);
  }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  friend bool operator==(const EmbeddingMatrix&,
                         const EmbeddingMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  EmbeddingRole role_ = EmbeddingRole::kInput;
  std::vector<double> data_;
};

struct Embeddings {
  EmbeddingMatrix in;   // node vectors v_i
  EmbeddingMatrix out;  // context vectors v_j

  friend bool operator==(const Embeddings&, const Embeddings&) = default;
};

// One skip-gram term: sign = +1 for an observed pair, -1 for a negative.
struct SgmSample {
  NodeId i = 0;
  NodeId j = 0;
  int sign = 1;
};

// Gradient of one pair term with respect to the two rows it touches.
struct PairGradient {
  Vector input;   // d/dv_i
  Vector output;  // d/dv_j
};

// Rows uniform in [-0.5/r, 0.5/r]^r, then rescaled to unit L2 norm.
Embeddings InitEmbeddings(std::size_t num_nodes, std::size_t dim, Rng& rng);

// Rescales every row with norm above 1 onto the unit sphere.
void ProjectRowsToUnitBall(EmbeddingMatrix& matrix);

// log S(sign * v_i . v_j).
double SgmLoss(const SgmSample& sample, const Embeddings& emb,
               const Sigmoid& sigmoid);

// Gradient of -SgmLoss (training minimizes). With z = sign * v_i . v_j and
// w = S'(z)/S(z): input = -sign * w * v_j, output = -sign * w * v_i.
PairGradient SgmGrad(const SgmSample& sample, const Embeddings& emb,
                     const Sigmoid& sigmoid);

// Text format: "<|V|> <r>" header, then "<original_id> x_1 ... x_r" per node
// with 9 significant digits.
void WriteEmbeddings(const EmbeddingMatrix& matrix, const Graph& graph,
                     std::ostream& out);
// Inverse of WriteEmbeddings; rows are placed by original id. Throws
// ParseError / ValidationError on malformed or mismatched files.
EmbeddingMatrix ReadEmbeddings(std::istream& in, const Graph& graph);

}  // namespace advsgm

#endif  // ADVSGM_EMBEDDING_H_
