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

#include "advsgm/embedding.h"

#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "advsgm/errors.h"

namespace advsgm {

Embeddings InitEmbeddings(std::size_t num_nodes, std::size_t dim, Rng& rng) {
  if (dim == 0) throw ConfigError("embedding dimension must be positive");
  const double half_width = 0.5 / static_cast<double>(dim);
  std::uniform_real_distribution<double> coord(-half_width, half_width);
  Embeddings emb{EmbeddingMatrix(num_nodes, dim, EmbeddingRole::kInput),
                 EmbeddingMatrix(num_nodes, dim, EmbeddingRole::kOutput)};
  for (EmbeddingMatrix* m : {&emb.in, &emb.out}) {
    for (std::size_t i = 0; i < num_nodes; ++i) {
      auto row = m->row(i);
      double norm = 0.0;
      while (norm == 0.0) {
        for (double& x : row) x = coord(rng);
        norm = L2Norm(row);
      }
      for (double& x : row) x /= norm;
    }
  }
  return emb;
}

void ProjectRowsToUnitBall(EmbeddingMatrix& matrix) {
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    ClipL2InPlace(matrix.row(i), 1.0);
  }
}

double SgmLoss(const SgmSample& sample, const Embeddings& emb,
               const Sigmoid& sigmoid) {
  const double z =
      sample.sign * Dot(emb.in.row(sample.i), emb.out.row(sample.j));
  return std::log(sigmoid.Value(z));
}

PairGradient SgmGrad(const SgmSample& sample, const Embeddings& emb,
                     const Sigmoid& sigmoid) {
  const auto vi = emb.in.row(sample.i);
  const auto vj = emb.out.row(sample.j);
  const double z = sample.sign * Dot(vi, vj);
  const double coeff = -sample.sign * sigmoid.LogDerivative(z);
  PairGradient g{Vector(vi.size()), Vector(vj.size())};
  for (std::size_t m = 0; m < vi.size(); ++m) {
    g.input[m] = coeff * vj[m];
    g.output[m] = coeff * vi[m];
  }
  return g;
}

void WriteEmbeddings(const EmbeddingMatrix& matrix, const Graph& graph,
                     std::ostream& out) {
  out << matrix.rows() << ' ' << matrix.dim() << '\n';
  out << std::setprecision(9);
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    out << graph.original_id(static_cast<NodeId>(i));
    for (double x : matrix.row(i)) out << ' ' << x;
    out << '\n';
  }
}

EmbeddingMatrix ReadEmbeddings(std::istream& in, const Graph& graph) {
  std::size_t rows = 0;
  std::size_t dim = 0;
  std::string header;
  if (!std::getline(in, header)) throw ParseError("empty embedding file", 1);
  std::istringstream hs(header);
  if (!(hs >> rows >> dim) || dim == 0) {
    throw ParseError("malformed embedding header", 1);
  }
  if (rows != graph.num_nodes()) {
    throw ValidationError("embedding file has " + std::to_string(rows) +
                          " rows, graph has " +
                          std::to_string(graph.num_nodes()) + " nodes");
  }
  EmbeddingMatrix m(rows, dim, EmbeddingRole::kInput);
  std::vector<bool> seen(rows, false);
  std::string line;
  std::size_t line_no = 1;
  for (std::size_t r = 0; r < rows; ++r) {
    ++line_no;
    if (!std::getline(in, line)) throw ParseError("truncated embeddings", line_no);
    std::istringstream ls(line);
    std::int64_t original = 0;
    if (!(ls >> original)) throw ParseError("missing node id", line_no);
    const auto id = graph.FindOriginal(original);
    if (!id || seen[*id]) {
      throw ValidationError("unknown or repeated node " +
                            std::to_string(original));
    }
    seen[*id] = true;
    for (double& x : m.row(*id)) {
      if (!(ls >> x)) throw ParseError("too few coordinates", line_no);
    }
  }
  return m;
}

}  // namespace advsgm
