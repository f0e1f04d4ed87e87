// Copyright 2026 The PGA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Fidelity analysis: per-pair cosine similarity between origin and pseudo
// sentence embeddings, plus a deterministic two-component principal-axes
// projection for plotting. Embeddings come from a pluggable provider and
// are cached by sentence digest.

#ifndef PGA_FIDELITY_HPP
#define PGA_FIDELITY_HPP

#include <memory>
#include <string>
#include <vector>

#include "pga/types.hpp"
#include "pga/util.hpp"

namespace pga {

struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  // One vector per sentence, order preserved.
  virtual std::vector<EmbeddingVector> embed(const std::vector<std::string>& sentences) = 0;
};

// Serves vectors from a JSON-lines file of {"digest"|"sentence", "vector"}
// records; unknown sentences are an error.
std::unique_ptr<EmbeddingProvider> make_file_provider(const std::string& path);

// POSTs {"model", "input": [...]} to an embeddings URL and reads
// {"data": [{"embedding": [...]}, ...]}.
std::unique_ptr<EmbeddingProvider> make_http_provider(const std::string& url,
                                                      const std::string& model,
                                                      std::size_t batch_size = 64);

// Embeds sentences through `provider`, serving repeats from `cache_path`
// (optional JSON-lines cache keyed by sentence digest) without touching the
// provider. Enforces a uniform dimension. Throws Error(validation) on a
// dim mismatch.
std::vector<EmbeddingVector> embed_sentences(const std::vector<std::string>& sentences,
                                             EmbeddingProvider& provider,
                                             const std::string& cache_path = "");

// dot(a, b) / (|a| |b|); defined as 0 when either vector is zero.
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

struct SimilarityStats {
  std::vector<double> similarities;  // one per pair, input order
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;

  json to_json() const;
};

// Pairwise cosines of origs[i] vs pseudos[i]. Lengths and dims must agree.
SimilarityStats cosine_pairs(const std::vector<EmbeddingVector>& origs,
                             const std::vector<EmbeddingVector>& pseudos);

struct ProjectedPoint {
  double x = 0.0;
  double y = 0.0;
  std::string group;
};

// Centers the vectors and projects onto the top-2 eigenvectors of the
// covariance, eigenvalues descending. Sign convention: the first nonzero
// loading of each axis is positive. All-identical inputs map to the
// origin. Requires at least 2 vectors.
std::vector<ProjectedPoint> project_2d(const std::vector<EmbeddingVector>& vectors,
                                       const std::vector<std::string>& tags);

std::string projection_to_csv(const std::vector<ProjectedPoint>& points);

}  // namespace pga

#endif  // PGA_FIDELITY_HPP
