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

#include "pga/fidelity.hpp"

// Eigen must precede httplib: OpenSSL (pulled in transitively) leaks
// macros that mangle Eigen internals.
#include <Eigen/Dense>

#include <httplib.h>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>

#include "pga/util.hpp"

namespace pga {

namespace {

std::string sentence_key(const std::string& sentence) { return sha256_hex(sentence); }

EmbeddingVector vector_from_json(const json& arr) {
  EmbeddingVector v;
  for (const auto& x : arr) v.values.push_back(x.get<double>());
  return v;
}

class FileProvider : public EmbeddingProvider {
 public:
  explicit FileProvider(const std::string& path) {
    for_each_json_line(path, [&](const json& rec, int lineno) {
      std::string key;
      if (rec.contains("digest")) {
        key = rec.at("digest").get<std::string>();
      } else if (rec.contains("sentence")) {
        key = sentence_key(rec.at("sentence").get<std::string>());
      } else {
        throw Error(ErrorClass::parse, path + ":" + std::to_string(lineno) +
                                           ": record needs a digest or sentence field");
      }
      vectors_[key] = vector_from_json(rec.at("vector"));
    });
  }

  std::vector<EmbeddingVector> embed(const std::vector<std::string>& sentences) override {
    std::vector<EmbeddingVector> out;
    for (const auto& s : sentences) {
      auto it = vectors_.find(sentence_key(s));
      if (it == vectors_.end()) {
        throw Error(ErrorClass::validation,
                    "no precomputed vector for sentence digest " + sentence_key(s));
      }
      out.push_back(it->second);
    }
    return out;
  }

 private:
  std::map<std::string, EmbeddingVector> vectors_;
};

class HttpProvider : public EmbeddingProvider {
 public:
  HttpProvider(const std::string& url, std::string model, std::size_t batch)
      : model_(std::move(model)), batch_(batch == 0 ? 1 : batch) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
      throw Error(ErrorClass::config, "embedding url '" + url + "' lacks a scheme");
    }
    auto path_start = url.find('/', scheme_end + 3);
    base_ = path_start == std::string::npos ? url : url.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
  }

  std::vector<EmbeddingVector> embed(const std::vector<std::string>& sentences) override {
    std::vector<EmbeddingVector> out;
    for (std::size_t i = 0; i < sentences.size(); i += batch_) {
      const std::size_t hi = std::min(sentences.size(), i + batch_);
      json body;
      body["model"] = model_;
      json input = json::array();
      for (std::size_t j = i; j < hi; ++j) input.push_back(sentences[j]);
      body["input"] = std::move(input);

      httplib::Client client(base_);
      client.set_read_timeout(120, 0);
      httplib::Headers headers;
      if (const char* key = std::getenv("PGA_API_KEY")) {
        headers.emplace("Authorization", std::string("Bearer ") + key);
      }
      auto res = client.Post(path_, headers, body.dump(), "application/json");
      if (!res || res->status != 200) {
        throw Error(ErrorClass::transport,
                    "embedding request failed: " +
                        (res ? "status " + std::to_string(res->status)
                             : httplib::to_string(res.error())));
      }
      try {
        auto parsed = json::parse(res->body);
        for (const auto& item : parsed.at("data")) {
          out.push_back(vector_from_json(item.at("embedding")));
        }
      } catch (const std::exception& e) {
        throw Error(ErrorClass::transport,
                    "malformed embedding response: " + std::string(e.what()));
      }
    }
    if (out.size() != sentences.size()) {
      throw Error(ErrorClass::transport, "embedding endpoint returned " +
                                             std::to_string(out.size()) + " vectors for " +
                                             std::to_string(sentences.size()) + " sentences");
    }
    return out;
  }

 private:
  std::string base_;
  std::string path_;
  std::string model_;
  std::size_t batch_;
};

void check_uniform_dim(const std::vector<EmbeddingVector>& vs) {
  for (std::size_t i = 1; i < vs.size(); ++i) {
    if (vs[i].dim() != vs[0].dim()) {
      throw Error(ErrorClass::validation,
                  "embedding dimension mismatch: " + std::to_string(vs[0].dim()) + " vs " +
                      std::to_string(vs[i].dim()));
    }
  }
}

}  // namespace

std::unique_ptr<EmbeddingProvider> make_file_provider(const std::string& path) {
  return std::make_unique<FileProvider>(path);
}

std::unique_ptr<EmbeddingProvider> make_http_provider(const std::string& url,
                                                      const std::string& model,
                                                      std::size_t batch_size) {
  return std::make_unique<HttpProvider>(url, model, batch_size);
}

std::vector<EmbeddingVector> embed_sentences(const std::vector<std::string>& sentences,
                                             EmbeddingProvider& provider,
                                             const std::string& cache_path) {
  std::map<std::string, EmbeddingVector> cached;
  if (!cache_path.empty()) {
    std::ifstream probe(cache_path);
    if (probe.good()) {
      probe.close();
      for_each_json_line(cache_path, [&](const json& rec, int) {
        cached[rec.at("digest").get<std::string>()] = vector_from_json(rec.at("vector"));
      });
    }
  }

  std::vector<EmbeddingVector> out(sentences.size());
  std::vector<std::string> misses;
  std::vector<std::size_t> miss_at;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    auto it = cached.find(sentence_key(sentences[i]));
    if (it != cached.end()) {
      out[i] = it->second;
    } else {
      misses.push_back(sentences[i]);
      miss_at.push_back(i);
    }
  }
  if (!misses.empty()) {
    auto fresh = provider.embed(misses);
    if (fresh.size() != misses.size()) {
      throw Error(ErrorClass::internal, "provider returned a short batch");
    }
    for (std::size_t k = 0; k < misses.size(); ++k) {
      out[miss_at[k]] = fresh[k];
      const std::string key = sentence_key(misses[k]);
      if (!cache_path.empty() && !cached.count(key)) {
        json rec;
        rec["digest"] = key;
        json arr = json::array();
        for (double v : fresh[k].values) arr.push_back(v);
        rec["vector"] = std::move(arr);
        append_line(cache_path, rec.dump());
        cached[key] = fresh[k];
      }
    }
  }
  check_uniform_dim(out);
  return out;
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorClass::validation, "cosine of vectors with different dimensions");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    dot += a.values[i] * b.values[i];
    na += a.values[i] * a.values[i];
    nb += b.values[i] * b.values[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

json SimilarityStats::to_json() const {
  json j;
  j["count"] = similarities.size();
  j["mean"] = mean;
  j["median"] = median;
  j["min"] = min;
  json arr = json::array();
  for (double s : similarities) arr.push_back(s);
  j["similarities"] = std::move(arr);
  return j;
}

SimilarityStats cosine_pairs(const std::vector<EmbeddingVector>& origs,
                             const std::vector<EmbeddingVector>& pseudos) {
  if (origs.size() != pseudos.size()) {
    throw Error(ErrorClass::validation, "cosine_pairs needs equally many origin and pseudo vectors");
  }
  SimilarityStats st;
  for (std::size_t i = 0; i < origs.size(); ++i) {
    st.similarities.push_back(cosine_similarity(origs[i], pseudos[i]));
  }
  if (st.similarities.empty()) return st;
  double total = 0.0;
  st.min = st.similarities.front();
  for (double s : st.similarities) {
    total += s;
    st.min = std::min(st.min, s);
  }
  st.mean = total / static_cast<double>(st.similarities.size());
  std::vector<double> sorted = st.similarities;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  st.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return st;
}

std::vector<ProjectedPoint> project_2d(const std::vector<EmbeddingVector>& vectors,
                                       const std::vector<std::string>& tags) {
  if (vectors.size() < 2) {
    throw Error(ErrorClass::validation, "projection needs at least 2 vectors");
  }
  if (tags.size() != vectors.size()) {
    throw Error(ErrorClass::validation, "projection needs one tag per vector");
  }
  check_uniform_dim(vectors);
  const std::size_t n = vectors.size();
  const std::size_t d = vectors[0].dim();

  Eigen::MatrixXd data(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) data(i, j) = vectors[i].values[j];
  }
  Eigen::RowVectorXd center = data.colwise().mean();
  data.rowwise() -= center;
  Eigen::MatrixXd cov = data.transpose() * data / static_cast<double>(n);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorClass::internal, "eigendecomposition failed");
  }
  // Eigenvalues come back ascending; take the top two.
  std::vector<ProjectedPoint> out(n);
  Eigen::MatrixXd axes(d, 2);
  for (int k = 0; k < 2; ++k) {
    const auto col = static_cast<Eigen::Index>(d) - 1 - k;
    Eigen::VectorXd axis = solver.eigenvectors().col(col);
    double eigenvalue = solver.eigenvalues()(col);
    if (eigenvalue <= 1e-12) {
      // Degenerate direction carries no variance; drop it to keep the
      // output independent of the solver's arbitrary basis choice.
      axis.setZero();
    } else {
      for (Eigen::Index j = 0; j < axis.size(); ++j) {
        if (std::abs(axis(j)) > 1e-12) {
          if (axis(j) < 0) axis = -axis;
          break;
        }
      }
    }
    axes.col(k) = axis;
  }
  Eigen::MatrixXd projected = data * axes;
  for (std::size_t i = 0; i < n; ++i) {
    out[i].x = projected(static_cast<Eigen::Index>(i), 0);
    out[i].y = projected(static_cast<Eigen::Index>(i), 1);
    out[i].group = tags[i];
  }
  return out;
}

std::string projection_to_csv(const std::vector<ProjectedPoint>& points) {
  std::string out = "x,y,group\n";
  for (const auto& p : points) {
    out += format_double(p.x) + "," + format_double(p.y) + "," + p.group + "\n";
  }
  return out;
}

}  // namespace pga
