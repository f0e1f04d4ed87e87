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

#include "pga/config.hpp"

#include <algorithm>
#include <fstream>

#include "pga/util.hpp"

namespace pga {

const std::vector<std::string>& RunConfig::known_keys() {
  static const std::vector<std::string> keys = {
      // paths
      "corpus", "corpus_format", "cache", "out",
      // run selection
      "method", "mode", "seed", "n", "format",
      // completion endpoint
      "endpoint_url", "model", "temperature", "max_tokens", "stop",
      "retry_cap", "transport_retries", "backoff_ms", "concurrency",
      "template_dir", "resume",
      // scoring
      "gold", "pred", "symmetric_swap",
      // fidelity
      "embed_vectors", "embed_endpoint", "embed_model", "embed_cache",
      "embed_batch", "fidelity_pairs", "fidelity_seed",
  };
  return keys;
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorClass::io, "cannot open config '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorClass::config,
                  path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      set(key, value);
    } catch (const Error& e) {
      throw Error(ErrorClass::config, path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    throw Error(ErrorClass::config, "unknown config key '" + key + "'");
  }
  values_[key] = value;
}

bool RunConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::optional<std::string> RunConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string RunConfig::get_or(const std::string& key, const std::string& fallback) const {
  auto v = get(key);
  return v ? *v : fallback;
}

std::string RunConfig::require(const std::string& key) const {
  auto v = get(key);
  if (!v || v->empty()) {
    throw Error(ErrorClass::config, "required config key '" + key + "' is not set");
  }
  return *v;
}

std::int64_t RunConfig::get_int(const std::string& key, std::int64_t fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    std::int64_t out = std::stoll(*v, &used);
    if (used != v->size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    throw Error(ErrorClass::config, "config key '" + key + "' is not an integer: '" + *v + "'");
  }
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    double out = std::stod(*v, &used);
    if (used != v->size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    throw Error(ErrorClass::config, "config key '" + key + "' is not a number: '" + *v + "'");
  }
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  if (*v == "on" || *v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "off" || *v == "false" || *v == "0" || *v == "no") return false;
  throw Error(ErrorClass::config, "config key '" + key + "' is not a boolean: '" + *v + "'");
}

}  // namespace pga
