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
// Completion-endpoint client with three modes:
//   live    send the request, return the first choice's text
//   record  live, but persist each completion in an append-only cache
//   replay  serve completions from the cache, never touching the network
//
// Cache entries are keyed by (prompt digest, attempt). The attempt number
// distinguishes re-synthesis rounds for the same prompt so a recorded run
// that needed retries replays the same way.

#ifndef PGA_GATEWAY_HPP
#define PGA_GATEWAY_HPP

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "pga/prompt.hpp"
#include "pga/types.hpp"

namespace pga {

enum class GatewayMode { live, record, replay };
GatewayMode gateway_mode_from_name(const std::string& name);
const std::string& gateway_mode_name(GatewayMode m);

struct CompletionParams {
  std::string model_name = "text-davinci-003";
  double temperature = 0.5;
  int max_tokens = 512;
  std::vector<std::string> stop_sequences;
};

// Per-method defaults: paraphrase samples at temperature 0.5, generate at
// 1.0 for more diverse sentences.
CompletionParams default_params(AugmentMethod method);

enum class TransportStatus { ok, http_error, timeout };

struct CompletionRecord {
  std::string prompt_digest;
  std::string raw_text;
  int attempt = 1;
  TransportStatus transport_status = TransportStatus::ok;
  std::string created_at;
};

// Stable across runs and platforms; covers every byte of the prompt and
// every parameter field.
std::string completion_digest(const std::string& prompt_text, const CompletionParams& params);

struct TransportResponse {
  int status = 0;            // 0 = no HTTP response
  std::string body;
  std::string retry_after;   // Retry-After header value, when present
  bool timed_out = false;
  std::string error;         // transport-level failure description
};

class Transport {
 public:
  virtual ~Transport() = default;
  virtual TransportResponse post(const std::string& json_body) = 0;
};

// POSTs to a completions URL; API key (when the PGA_API_KEY environment
// variable is set) is sent as a bearer token.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(const std::string& url);
  TransportResponse post(const std::string& json_body) override;

 private:
  std::string base_;
  std::string path_;
};

// Append-only line-delimited record store with an in-memory index.
class CompletionCache {
 public:
  CompletionCache() = default;  // in-memory only
  explicit CompletionCache(const std::string& path, bool must_exist = false);

  bool contains(const std::string& digest, int attempt) const;
  std::optional<CompletionRecord> get(const std::string& digest, int attempt) const;
  // Idempotent: a (digest, attempt) key already present is left untouched.
  void put(const CompletionRecord& rec);
  std::size_t size() const;

 private:
  std::string path_;
  std::map<std::string, CompletionRecord> index_;
  mutable std::mutex mu_;
};

struct GatewayOptions {
  GatewayMode mode = GatewayMode::replay;
  int transport_attempts = 5;
  std::int64_t backoff_initial_ms = 1000;  // doubles per failed attempt
  int max_in_flight = 4;
};

class Gateway {
 public:
  Gateway(GatewayOptions opts, std::shared_ptr<Transport> transport,
          std::shared_ptr<CompletionCache> cache);

  // Throws Error(cache_miss) on a replay miss and Error(transport) once the
  // retry budget is exhausted. Failed transports persist nothing.
  CompletionRecord complete(const PromptText& prompt, const CompletionParams& params,
                            int attempt = 1);

  GatewayMode mode() const { return opts_.mode; }
  std::size_t transport_requests() const { return transport_requests_.load(); }
  const CompletionCache& cache() const { return *cache_; }

 private:
  CompletionRecord perform(const std::string& digest, const PromptText& prompt,
                           const CompletionParams& params, int attempt);

  GatewayOptions opts_;
  std::shared_ptr<Transport> transport_;
  std::shared_ptr<CompletionCache> cache_;
  std::atomic<std::size_t> transport_requests_{0};

  // Runtime-sized counting semaphore bounding in-flight requests.
  std::mutex slot_mu_;
  std::condition_variable slot_cv_;
  int slots_free_ = 0;
};

}  // namespace pga

#endif  // PGA_GATEWAY_HPP
