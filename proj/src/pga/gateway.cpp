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

#include "pga/gateway.hpp"

#include <httplib.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "pga/util.hpp"

namespace pga {

GatewayMode gateway_mode_from_name(const std::string& name) {
  if (name == "live") return GatewayMode::live;
  if (name == "record") return GatewayMode::record;
  if (name == "replay") return GatewayMode::replay;
  throw Error(ErrorClass::config, "unknown gateway mode '" + name + "'");
}

const std::string& gateway_mode_name(GatewayMode m) {
  static const std::string names[] = {"live", "record", "replay"};
  return names[static_cast<int>(m)];
}

CompletionParams default_params(AugmentMethod method) {
  CompletionParams p;
  p.temperature = method == AugmentMethod::paraphrase ? 0.5 : 1.0;
  return p;
}

std::string completion_digest(const std::string& prompt_text, const CompletionParams& params) {
  // Field-separated canonical form; 0x1e cannot occur in the fields.
  std::string canon = "model=" + params.model_name;
  canon += '\x1e';
  canon += "temperature=" + format_double(params.temperature);
  canon += '\x1e';
  canon += "max_tokens=" + std::to_string(params.max_tokens);
  canon += '\x1e';
  canon += "stop=";
  for (const auto& s : params.stop_sequences) {
    canon += s;
    canon += '\x1f';
  }
  canon += '\x1e';
  canon += "prompt=" + prompt_text;
  return sha256_hex(canon);
}

namespace {

const char* transport_status_name(TransportStatus s) {
  switch (s) {
    case TransportStatus::ok: return "ok";
    case TransportStatus::http_error: return "http_error";
    case TransportStatus::timeout: return "timeout";
  }
  return "http_error";
}

TransportStatus transport_status_from_name(const std::string& s) {
  if (s == "ok") return TransportStatus::ok;
  if (s == "timeout") return TransportStatus::timeout;
  return TransportStatus::http_error;
}

std::string cache_key(const std::string& digest, int attempt) {
  return digest + ":" + std::to_string(attempt);
}

}  // namespace

HttpTransport::HttpTransport(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorClass::config, "endpoint url '" + url + "' lacks a scheme");
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    base_ = url;
    path_ = "/";
  } else {
    base_ = url.substr(0, path_start);
    path_ = url.substr(path_start);
  }
}

TransportResponse HttpTransport::post(const std::string& json_body) {
  httplib::Client client(base_);
  client.set_connection_timeout(10, 0);
  client.set_read_timeout(120, 0);
  httplib::Headers headers;
  if (const char* key = std::getenv("PGA_API_KEY")) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  auto res = client.Post(path_, headers, json_body, "application/json");
  TransportResponse out;
  if (!res) {
    auto err = res.error();
    out.timed_out = err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
                    err == httplib::Error::Write;
    out.error = httplib::to_string(err);
    return out;
  }
  out.status = res->status;
  out.body = res->body;
  if (res->has_header("Retry-After")) out.retry_after = res->get_header_value("Retry-After");
  return out;
}

CompletionCache::CompletionCache(const std::string& path, bool must_exist) : path_(path) {
  std::ifstream probe(path);
  if (!probe.good()) {
    if (must_exist) throw Error(ErrorClass::io, "cache file '" + path + "' does not exist");
    return;
  }
  probe.close();
  for_each_json_line(path, [&](const json& rec, int lineno) {
    CompletionRecord r;
    try {
      r.prompt_digest = rec.at("digest").get<std::string>();
      r.raw_text = rec.at("raw_text").get<std::string>();
      r.attempt = rec.value("attempt", 1);
      r.transport_status = transport_status_from_name(rec.value("status", "ok"));
      r.created_at = rec.value("created_at", "");
    } catch (const std::exception& e) {
      throw Error(ErrorClass::parse,
                  path + ":" + std::to_string(lineno) + ": bad cache record: " + e.what());
    }
    index_.emplace(cache_key(r.prompt_digest, r.attempt), std::move(r));
  });
}

bool CompletionCache::contains(const std::string& digest, int attempt) const {
  std::lock_guard<std::mutex> lock(mu_);
  return index_.count(cache_key(digest, attempt)) > 0;
}

std::optional<CompletionRecord> CompletionCache::get(const std::string& digest,
                                                     int attempt) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = index_.find(cache_key(digest, attempt));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void CompletionCache::put(const CompletionRecord& rec) {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = cache_key(rec.prompt_digest, rec.attempt);
  if (index_.count(key)) return;
  index_.emplace(key, rec);
  if (!path_.empty()) {
    json line;
    line["digest"] = rec.prompt_digest;
    line["attempt"] = rec.attempt;
    line["status"] = transport_status_name(rec.transport_status);
    line["created_at"] = rec.created_at;
    line["raw_text"] = rec.raw_text;
    append_line(path_, line.dump());
  }
}

std::size_t CompletionCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return index_.size();
}

Gateway::Gateway(GatewayOptions opts, std::shared_ptr<Transport> transport,
                 std::shared_ptr<CompletionCache> cache)
    : opts_(opts), transport_(std::move(transport)), cache_(std::move(cache)) {
  if (!cache_) cache_ = std::make_shared<CompletionCache>();
  slots_free_ = opts_.max_in_flight > 0 ? opts_.max_in_flight : 1;
}

CompletionRecord Gateway::complete(const PromptText& prompt, const CompletionParams& params,
                                   int attempt) {
  const std::string digest = completion_digest(prompt.text, params);
  if (opts_.mode == GatewayMode::replay) {
    auto hit = cache_->get(digest, attempt);
    if (!hit) {
      throw Error(ErrorClass::cache_miss, "no cached completion for digest " + digest +
                                              " attempt " + std::to_string(attempt));
    }
    return *hit;
  }
  if (opts_.mode == GatewayMode::record) {
    if (auto hit = cache_->get(digest, attempt)) return *hit;
  }
  CompletionRecord rec = perform(digest, prompt, params, attempt);
  if (opts_.mode == GatewayMode::record) cache_->put(rec);
  return rec;
}

CompletionRecord Gateway::perform(const std::string& digest, const PromptText& prompt,
                                  const CompletionParams& params, int attempt) {
  if (!transport_) throw Error(ErrorClass::config, "gateway has no transport configured");

  json body;
  body["model"] = params.model_name;
  body["prompt"] = prompt.text;
  body["temperature"] = params.temperature;
  body["max_tokens"] = params.max_tokens;
  if (!params.stop_sequences.empty()) body["stop"] = params.stop_sequences;
  const std::string payload = body.dump();

  std::string last_failure = "no attempt made";
  for (int tr = 1; tr <= opts_.transport_attempts; ++tr) {
    TransportResponse res;
    {
      // Bound the number of requests in flight across all worker threads.
      std::unique_lock<std::mutex> lock(slot_mu_);
      slot_cv_.wait(lock, [&] { return slots_free_ > 0; });
      --slots_free_;
      lock.unlock();
      transport_requests_.fetch_add(1);
      res = transport_->post(payload);
      lock.lock();
      ++slots_free_;
      slot_cv_.notify_one();
    }

    if (res.status == 200) {
      std::string text;
      try {
        auto parsed = json::parse(res.body);
        text = parsed.at("choices").at(0).at("text").get<std::string>();
      } catch (const std::exception& e) {
        throw Error(ErrorClass::transport,
                    "malformed completion response: " + std::string(e.what()));
      }
      CompletionRecord rec;
      rec.prompt_digest = digest;
      rec.raw_text = text;
      rec.attempt = attempt;
      rec.transport_status = TransportStatus::ok;
      rec.created_at = iso8601_utc_now();
      return rec;
    }

    bool retryable;
    std::int64_t delay = opts_.backoff_initial_ms << std::min(tr - 1, 20);
    if (res.status == 0) {
      retryable = true;
      last_failure = res.error.empty() ? "connection failed" : res.error;
    } else if (res.status == 429) {
      retryable = true;
      last_failure = "rate limited (429)";
      if (!res.retry_after.empty()) {
        try {
          delay = std::stoll(res.retry_after) * 1000;
        } catch (const std::exception&) {
          // fall back to the backoff schedule
        }
      }
    } else if (res.status >= 500) {
      retryable = true;
      last_failure = "server error (" + std::to_string(res.status) + ")";
    } else {
      throw Error(ErrorClass::transport,
                  "endpoint rejected request with status " + std::to_string(res.status));
    }

    if (retryable && tr < opts_.transport_attempts) {
      if (delay > 0) std::this_thread::sleep_for(std::chrono::milliseconds(delay));
      continue;
    }
    break;
  }
  throw Error(ErrorClass::transport, "transport failed after " +
                                         std::to_string(opts_.transport_attempts) +
                                         " attempts: " + last_failure);
}

}  // namespace pga
