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

#include "pga/pipeline.hpp"

#include <filesystem>
#include <map>
#include <set>

#include "pga/bracket.hpp"
#include "pga/corpus.hpp"
#include "pga/util.hpp"

namespace pga {

namespace {

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    auto comma = value.find(',', start);
    if (comma == std::string::npos) {
      auto piece = trim(value.substr(start));
      if (!piece.empty()) out.push_back(piece);
      break;
    }
    auto piece = trim(value.substr(start, comma - start));
    if (!piece.empty()) out.push_back(piece);
    start = comma + 1;
  }
  return out;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  auto out = cfg.get("out");
  if (!out || out->empty()) return "";
  std::filesystem::create_directories(*out);
  return (std::filesystem::path(*out) / name).string();
}

}  // namespace

AugmentPolicy policy_from_config(const RunConfig& cfg) {
  AugmentPolicy policy = AugmentPolicy::defaults(augment_method_from_name(cfg.require("method")));
  policy.params.model_name = cfg.get_or("model", policy.params.model_name);
  policy.params.temperature = cfg.get_double("temperature", policy.params.temperature);
  policy.params.max_tokens = static_cast<int>(cfg.get_int("max_tokens", policy.params.max_tokens));
  if (auto stop = cfg.get("stop")) policy.params.stop_sequences = split_list(*stop);
  if (policy.method == AugmentMethod::paraphrase) {
    policy.max_semantic_retries = static_cast<int>(cfg.get_int("retry_cap", 5));
  }
  policy.validate();
  return policy;
}

GatewayOptions gateway_options_from_config(const RunConfig& cfg) {
  GatewayOptions opts;
  opts.mode = gateway_mode_from_name(cfg.get_or("mode", "replay"));
  opts.transport_attempts = static_cast<int>(cfg.get_int("transport_retries", 5));
  opts.backoff_initial_ms = cfg.get_int("backoff_ms", 1000);
  opts.max_in_flight = static_cast<int>(cfg.get_int("concurrency", 4));
  if (opts.transport_attempts < 1) {
    throw Error(ErrorClass::config, "transport_retries must be at least 1");
  }
  return opts;
}

PromptTemplates templates_from_config(const RunConfig& cfg) {
  if (auto dir = cfg.get("template_dir")) return PromptTemplates::from_directory(*dir);
  return PromptTemplates();
}

std::unique_ptr<Gateway> gateway_from_config(const RunConfig& cfg) {
  GatewayOptions opts = gateway_options_from_config(cfg);
  std::shared_ptr<Transport> transport;
  if (opts.mode != GatewayMode::replay) {
    transport = std::make_shared<HttpTransport>(cfg.require("endpoint_url"));
  }
  std::shared_ptr<CompletionCache> cache;
  if (auto path = cfg.get("cache"); path && !path->empty()) {
    cache = std::make_shared<CompletionCache>(*path,
                                              /*must_exist=*/opts.mode == GatewayMode::replay);
  } else if (opts.mode != GatewayMode::live) {
    throw Error(ErrorClass::config,
                "mode '" + gateway_mode_name(opts.mode) + "' needs a cache path");
  }
  return std::make_unique<Gateway>(opts, transport, cache);
}

RunOutput augment_from_config(const RunConfig& cfg, const std::vector<Sample>& input) {
  AugmentPolicy policy = policy_from_config(cfg);
  PromptTemplates templates = templates_from_config(cfg);
  auto gateway = gateway_from_config(cfg);

  const std::string& method = augment_method_name(policy.method);
  RunOptions options;
  options.concurrency = static_cast<int>(cfg.get_int("concurrency", 4));
  options.defect_log_path = out_path(cfg, "defects_" + method + ".jsonl");
  if (cfg.get_or("resume", "auto") != "off") {
    options.checkpoint_path = out_path(cfg, "checkpoint_" + method + ".jsonl");
  }

  RunOutput out = run_augment(input, policy, *gateway, templates, options);

  if (auto pseudo_path = out_path(cfg, "pseudo_" + method + ".jsonl"); !pseudo_path.empty()) {
    save_pga(out.pseudo, pseudo_path);
    write_file(out_path(cfg, "report_" + method + ".json"), out.report.to_json().dump(2) + "\n");
  }
  return out;
}

FidelityOutput fidelity_from_config(const RunConfig& cfg, const std::vector<Sample>& originals,
                                    const std::vector<std::vector<Sample>>& pseudo_sets) {
  const std::size_t max_pairs = static_cast<std::size_t>(cfg.get_int("fidelity_pairs", 400));

  std::unique_ptr<EmbeddingProvider> provider;
  if (auto file = cfg.get("embed_vectors"); file && !file->empty()) {
    provider = make_file_provider(*file);
  } else if (auto url = cfg.get("embed_endpoint"); url && !url->empty()) {
    provider = make_http_provider(*url, cfg.get_or("embed_model", "all-MiniLM-L6-v2"),
                                  static_cast<std::size_t>(cfg.get_int("embed_batch", 64)));
  } else {
    throw Error(ErrorClass::config, "fidelity needs embed_vectors or embed_endpoint");
  }
  const std::string embed_cache = cfg.get_or("embed_cache", "");

  std::map<std::string, const Sample*> origin_by_id;
  for (const auto& s : originals) origin_by_id.emplace(s.id, &s);

  struct GroupPairs {
    std::string tag;
    std::vector<std::string> origin_sentences;
    std::vector<std::string> pseudo_sentences;
  };
  std::vector<GroupPairs> groups;
  for (const auto& set : pseudo_sets) {
    GroupPairs g;
    g.tag = set.empty() || !set.front().pseudo
                ? "pseudo"
                : augment_method_name(set.front().pseudo->method);
    // First pseudo per bracketable origin, in origin order.
    std::map<std::string, const Sample*> pseudo_by_origin;
    for (const auto& ps : set) {
      if (!ps.pseudo) continue;
      pseudo_by_origin.emplace(ps.pseudo->origin_id, &ps);
    }
    std::vector<std::pair<const Sample*, const Sample*>> eligible;
    for (const auto& orig : originals) {
      if (!orig.bracketable()) continue;
      auto it = pseudo_by_origin.find(orig.id);
      if (it == pseudo_by_origin.end()) continue;
      eligible.emplace_back(&orig, it->second);
    }
    std::vector<std::size_t> picks;
    const std::size_t take = std::min(max_pairs, eligible.size());
    if (cfg.has("fidelity_seed")) {
      picks = seeded_subset(eligible.size(), take,
                            static_cast<std::uint64_t>(cfg.get_int("fidelity_seed", 0)));
    } else {
      for (std::size_t i = 0; i < take; ++i) picks.push_back(i);
    }
    for (auto i : picks) {
      g.origin_sentences.push_back(eligible[i].first->sentence());
      g.pseudo_sentences.push_back(eligible[i].second->sentence());
    }
    groups.push_back(std::move(g));
  }

  // One embedding batch over everything; the cache dedups repeats.
  std::vector<std::string> all;
  for (const auto& g : groups) {
    all.insert(all.end(), g.origin_sentences.begin(), g.origin_sentences.end());
    all.insert(all.end(), g.pseudo_sentences.begin(), g.pseudo_sentences.end());
  }
  if (all.size() < 2) {
    throw Error(ErrorClass::validation, "fidelity needs at least one origin/pseudo pair");
  }
  auto vectors = embed_sentences(all, *provider, embed_cache);

  FidelityOutput out;
  out.report = json::object();
  json pair_stats = json::object();
  std::vector<EmbeddingVector> proj_vectors;
  std::vector<std::string> proj_tags;
  std::set<std::string> seen_origin;
  std::size_t cursor = 0;
  for (const auto& g : groups) {
    const std::size_t n = g.origin_sentences.size();
    std::vector<EmbeddingVector> ov(vectors.begin() + cursor, vectors.begin() + cursor + n);
    std::vector<EmbeddingVector> pv(vectors.begin() + cursor + n,
                                    vectors.begin() + cursor + 2 * n);
    cursor += 2 * n;
    pair_stats[g.tag] = cosine_pairs(ov, pv).to_json();
    for (std::size_t i = 0; i < n; ++i) {
      // The same origin sentence can back both groups; plot it once.
      if (seen_origin.insert(sha256_hex(g.origin_sentences[i])).second) {
        proj_vectors.push_back(ov[i]);
        proj_tags.push_back("original");
      }
      proj_vectors.push_back(pv[i]);
      proj_tags.push_back(g.tag);
    }
  }
  out.report["pairs"] = std::move(pair_stats);

  auto points = project_2d(proj_vectors, proj_tags);
  out.csv = projection_to_csv(points);
  out.report["projection_points"] = points.size();

  if (auto csv_path = out_path(cfg, "projection.csv"); !csv_path.empty()) {
    write_file(csv_path, out.csv);
    out.csv_path = csv_path;
    out.report_path = out_path(cfg, "fidelity_report.json");
    write_file(out.report_path, out.report.dump(2) + "\n");
  }
  return out;
}

}  // namespace pga
