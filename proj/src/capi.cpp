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

#include "pga/pga.h"

#include <cstring>
#include <string>

#include "pga/augment.hpp"
#include "pga/config.hpp"
#include "pga/corpus.hpp"
#include "pga/pipeline.hpp"
#include "pga/score.hpp"
#include "pga/types.hpp"
#include "pga/util.hpp"

struct pga_config {
  pga::RunConfig impl;
};

struct pga_samples {
  pga::SampleSet impl;
};

namespace {

thread_local std::string g_last_error;

pga_status status_of(pga::ErrorClass cls) {
  switch (cls) {
    case pga::ErrorClass::io: return PGA_ERR_IO;
    case pga::ErrorClass::parse: return PGA_ERR_PARSE;
    case pga::ErrorClass::validation: return PGA_ERR_VALIDATION;
    case pga::ErrorClass::config: return PGA_ERR_CONFIG;
    case pga::ErrorClass::transport: return PGA_ERR_TRANSPORT;
    case pga::ErrorClass::cache_miss: return PGA_ERR_CACHE_MISS;
    case pga::ErrorClass::unsupported: return PGA_ERR_UNSUPPORTED;
    case pga::ErrorClass::internal: return PGA_ERR_INTERNAL;
  }
  return PGA_ERR_INTERNAL;
}

// Every entry point funnels through here so no exception escapes the
// library boundary.
template <typename Fn>
pga_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return PGA_OK;
  } catch (const pga::Error& e) {
    g_last_error = e.what();
    return status_of(e.cls());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PGA_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return PGA_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pga_status invalid_argument(const char* what) {
  g_last_error = what;
  return PGA_ERR_VALIDATION;
}

}  // namespace

extern "C" {

const char* pga_status_name(pga_status status) {
  switch (status) {
    case PGA_OK: return "ok";
    case PGA_ERR_IO: return "io_error";
    case PGA_ERR_PARSE: return "parse_error";
    case PGA_ERR_VALIDATION: return "validation_error";
    case PGA_ERR_CONFIG: return "config_error";
    case PGA_ERR_TRANSPORT: return "transport_error";
    case PGA_ERR_CACHE_MISS: return "cache_miss";
    case PGA_ERR_UNSUPPORTED: return "unsupported";
    case PGA_ERR_INTERNAL: return "internal_error";
  }
  return "internal_error";
}

const char* pga_last_error(void) { return g_last_error.c_str(); }

void pga_string_free(char* s) { delete[] s; }

pga_config* pga_config_new(void) { return new pga_config(); }

void pga_config_free(pga_config* cfg) { delete cfg; }

pga_status pga_config_load_file(pga_config* cfg, const char* path) {
  if (!cfg || !path) return invalid_argument("null argument");
  return guarded([&] { cfg->impl.load_file(path); });
}

pga_status pga_config_set(pga_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return invalid_argument("null argument");
  return guarded([&] { cfg->impl.set(key, value); });
}

const char* pga_config_get(const pga_config* cfg, const char* key) {
  if (!cfg || !key) return nullptr;
  auto it = cfg->impl.values().find(key);
  return it == cfg->impl.values().end() ? nullptr : it->second.c_str();
}

pga_status pga_samples_load(const char* path, const char* format, pga_samples** out) {
  if (!path || !out) return invalid_argument("null argument");
  return guarded([&] {
    auto set = pga::load_samples(path, format ? format : "auto");
    *out = new pga_samples{std::move(set)};
  });
}

void pga_samples_free(pga_samples* samples) { delete samples; }

size_t pga_samples_count(const pga_samples* samples) {
  return samples ? samples->impl.items.size() : 0;
}

namespace {

char* stats_json(const pga::DatasetStats& st) {
  pga::json j;
  j["samples"] = st.sample_count;
  j["entities"] = st.entity_count;
  j["relations"] = st.relation_count;
  j["entity_types"] = st.entity_type_count;
  j["relation_types"] = st.relation_type_count;
  return dup_string(j.dump());
}

}  // namespace

pga_status pga_samples_stats_json(const pga_samples* samples, char** out_json) {
  if (!samples || !out_json) return invalid_argument("null argument");
  return guarded([&] { *out_json = stats_json(pga::compute_stats(samples->impl.items)); });
}

pga_status pga_samples_stats_total_json(const pga_samples* const* sets, size_t n_sets,
                                        char** out_json) {
  if (!sets || !out_json || n_sets == 0) return invalid_argument("null argument");
  return guarded([&] {
    std::vector<pga::Sample> pooled;
    for (size_t i = 0; i < n_sets; ++i) {
      if (!sets[i]) throw pga::Error(pga::ErrorClass::validation, "null sample set");
      pooled.insert(pooled.end(), sets[i]->impl.items.begin(), sets[i]->impl.items.end());
    }
    *out_json = stats_json(pga::compute_stats(pooled));
  });
}

pga_status pga_samples_export(const pga_samples* samples, const char* format, const char* path) {
  if (!samples || !format || !path) return invalid_argument("null argument");
  return guarded([&] { pga::export_samples(samples->impl.items, format, path); });
}

pga_status pga_samples_save(const pga_samples* samples, const char* path) {
  if (!samples || !path) return invalid_argument("null argument");
  return guarded([&] { pga::save_pga(samples->impl.items, path); });
}

pga_status pga_augment(const pga_config* cfg, const pga_samples* input, pga_samples** out_pseudo,
                       char** out_report_json) {
  if (!cfg || !input) return invalid_argument("null argument");
  return guarded([&] {
    auto result = pga::augment_from_config(cfg->impl, input->impl.items);
    if (out_report_json) *out_report_json = dup_string(result.report.to_json().dump());
    if (out_pseudo) {
      *out_pseudo = new pga_samples{{pga::Split::pseudo, std::move(result.pseudo)}};
    }
  });
}

pga_status pga_combine(const pga_samples* const* sets, size_t n_sets, pga_samples** out) {
  if (!sets || !out || n_sets == 0) return invalid_argument("null argument");
  return guarded([&] {
    for (size_t i = 0; i < n_sets; ++i) {
      if (!sets[i]) throw pga::Error(pga::ErrorClass::validation, "null sample set");
    }
    std::vector<std::vector<pga::Sample>> rest;
    for (size_t i = 1; i < n_sets; ++i) rest.push_back(sets[i]->impl.items);
    auto combined = pga::combine(sets[0]->impl.items, rest);
    *out = new pga_samples{{pga::Split::train, std::move(combined)}};
  });
}

pga_status pga_subset(const pga_samples* samples, size_t n, uint64_t seed, pga_samples** out) {
  if (!samples || !out) return invalid_argument("null argument");
  return guarded([&] {
    auto picked = pga::subset(samples->impl.items, n, seed);
    *out = new pga_samples{{samples->impl.split, std::move(picked)}};
  });
}

pga_status pga_sole(const pga_samples* samples, pga_samples** out) {
  if (!samples || !out) return invalid_argument("null argument");
  return guarded([&] { *out = new pga_samples{pga::sole(samples->impl.items)}; });
}

pga_status pga_score(const pga_samples* gold, const char* predictions_path, int symmetric_swap,
                     char** out_report_json) {
  if (!gold || !predictions_path || !out_report_json) return invalid_argument("null argument");
  return guarded([&] {
    auto preds = pga::load_predictions(predictions_path);
    pga::ScoreOptions options;
    options.symmetric_swap = symmetric_swap != 0;
    auto report = pga::score(gold->impl.items, preds, options);
    *out_report_json = dup_string(report.to_json().dump());
  });
}

pga_status pga_fidelity(const pga_config* cfg, const pga_samples* originals,
                        const pga_samples* const* pseudo_sets, size_t n_sets,
                        char** out_report_json) {
  if (!cfg || !originals || (!pseudo_sets && n_sets > 0)) {
    return invalid_argument("null argument");
  }
  return guarded([&] {
    std::vector<std::vector<pga::Sample>> sets;
    for (size_t i = 0; i < n_sets; ++i) {
      if (!pseudo_sets[i]) throw pga::Error(pga::ErrorClass::validation, "null sample set");
      sets.push_back(pseudo_sets[i]->impl.items);
    }
    auto result = pga::fidelity_from_config(cfg->impl, originals->impl.items, sets);
    if (out_report_json) *out_report_json = dup_string(result.report.dump());
  });
}

}  // extern "C"
