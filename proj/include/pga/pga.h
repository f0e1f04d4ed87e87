/* Copyright 2026 The PGA Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the PGA augmentation toolchain.
 *
 * All functions return PGA_OK (0) on success or a nonzero status; the
 * thread-local message from pga_last_error() describes the failure.
 * Objects are opaque handles created and released through their own
 * new/free pairs. Strings returned through char** out-parameters are
 * heap-allocated and must be released with pga_string_free().
 */

#ifndef PGA_PGA_H
#define PGA_PGA_H

#include <stddef.h>
#include <stdint.h>

#if defined _WIN32
#define PGA_API __declspec(dllexport)
#else
#define PGA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pga_status {
  PGA_OK = 0,
  PGA_ERR_IO = 1,
  PGA_ERR_PARSE = 2,
  PGA_ERR_VALIDATION = 3,
  PGA_ERR_CONFIG = 4,
  PGA_ERR_TRANSPORT = 5,
  PGA_ERR_CACHE_MISS = 6,
  PGA_ERR_UNSUPPORTED = 7,
  PGA_ERR_INTERNAL = 8
} pga_status;

/* Machine-parsable class token, e.g. "io_error". */
PGA_API const char* pga_status_name(pga_status status);
/* Detail message from the calling thread's most recent failure. */
PGA_API const char* pga_last_error(void);

PGA_API void pga_string_free(char* s);

/* ---- configuration ------------------------------------------------- */

typedef struct pga_config pga_config;

PGA_API pga_config* pga_config_new(void);
PGA_API void pga_config_free(pga_config* cfg);
/* Flat key=value file; '#' comments. Unknown keys are rejected. */
PGA_API pga_status pga_config_load_file(pga_config* cfg, const char* path);
PGA_API pga_status pga_config_set(pga_config* cfg, const char* key, const char* value);
/* NULL when the key is unset; the pointer stays valid until the next
 * mutation of cfg. */
PGA_API const char* pga_config_get(const pga_config* cfg, const char* key);

/* ---- sample sets ---------------------------------------------------- */

typedef struct pga_samples pga_samples;

/* format: "scierc", "spert", "marker", "pga" or "auto". */
PGA_API pga_status pga_samples_load(const char* path, const char* format, pga_samples** out);
PGA_API void pga_samples_free(pga_samples* samples);
PGA_API size_t pga_samples_count(const pga_samples* samples);
/* {"samples", "entities", "relations", "entity_types", "relation_types"} */
PGA_API pga_status pga_samples_stats_json(const pga_samples* samples, char** out_json);
/* Pooled statistics over several sets; duplicate ids are fine here. */
PGA_API pga_status pga_samples_stats_total_json(const pga_samples* const* sets, size_t n_sets,
                                                char** out_json);
/* format: "scierc", "spert" or "marker". */
PGA_API pga_status pga_samples_export(const pga_samples* samples, const char* format,
                                      const char* path);
/* The pga line format; lossless, keeps pseudo-sample provenance. */
PGA_API pga_status pga_samples_save(const pga_samples* samples, const char* path);

/* ---- pipeline operations -------------------------------------------- */

/* Augments `input` according to the config (method, mode, cache, endpoint,
 * out, ...). On success *out_pseudo holds the synthesized samples and
 * *out_report_json the run report. Either out-pointer may be NULL. */
PGA_API pga_status pga_augment(const pga_config* cfg, const pga_samples* input,
                               pga_samples** out_pseudo, char** out_report_json);

/* Concatenates the sets in order (original first). Ids must stay unique. */
PGA_API pga_status pga_combine(const pga_samples* const* sets, size_t n_sets, pga_samples** out);

/* Uniform seeded sample without replacement, input order preserved. */
PGA_API pga_status pga_subset(const pga_samples* samples, size_t n, uint64_t seed,
                              pga_samples** out);

/* Re-labels pseudo-samples as a standalone training split. */
PGA_API pga_status pga_sole(const pga_samples* samples, pga_samples** out);

/* Scores a prediction file against gold samples. symmetric_swap != 0
 * lets Compare/Conjunction match with swapped endpoints. */
PGA_API pga_status pga_score(const pga_samples* gold, const char* predictions_path,
                             int symmetric_swap, char** out_report_json);

/* Embeds origin/pseudo sentence pairs and writes projection.csv plus
 * fidelity_report.json into the configured out directory. */
PGA_API pga_status pga_fidelity(const pga_config* cfg, const pga_samples* originals,
                                const pga_samples* const* pseudo_sets, size_t n_sets,
                                char** out_report_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PGA_PGA_H */
