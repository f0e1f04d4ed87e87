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
// Corpus I/O. Three on-disk layouts are understood:
//
//   scierc  line-delimited JSON documents:
//           {"doc_key": str, "sentences": [[token, ...], ...],
//            "ner": [[[start, end, type], ...], ...],
//            "relations": [[[s1, e1, s2, e2, type], ...], ...]}
//           Offsets are document-level token indices with INCLUSIVE ends;
//           they are converted to per-sentence half-open spans at load.
//           Extra keys (e.g. coreference clusters) are ignored.
//
//   marker  same schema as scierc but always one document per sample.
//
//   spert   a single JSON array of records:
//           {"tokens": [...], "entities": [{"type", "start", "end"}, ...],
//            "relations": [{"type", "head", "tail"}, ...], "orig_id": str}
//           Token offsets are sentence-level with EXCLUSIVE ends; head/tail
//           index the entity list.
//
//   pga     the pipeline's own line-delimited sample format, the only one
//           that carries pseudo-sample provenance:
//           {"id", "tokens", "entities": [[start, end, type], ...],
//            "relations": [[subject, object, type], ...],
//            "method"?, "origin_id"?, "attempts"?}
//           Sentence-level offsets, exclusive ends.

#ifndef PGA_CORPUS_HPP
#define PGA_CORPUS_HPP

#include <string>
#include <vector>

#include "pga/types.hpp"
#include "pga/util.hpp"

namespace pga {

DocumentSet load_scierc(const std::string& path, Split split = Split::train);

std::vector<Sample> flatten(const DocumentSet& ds);

SampleSet load_spert(const std::string& path, Split split = Split::train);
SampleSet load_pga(const std::string& path, Split split = Split::train);

// format: scierc | spert | marker | pga | auto (sniffed from content).
SampleSet load_samples(const std::string& path, const std::string& format,
                       Split split = Split::train);

DatasetStats compute_stats(const std::vector<Sample>& samples);

// format: scierc | spert | marker. scierc regroups consecutive samples whose
// ids share a "<doc_key>#<index>" prefix back into multi-sentence documents;
// marker always writes one document per sample. Samples with generate/
// paraphrase provenance and no counter-style id get doc keys
// "pga_<p|g>_<6-digit counter>" assigned in order.
void export_samples(const std::vector<Sample>& samples, const std::string& format,
                    const std::string& path);

// Writes the pga line format (lossless, provenance included).
void save_pga(const std::vector<Sample>& samples, const std::string& path);

// Serialization of one sample as a pga-format JSON object (used by the
// checkpoint file as well).
json sample_to_json(const Sample& s);
Sample sample_from_json(const json& rec, const std::string& where);

}  // namespace pga

#endif  // PGA_CORPUS_HPP
