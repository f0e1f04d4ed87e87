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
// Augmentation runs and training-set assembly. A run walks the input
// samples in order, builds the method's prompt, completes it through the
// gateway and post-processes the completion. Paraphrase defects are
// re-synthesized with the identical prompt up to the retry cap; generate
// defects are discarded outright.

#ifndef PGA_AUGMENT_HPP
#define PGA_AUGMENT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pga/gateway.hpp"
#include "pga/postproc.hpp"
#include "pga/prompt.hpp"
#include "pga/types.hpp"

namespace pga {

struct AugmentPolicy {
  AugmentMethod method = AugmentMethod::paraphrase;
  // Re-synthesis rounds after a defective first attempt. Generate runs
  // must keep this at 0: their defects are discarded, not retried.
  int max_semantic_retries = 5;
  CompletionParams params;

  static AugmentPolicy defaults(AugmentMethod method);
  void validate() const;
};

struct RunReport {
  std::string method;
  std::string mode;
  std::size_t inputs = 0;
  std::size_t produced = 0;
  std::size_t skipped_unbracketable = 0;
  std::size_t benign_drops = 0;
  std::size_t discarded = 0;
  std::size_t attempts_total = 0;
  std::size_t transport_requests = 0;
  std::size_t first_attempt_defects = 0;
  // Defective attempts by class, all attempts counted; benign sentinel
  // drops are excluded.
  std::map<std::string, std::size_t> defects;
  // first_attempt_defects / inputs.
  double defect_rate = 0.0;

  json to_json() const;
  std::string summary() const;
  // produced + discarded + skipped + benign drops must cover the inputs.
  bool consistent() const;
};

struct RunOptions {
  // When nonempty, rejected completions are appended here as JSON lines.
  std::string defect_log_path;
  // Live/record runs persist per-sample outcomes here and resume from the
  // file when it already exists. Replay runs ignore it.
  std::string checkpoint_path;
  // Worker threads; results are assembled in origin order regardless.
  int concurrency = 1;
};

struct RunOutput {
  std::vector<Sample> pseudo;  // origin order; ids pga_<p|g>_<counter>
  RunReport report;
};

RunOutput run_augment(const std::vector<Sample>& samples, const AugmentPolicy& policy,
                      Gateway& gateway, const PromptTemplates& templates,
                      const RunOptions& options = {});

// Original first, then the pseudo sets in the given order. Ids must stay
// unique across the result.
std::vector<Sample> combine(const std::vector<Sample>& original,
                            const std::vector<std::vector<Sample>>& pseudo_sets);

// Uniform sample without replacement; deterministic for a seed; keeps the
// input order of the selected elements.
std::vector<Sample> subset(const std::vector<Sample>& pseudo, std::size_t n, std::uint64_t seed);

// Pseudo-samples re-labeled as a standalone training split.
SampleSet sole(const std::vector<Sample>& pseudo);

}  // namespace pga

#endif  // PGA_AUGMENT_HPP
