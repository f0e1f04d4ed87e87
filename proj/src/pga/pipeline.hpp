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
// Config-driven entry points shared by the C API and the CLI. Each run
// writes its artifacts into the configured output directory and also
// returns them, so callers never re-derive paths.

#ifndef PGA_PIPELINE_HPP
#define PGA_PIPELINE_HPP

#include <memory>
#include <string>
#include <vector>

#include "pga/augment.hpp"
#include "pga/config.hpp"
#include "pga/fidelity.hpp"
#include "pga/gateway.hpp"
#include "pga/types.hpp"

namespace pga {

AugmentPolicy policy_from_config(const RunConfig& cfg);
GatewayOptions gateway_options_from_config(const RunConfig& cfg);
PromptTemplates templates_from_config(const RunConfig& cfg);
std::unique_ptr<Gateway> gateway_from_config(const RunConfig& cfg);

// Runs augmentation over `input` and, when `out` is configured, writes
//   <out>/pseudo_<method>.jsonl
//   <out>/report_<method>.json
//   <out>/defects_<method>.jsonl
// Live/record runs keep a resumable checkpoint_<method>.jsonl next to them.
RunOutput augment_from_config(const RunConfig& cfg, const std::vector<Sample>& input);

struct FidelityOutput {
  json report;             // per-group pair stats
  std::string csv;         // x,y,group projection
  std::string report_path; // empty when no out dir configured
  std::string csv_path;
};

// Pairs each pseudo set against its origin sentences (matched by
// origin_id), embeds both sides and reports per-pair cosines plus a 2D
// projection. Pair selection takes the first `fidelity_pairs` bracketable
// origins, or a seeded subset when fidelity_seed is set.
FidelityOutput fidelity_from_config(const RunConfig& cfg, const std::vector<Sample>& originals,
                                    const std::vector<std::vector<Sample>>& pseudo_sets);

}  // namespace pga

#endif  // PGA_PIPELINE_HPP
