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

#include "support/scripted.hpp"

#include <vector>

#include "pga/bracket.hpp"
#include "pga/util.hpp"

namespace pga::testing {

std::string valid_paraphrase_completion(const Sample& origin) {
  return "Indeed , " + render_bracketed(origin);
}

std::string defective_paraphrase_completion(const Sample& origin) {
  // Remove the final bracket pair but keep its text: one entity missing.
  std::string text = valid_paraphrase_completion(origin);
  auto close = text.rfind(']');
  if (close != std::string::npos) text.erase(close, 1);
  auto open = text.rfind('[');
  if (open != std::string::npos) text.erase(open, 1);
  return text;
}

std::string valid_generate_completion(const GenerateInput& g) {
  if (g.entities.empty()) return kSentinelOutput;
  std::string out = "We study";
  for (std::size_t i = 0; i < g.entities.size(); ++i) {
    out += i == 0 ? " " : " and ";
    out += "[" + g.entities[i].first + "]";
  }
  out += " in this work .";
  return out;
}

std::string defective_generate_completion(const GenerateInput& g) {
  GenerateInput trimmed = g;
  if (!trimmed.entities.empty()) trimmed.entities.pop_back();
  trimmed.relations.clear();
  if (trimmed.entities.empty()) return "We study nothing here .";
  return valid_generate_completion(trimmed);
}

void build_replay_cache(const std::vector<Sample>& samples, const AugmentPolicy& policy,
                        const PromptTemplates& templates, const std::vector<bool>& defect_at,
                        CompletionCache& cache) {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    const bool defective = i < defect_at.size() && defect_at[i];
    PromptText prompt;
    std::string valid, broken;
    if (policy.method == AugmentMethod::paraphrase) {
      if (!s.bracketable()) continue;
      prompt = build_paraphrase_prompt(s, templates);
      valid = valid_paraphrase_completion(s);
      broken = defective_paraphrase_completion(s);
    } else {
      GenerateInput g = make_generate_input(s);
      prompt = build_generate_prompt(g, s.id, templates);
      valid = valid_generate_completion(g);
      broken = defective_generate_completion(g);
    }
    const std::string digest = completion_digest(prompt.text, policy.params);
    CompletionRecord first;
    first.prompt_digest = digest;
    first.attempt = 1;
    first.raw_text = defective ? broken : valid;
    first.transport_status = TransportStatus::ok;
    first.created_at = "2026-01-01T00:00:00Z";
    cache.put(first);
    if (defective && policy.method == AugmentMethod::paraphrase) {
      CompletionRecord second = first;
      second.attempt = 2;
      second.raw_text = valid;
      cache.put(second);
    }
  }
}

TransportResponse ScriptedTransport::post(const std::string& json_body) {
  calls_.fetch_add(1);
  TransportResponse res;
  res.status = 200;
  std::string prompt;
  try {
    auto body = json::parse(json_body);
    prompt = body.at("prompt").get<std::string>();
  } catch (const std::exception& e) {
    res.status = 400;
    res.body = e.what();
    return res;
  }
  json reply;
  reply["choices"] = json::array({json{{"text", responder_(prompt)}}});
  res.body = reply.dump();
  return res;
}

TransportResponse FlakyTransport::post(const std::string& json_body) {
  calls_.fetch_add(1);
  if (failures_.fetch_sub(1) > 0) {
    TransportResponse res;
    res.status = 0;
    res.error = "scripted connection failure";
    return res;
  }
  failures_.fetch_add(1);  // keep the counter from sinking forever
  return inner_->post(json_body);
}

TransportResponse BombTransport::post(const std::string&) {
  calls_.fetch_add(1);
  TransportResponse res;
  res.status = 0;
  res.error = "transport used in a replay-only context";
  return res;
}

TransportResponse BudgetTransport::post(const std::string& json_body) {
  if (budget_.fetch_sub(1) > 0) return inner_->post(json_body);
  TransportResponse res;
  res.status = 0;
  res.error = "scripted budget exhausted";
  return res;
}

std::string mutate_completion(const std::string& valid, MutationKind kind, std::uint64_t salt) {
  // Collect bracket pair positions.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t open = std::string::npos;
  for (std::size_t i = 0; i < valid.size(); ++i) {
    if (valid[i] == '[') open = i;
    if (valid[i] == ']' && open != std::string::npos) {
      pairs.emplace_back(open, i);
      open = std::string::npos;
    }
  }
  std::string out = valid;
  switch (kind) {
    case MutationKind::drop_pair: {
      if (pairs.empty()) return out + " ]";
      auto [b, e] = pairs[salt % pairs.size()];
      out.erase(e, 1);
      out.erase(b, 1);
      return out;
    }
    case MutationKind::rename_surface: {
      if (pairs.empty()) return out + " ]";
      auto [b, e] = pairs[salt % pairs.size()];
      out.replace(b + 1, e - b - 1, "unheardof" + std::to_string(salt % 97));
      return out;
    }
    case MutationKind::insert_pair:
      return out + " [unheardof" + std::to_string(salt % 97) + "]";
    case MutationKind::unbalance:
      return out + " ]";
  }
  return out;
}

DefectClass expected_defect(MutationKind kind) {
  switch (kind) {
    case MutationKind::drop_pair: return DefectClass::missing_entity;
    case MutationKind::rename_surface: return DefectClass::entity_set_mismatch;
    case MutationKind::insert_pair: return DefectClass::extra_entity;
    case MutationKind::unbalance: return DefectClass::unbalanced_brackets;
  }
  return DefectClass::empty_output;
}

}  // namespace pga::testing
