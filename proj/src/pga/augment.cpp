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

#include "pga/augment.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "pga/corpus.hpp"
#include "pga/util.hpp"

namespace pga {

AugmentPolicy AugmentPolicy::defaults(AugmentMethod method) {
  AugmentPolicy p;
  p.method = method;
  p.max_semantic_retries = method == AugmentMethod::paraphrase ? 5 : 0;
  p.params = default_params(method);
  return p;
}

void AugmentPolicy::validate() const {
  if (max_semantic_retries < 0) {
    throw Error(ErrorClass::config, "max_semantic_retries must be non-negative");
  }
  if (method == AugmentMethod::generate && max_semantic_retries != 0) {
    throw Error(ErrorClass::config, "generate runs discard defects; retries must be 0");
  }
  if (params.temperature < 0.0 || params.temperature > 2.0) {
    throw Error(ErrorClass::config, "temperature must lie in [0, 2]");
  }
  if (params.max_tokens <= 0) {
    throw Error(ErrorClass::config, "max_tokens must be positive");
  }
}

json RunReport::to_json() const {
  json j;
  j["method"] = method;
  j["mode"] = mode;
  j["inputs"] = inputs;
  j["produced"] = produced;
  j["skipped_unbracketable"] = skipped_unbracketable;
  j["benign_drops"] = benign_drops;
  j["discarded"] = discarded;
  j["attempts_total"] = attempts_total;
  j["transport_requests"] = transport_requests;
  j["first_attempt_defects"] = first_attempt_defects;
  j["defect_rate"] = defect_rate;
  json d = json::object();
  for (const auto& [cls, n] : defects) d[cls] = n;
  j["defects"] = std::move(d);
  return j;
}

std::string RunReport::summary() const {
  std::ostringstream out;
  out << method << " run (" << mode << "): " << produced << "/" << inputs << " produced";
  if (skipped_unbracketable) out << ", " << skipped_unbracketable << " skipped (unbracketable)";
  if (benign_drops) out << ", " << benign_drops << " empty-label drops";
  if (discarded) out << ", " << discarded << " discarded";
  char rate[32];
  std::snprintf(rate, sizeof(rate), "%.2f", defect_rate * 100.0);
  out << "; first-attempt defect rate " << rate << "% (" << first_attempt_defects << "/" << inputs
      << "), " << attempts_total << " attempts, " << transport_requests << " transport requests";
  for (const auto& [cls, n] : defects) out << "\n  defect " << cls << ": " << n;
  return out.str();
}

bool RunReport::consistent() const {
  return produced + discarded + skipped_unbracketable + benign_drops == inputs;
}

namespace {

enum class OutcomeKind { produced, discarded, skipped, benign };

const char* outcome_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::produced: return "produced";
    case OutcomeKind::discarded: return "discarded";
    case OutcomeKind::skipped: return "skipped";
    case OutcomeKind::benign: return "benign";
  }
  return "discarded";
}

OutcomeKind outcome_from_name(const std::string& s) {
  if (s == "produced") return OutcomeKind::produced;
  if (s == "discarded") return OutcomeKind::discarded;
  if (s == "skipped") return OutcomeKind::skipped;
  if (s == "benign") return OutcomeKind::benign;
  throw Error(ErrorClass::parse, "unknown checkpoint outcome '" + s + "'");
}

struct Outcome {
  OutcomeKind kind = OutcomeKind::discarded;
  std::optional<Sample> pseudo;
  int attempts = 0;
  std::optional<DefectClass> first_attempt_defect;
  std::vector<DefectLogEntry> log;
};

json outcome_to_json(const std::string& origin_id, const Outcome& o) {
  json j;
  j["origin_id"] = origin_id;
  j["outcome"] = outcome_name(o.kind);
  j["attempts"] = o.attempts;
  json defs = json::array();
  for (const auto& e : o.log) defs.push_back(defect_log_entry_to_json(e));
  j["defects"] = std::move(defs);
  if (o.pseudo) j["pseudo"] = sample_to_json(*o.pseudo);
  return j;
}

Outcome outcome_from_json(const json& j, const std::string& where) {
  Outcome o;
  o.kind = outcome_from_name(j.at("outcome").get<std::string>());
  o.attempts = j.at("attempts").get<int>();
  for (const auto& d : j.at("defects")) {
    DefectLogEntry e;
    e.origin_id = d.at("origin_id").get<std::string>();
    e.method = augment_method_from_name(d.at("method").get<std::string>());
    e.defect = defect_class_from_name(d.at("defect").get<std::string>());
    e.attempt = d.at("attempt").get<int>();
    e.benign = d.value("benign", false);
    e.completion_digest = d.value("completion_digest", "");
    o.log.push_back(std::move(e));
  }
  if (j.contains("pseudo")) o.pseudo = sample_from_json(j.at("pseudo"), where);
  if (!o.log.empty() && o.log.front().attempt == 1 && !o.log.front().benign) {
    o.first_attempt_defect = o.log.front().defect;
  }
  return o;
}

Outcome process_one(const Sample& sample, const AugmentPolicy& policy, Gateway& gateway,
                    const PromptTemplates& templates) {
  Outcome o;
  if (policy.method == AugmentMethod::paraphrase && !sample.bracketable()) {
    o.kind = OutcomeKind::skipped;
    return o;
  }

  PromptText prompt;
  GenerateInput gen;
  if (policy.method == AugmentMethod::paraphrase) {
    prompt = build_paraphrase_prompt(sample, templates);
  } else {
    gen = make_generate_input(sample);
    prompt = build_generate_prompt(gen, sample.id, templates);
  }

  const int max_attempts = 1 + policy.max_semantic_retries;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    CompletionRecord rec = gateway.complete(prompt, policy.params, attempt);
    o.attempts = attempt;
    RealignResult res = policy.method == AugmentMethod::paraphrase
                            ? process_paraphrase_completion(rec.raw_text, sample)
                            : process_generate_completion(rec.raw_text, gen);
    if (res.produced()) {
      o.kind = OutcomeKind::produced;
      o.pseudo = std::move(res.sample);
      return o;
    }
    if (res.benign_drop()) {
      o.kind = OutcomeKind::benign;
      DefectLogEntry e;
      e.origin_id = sample.id;
      e.method = policy.method;
      e.defect = DefectClass::sentinel_output;
      e.attempt = attempt;
      e.benign = true;
      e.completion_digest = sha256_hex(rec.raw_text);
      o.log.push_back(std::move(e));
      return o;
    }
    DefectLogEntry e;
    e.origin_id = sample.id;
    e.method = policy.method;
    e.defect = res.defect->cls;
    e.attempt = attempt;
    e.completion_digest = sha256_hex(rec.raw_text);
    o.log.push_back(std::move(e));
    if (attempt == 1) o.first_attempt_defect = res.defect->cls;
  }
  o.kind = OutcomeKind::discarded;
  return o;
}

}  // namespace

RunOutput run_augment(const std::vector<Sample>& samples, const AugmentPolicy& policy,
                      Gateway& gateway, const PromptTemplates& templates,
                      const RunOptions& options) {
  policy.validate();

  std::set<std::string> ids;
  for (const auto& s : samples) {
    if (!ids.insert(s.id).second) {
      throw Error(ErrorClass::validation, "duplicate input id '" + s.id + "'");
    }
  }

  const bool use_checkpoint =
      !options.checkpoint_path.empty() && gateway.mode() != GatewayMode::replay;
  std::vector<std::optional<Outcome>> slots(samples.size());

  if (use_checkpoint && std::filesystem::exists(options.checkpoint_path)) {
    std::map<std::string, Outcome> done;
    for_each_json_line(options.checkpoint_path, [&](const json& rec, int lineno) {
      const std::string where =
          options.checkpoint_path + ":" + std::to_string(lineno);
      done[rec.at("origin_id").get<std::string>()] = outcome_from_json(rec, where);
    });
    for (std::size_t i = 0; i < samples.size(); ++i) {
      auto it = done.find(samples[i].id);
      if (it != done.end()) slots[i] = it->second;
    }
  }

  const std::size_t before_requests = gateway.transport_requests();
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex failure_mu;
  std::exception_ptr failure;
  std::mutex checkpoint_mu;

  auto worker = [&] {
    for (;;) {
      if (stop.load()) return;
      std::size_t i = next.fetch_add(1);
      if (i >= samples.size()) return;
      if (slots[i].has_value()) continue;  // resumed from checkpoint
      try {
        Outcome o = process_one(samples[i], policy, gateway, templates);
        if (use_checkpoint) {
          std::lock_guard<std::mutex> lock(checkpoint_mu);
          append_line(options.checkpoint_path, outcome_to_json(samples[i].id, o).dump());
        }
        slots[i] = std::move(o);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        stop.store(true);
        return;
      }
    }
  };

  const int workers = std::max(1, options.concurrency);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  RunOutput out;
  out.report.method = augment_method_name(policy.method);
  out.report.mode = gateway_mode_name(gateway.mode());
  out.report.inputs = samples.size();
  out.report.transport_requests = gateway.transport_requests() - before_requests;

  std::vector<std::string> log_lines;
  int counter = 0;
  const char tag = policy.method == AugmentMethod::paraphrase ? 'p' : 'g';
  for (std::size_t i = 0; i < samples.size(); ++i) {
    Outcome& o = *slots[i];
    out.report.attempts_total += static_cast<std::size_t>(o.attempts);
    if (o.first_attempt_defect) {
      ++out.report.first_attempt_defects;
    }
    for (const auto& e : o.log) {
      if (!e.benign) ++out.report.defects[defect_class_name(e.defect)];
      log_lines.push_back(defect_log_entry_to_json(e).dump());
    }
    switch (o.kind) {
      case OutcomeKind::produced: {
        Sample s = std::move(*o.pseudo);
        char buf[24];
        std::snprintf(buf, sizeof(buf), "pga_%c_%06d", tag, ++counter);
        s.id = buf;
        s.pseudo = PseudoMeta{policy.method, samples[i].id, o.attempts};
        out.pseudo.push_back(std::move(s));
        ++out.report.produced;
        break;
      }
      case OutcomeKind::discarded:
        ++out.report.discarded;
        break;
      case OutcomeKind::skipped:
        ++out.report.skipped_unbracketable;
        break;
      case OutcomeKind::benign:
        ++out.report.benign_drops;
        break;
    }
  }
  out.report.defect_rate =
      out.report.inputs == 0
          ? 0.0
          : static_cast<double>(out.report.first_attempt_defects) / out.report.inputs;

  if (!options.defect_log_path.empty()) {
    std::ofstream log(options.defect_log_path, std::ios::binary | std::ios::trunc);
    if (!log) {
      throw Error(ErrorClass::io, "cannot open '" + options.defect_log_path + "' for writing");
    }
    for (const auto& line : log_lines) log << line << '\n';
  }
  if (use_checkpoint) {
    // The run completed; stale progress would poison a later run over a
    // different input set.
    std::error_code ec;
    std::filesystem::remove(options.checkpoint_path, ec);
  }
  return out;
}

std::vector<Sample> combine(const std::vector<Sample>& original,
                            const std::vector<std::vector<Sample>>& pseudo_sets) {
  std::vector<Sample> out = original;
  for (const auto& set : pseudo_sets) out.insert(out.end(), set.begin(), set.end());
  std::set<std::string> ids;
  for (const auto& s : out) {
    if (!ids.insert(s.id).second) {
      throw Error(ErrorClass::validation, "duplicate id '" + s.id + "' in combined set");
    }
  }
  return out;
}

std::vector<Sample> subset(const std::vector<Sample>& pseudo, std::size_t n, std::uint64_t seed) {
  auto picks = seeded_subset(pseudo.size(), n, seed);
  std::vector<Sample> out;
  out.reserve(n);
  for (auto i : picks) out.push_back(pseudo[i]);
  return out;
}

SampleSet sole(const std::vector<Sample>& pseudo) {
  SampleSet set;
  set.split = Split::train;
  set.items = pseudo;
  return set;
}

}  // namespace pga
