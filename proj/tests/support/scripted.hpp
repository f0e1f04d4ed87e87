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
// Scripted completions and transports for deterministic runs: a valid
// paraphrase keeps every bracketed entity and prepends two tokens; a valid
// generate sentence brackets each input entity once; the defective
// variants drop the final entity's brackets (paraphrase) or the final
// entity altogether (generate).

#ifndef PGA_TESTS_SCRIPTED_HPP
#define PGA_TESTS_SCRIPTED_HPP

#include <atomic>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pga/augment.hpp"
#include "pga/gateway.hpp"
#include "pga/prompt.hpp"
#include "pga/types.hpp"

namespace pga::testing {

std::string valid_paraphrase_completion(const Sample& origin);
std::string defective_paraphrase_completion(const Sample& origin);
std::string valid_generate_completion(const GenerateInput& g);
std::string defective_generate_completion(const GenerateInput& g);

// Fills `cache` so a replay run over `samples` sees a defective first
// attempt exactly at the positions marked in `defect_at` (empty = never).
// Paraphrase schedules also cache a valid second attempt for retries.
void build_replay_cache(const std::vector<Sample>& samples, const AugmentPolicy& policy,
                        const PromptTemplates& templates, const std::vector<bool>& defect_at,
                        CompletionCache& cache);

// Transport answering every request with responder(prompt) as the first
// choice's text; never touches the network.
class ScriptedTransport : public Transport {
 public:
  explicit ScriptedTransport(std::function<std::string(const std::string& prompt)> responder)
      : responder_(std::move(responder)) {}

  TransportResponse post(const std::string& json_body) override;
  int calls() const { return calls_.load(); }

 private:
  std::function<std::string(const std::string&)> responder_;
  std::atomic<int> calls_{0};
};

// Fails the first `failures` posts with a connection error, then delegates.
class FlakyTransport : public Transport {
 public:
  FlakyTransport(int failures, std::shared_ptr<Transport> inner)
      : failures_(failures), inner_(std::move(inner)) {}

  TransportResponse post(const std::string& json_body) override;
  int calls() const { return calls_.load(); }

 private:
  std::atomic<int> failures_;
  std::shared_ptr<Transport> inner_;
  std::atomic<int> calls_{0};
};

// Asserting-zero-use transport for replay purity checks.
class BombTransport : public Transport {
 public:
  TransportResponse post(const std::string&) override;
  int calls() const { return calls_.load(); }

 private:
  std::atomic<int> calls_{0};
};

// Succeeds for the first `budget` posts, then fails permanently; used to
// abort a run partway for checkpoint/resume tests.
class BudgetTransport : public Transport {
 public:
  BudgetTransport(int budget, std::shared_ptr<Transport> inner)
      : budget_(budget), inner_(std::move(inner)) {}

  TransportResponse post(const std::string& json_body) override;

 private:
  std::atomic<int> budget_;
  std::shared_ptr<Transport> inner_;
};

// Single-step corruption of a valid bracketed completion, each kind mapped
// to the defect class it must produce.
enum class MutationKind { drop_pair, rename_surface, insert_pair, unbalance };

std::string mutate_completion(const std::string& valid, MutationKind kind, std::uint64_t salt);
DefectClass expected_defect(MutationKind kind);

}  // namespace pga::testing

#endif  // PGA_TESTS_SCRIPTED_HPP
