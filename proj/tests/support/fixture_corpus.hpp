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
// Deterministic stand-in corpus shaped like the published statistics of
// the real dataset: 1,861/275/551 sentences with 8,089 typed entities (all
// 6 types) and 4,716 typed relations (all 7 types) overall. The train
// split carries 5,598 entities and 3,219 relations.
//
// The generate-defect schedule marks 272 of the 1,861 train sentences
// (positions i with (i*272) mod 1861 < 272); entity/relation counts are
// laid out so the remaining 1,589 sentences hold exactly 4,341 entities
// and 2,402 relations. The paraphrase schedule marks 402 positions by the
// analogous rule.

#ifndef PGA_TESTS_FIXTURE_CORPUS_HPP
#define PGA_TESTS_FIXTURE_CORPUS_HPP

#include <string>
#include <vector>

#include "pga/types.hpp"

namespace pga::testing {

inline constexpr int kTrainSentences = 1861;
inline constexpr int kDevSentences = 275;
inline constexpr int kTestSentences = 551;
inline constexpr int kGenerateDefects = 272;
inline constexpr int kParaphraseDefects = 402;

std::vector<bool> generate_defect_schedule();    // size 1861, 272 true
std::vector<bool> paraphrase_defect_schedule();  // size 1861, 402 true

DocumentSet make_train_fixture();
DocumentSet make_dev_fixture();
DocumentSet make_test_fixture();

// Small corpus for fast tests: `sentences` samples over documents of 3,
// every sentence bracketable, >= 1 entity each.
DocumentSet make_small_fixture(int sentences, const std::string& key_prefix = "mini_doc");

// Serializes a DocumentSet in the scierc line format (the loader's input).
std::string to_scierc_lines(const DocumentSet& ds);
void write_scierc_file(const DocumentSet& ds, const std::string& path);

}  // namespace pga::testing

#endif  // PGA_TESTS_FIXTURE_CORPUS_HPP
