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

#include <doctest.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>

#include "pga/corpus.hpp"
#include "pga/util.hpp"
#include "support/fixture_corpus.hpp"

using namespace pga;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  static int counter = 0;
  auto dir = fs::temp_directory_path() /
             ("pga_pipeline_test_" + std::to_string(::getpid()) + "_" + name +
              std::to_string(counter++));
  fs::create_directories(dir);
  return dir;
}

// Vectors chosen so pair i yields cosine 1/sqrt(1 + i^2): the similarity
// list identifies exactly which origins were selected.
struct FidelityFixture {
  std::vector<Sample> originals;
  std::vector<Sample> pseudo;
  std::string vectors_path;

  double expected_similarity(int i) const { return 1.0 / std::sqrt(1.0 + double(i) * i); }
};

FidelityFixture make_fidelity_fixture(const fs::path& dir) {
  FidelityFixture f;
  f.originals = flatten(testing::make_small_fixture(10, "selrun"));
  std::string lines;
  for (int i = 0; i < 10; ++i) {
    Sample p = f.originals[i];
    p.pseudo = PseudoMeta{AugmentMethod::paraphrase, f.originals[i].id, 1};
    p.id = "pga_p_" + std::to_string(i);
    // Force a distinct pseudo sentence per origin.
    p.tokens.insert(p.tokens.begin(), "indeed");
    for (auto& e : p.entities) {
      ++e.start;
      ++e.end;
    }
    f.pseudo.push_back(p);

    json orec;
    orec["sentence"] = f.originals[i].sentence();
    orec["vector"] = json::array({1.0, 0.0});
    lines += orec.dump() + "\n";
    json prec;
    prec["sentence"] = f.pseudo[i].sentence();
    prec["vector"] = json::array({1.0, static_cast<double>(i)});
    lines += prec.dump() + "\n";
  }
  f.vectors_path = (dir / "vectors.jsonl").string();
  write_file(f.vectors_path, lines);
  return f;
}

}  // namespace

TEST_CASE("fidelity pair selection") {
  auto dir = temp_dir("fid");
  auto fixture = make_fidelity_fixture(dir);

  RunConfig cfg;
  cfg.set("embed_vectors", fixture.vectors_path);
  cfg.set("fidelity_pairs", "4");

  SUBCASE("default takes the first N bracketable origins in order") {
    auto out = fidelity_from_config(cfg, fixture.originals, {fixture.pseudo});
    const auto& sims = out.report.at("pairs").at("paraphrase").at("similarities");
    REQUIRE(sims.size() == 4);
    for (int i = 0; i < 4; ++i) {
      CHECK(sims[i].get<double>() ==
            doctest::Approx(fixture.expected_similarity(i)).epsilon(1e-12));
    }
  }

  SUBCASE("a seed switches to the documented seeded selection") {
    cfg.set("fidelity_seed", "13");
    auto out = fidelity_from_config(cfg, fixture.originals, {fixture.pseudo});
    const auto& sims = out.report.at("pairs").at("paraphrase").at("similarities");
    auto picks = seeded_subset(10, 4, 13);
    REQUIRE(sims.size() == picks.size());
    for (std::size_t k = 0; k < picks.size(); ++k) {
      CHECK(sims[k].get<double>() ==
            doctest::Approx(fixture.expected_similarity(static_cast<int>(picks[k])))
                .epsilon(1e-12));
    }
    // And the selection is reproducible.
    auto again = fidelity_from_config(cfg, fixture.originals, {fixture.pseudo});
    CHECK(again.report == out.report);
  }

  SUBCASE("unbracketable origins are never paired") {
    Sample overlap;
    overlap.id = "overlap#0";
    overlap.tokens = {"a", "b", "c"};
    overlap.entities = {{0, 2, EntityType::Task, "a b"}, {1, 3, EntityType::Method, "b c"}};
    auto originals = fixture.originals;
    originals.insert(originals.begin(), overlap);
    Sample p = fixture.pseudo[0];
    p.pseudo->origin_id = "overlap#0";
    p.id = "pga_p_999";
    auto pseudo = fixture.pseudo;
    pseudo.push_back(p);

    cfg.set("fidelity_pairs", "20");
    auto out = fidelity_from_config(cfg, originals, {pseudo});
    CHECK(out.report.at("pairs").at("paraphrase").at("count") == 10);
  }

  SUBCASE("two pseudo sets report under their method tags") {
    std::vector<Sample> gset;
    std::string extra;
    for (int i = 0; i < 3; ++i) {
      Sample g = fixture.originals[i];
      g.pseudo = PseudoMeta{AugmentMethod::generate, fixture.originals[i].id, 1};
      g.id = "pga_g_" + std::to_string(i);
      g.tokens.push_back("generated");
      gset.push_back(g);
      json rec;
      rec["sentence"] = g.sentence();
      rec["vector"] = json::array({0.0, 1.0});
      extra += rec.dump() + "\n";
    }
    write_file(fixture.vectors_path, read_file(fixture.vectors_path) + extra);

    auto out_dir = temp_dir("fid_out");
    cfg.set("out", out_dir.string());
    auto out = fidelity_from_config(cfg, fixture.originals, {fixture.pseudo, gset});
    REQUIRE(out.report.at("pairs").contains("paraphrase"));
    REQUIRE(out.report.at("pairs").contains("generate"));
    CHECK(out.report.at("pairs").at("generate").at("count") == 3);
    // Shared origins are plotted once: 4 + 3 origins would be 7, but the
    // three generate origins overlap the paraphrase ones.
    CHECK(out.report.at("projection_points") == 4 + 4 + 3);
    CHECK(fs::exists(out_dir / "projection.csv"));
    CHECK(fs::exists(out_dir / "fidelity_report.json"));
    auto csv = read_file((out_dir / "projection.csv").string());
    CHECK(csv.find(",original\n") != std::string::npos);
    CHECK(csv.find(",paraphrase\n") != std::string::npos);
    CHECK(csv.find(",generate\n") != std::string::npos);
  }
}
