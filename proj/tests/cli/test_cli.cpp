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
// Drives the installed CLI binary as a subprocess.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <httplib.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "pga/augment.hpp"
#include "pga/corpus.hpp"
#include "pga/gateway.hpp"
#include "pga/util.hpp"
#include "support/fixture_corpus.hpp"
#include "support/scripted.hpp"

using namespace pga;
namespace fs = std::filesystem;

namespace {

const std::string kCli = PGA_CLI_PATH;
const fs::path kFixtures = fs::path(PGA_SOURCE_DIR) / "tests" / "fixtures";

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

fs::path temp_dir(const std::string& name) {
  static int counter = 0;
  auto dir = fs::temp_directory_path() /
             ("pga_cli_test_" + std::to_string(::getpid()) + "_" + name +
              std::to_string(counter++));
  fs::create_directories(dir);
  return dir;
}

CliResult run_cli(const std::string& args) {
  auto out_file = temp_dir("out") / "cmd.out";
  std::string cmd = kCli + " " + args + " > " + out_file.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  CliResult res;
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  res.output = ss.str();
  return res;
}

bool same_bytes(const fs::path& a, const fs::path& b) {
  return read_file(a.string()) == read_file(b.string());
}

}  // namespace

TEST_CASE("no arguments prints usage and exits 2") {
  auto res = run_cli("");
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("Subcommands") != std::string::npos);
  CHECK(res.output.find("augment") != std::string::npos);
}

TEST_CASE("bad flags exit 2 with a usage error") {
  auto res = run_cli("subset --definitely-not-a-flag");
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("error: usage:") != std::string::npos);
}

TEST_CASE("stats prints per-file counts") {
  auto dir = temp_dir("stats");
  auto ds = testing::make_small_fixture(12, "cli");
  auto path = (dir / "train.jsonl").string();
  testing::write_scierc_file(ds, path);
  auto res = run_cli("stats " + path);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("samples=12") != std::string::npos);
}

TEST_CASE("stats over the train-sized fixture reports 1861 samples") {
  auto dir = temp_dir("stats_train");
  auto path = (dir / "train.jsonl").string();
  testing::write_scierc_file(testing::make_train_fixture(), path);
  auto res = run_cli("stats " + path);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("samples=1861") != std::string::npos);
  CHECK(res.output.find("entities=5598(6 types)") != std::string::npos);
  CHECK(res.output.find("relations=3219(7 types)") != std::string::npos);
}

TEST_CASE("unknown config keys fail with a config_error class") {
  auto dir = temp_dir("badcfg");
  auto cfg = (dir / "bad.conf").string();
  write_file(cfg, "definitely_unknown = 1\n");
  auto res = run_cli("augment --config " + cfg);
  CHECK(res.exit_code == 1);
  CHECK(res.output.find("error: config_error:") != std::string::npos);
}

TEST_CASE("augment replay reproduces the committed golden directory") {
  auto dir = temp_dir("golden");
  const auto mini = kFixtures / "mini";
  auto out_dir = dir / "out";

  std::string args = "augment --method generate --mode replay --out " + out_dir.string();
  {
    auto cfg = (dir / "run.conf").string();
    write_file(cfg, "cache = " + (mini / "cache_generate.jsonl").string() + "\n" +
                        "corpus = " + (mini / "train.jsonl").string() + "\n");
    args += " --config " + cfg;
  }
  auto res = run_cli(args);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("generate run (replay): 10/12 produced") != std::string::npos);

  for (const char* name :
       {"pseudo_generate.jsonl", "report_generate.json", "defects_generate.jsonl"}) {
    CAPTURE(name);
    CHECK(same_bytes(out_dir / name, mini / "golden_out" / name));
  }

  // Idempotence: a second replay into the same directory changes nothing.
  auto res2 = run_cli(args);
  CHECK(res2.exit_code == 0);
  for (const char* name :
       {"pseudo_generate.jsonl", "report_generate.json", "defects_generate.jsonl"}) {
    CHECK(same_bytes(out_dir / name, mini / "golden_out" / name));
  }

  // Nothing lands outside the configured output directory: the scratch dir
  // holds exactly the config and the out dir, and the out dir holds only
  // the three run artifacts.
  std::vector<std::string> top;
  for (const auto& entry : fs::directory_iterator(dir)) {
    top.push_back(entry.path().filename().string());
  }
  std::sort(top.begin(), top.end());
  CHECK(top == std::vector<std::string>{"out", "run.conf"});
  std::vector<std::string> produced;
  for (const auto& entry : fs::directory_iterator(out_dir)) {
    produced.push_back(entry.path().filename().string());
  }
  std::sort(produced.begin(), produced.end());
  CHECK(produced == std::vector<std::string>{"defects_generate.jsonl", "pseudo_generate.jsonl",
                                             "report_generate.json"});
}

TEST_CASE("export matches the committed golden files and derived sets flow") {
  auto dir = temp_dir("export");
  const auto mini = kFixtures / "mini";

  for (const std::string fmt : {"scierc", "spert", "marker"}) {
    const std::string ext = fmt == "spert" ? "mini.spert.json" : "mini." + fmt + ".jsonl";
    auto out = dir / ("out_" + ext);
    auto res = run_cli("export --format " + fmt + " --out " + out.string() + " " +
                       (mini / "train.jsonl").string());
    CHECK(res.exit_code == 0);
    CHECK(same_bytes(out, mini / "golden_export" / ext));
  }

  // combine + subset + sole chain over the golden pseudo output.
  auto combined = dir / "combined.jsonl";
  auto res = run_cli("combine --out " + combined.string() + " " +
                     (mini / "train.jsonl").string() + " " +
                     (mini / "golden_out" / "pseudo_generate.jsonl").string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("combined 22 samples") != std::string::npos);

  auto sub = dir / "subset.jsonl";
  res = run_cli("subset --n 5 --seed 13 --out " + sub.string() + " " + combined.string());
  CHECK(res.exit_code == 0);
  CHECK(load_pga(sub.string()).items.size() == 5);

  auto sole_out = dir / "sole.jsonl";
  res = run_cli("sole --out " + sole_out.string() + " " +
                (mini / "golden_out" / "pseudo_generate.jsonl").string());
  CHECK(res.exit_code == 0);
  CHECK(load_pga(sole_out.string()).items.size() == 10);
}

TEST_CASE("score subcommand prints the three regimes") {
  auto dir = temp_dir("score");
  auto ds = testing::make_small_fixture(5, "sc");
  auto gold = (dir / "gold.jsonl").string();
  testing::write_scierc_file(ds, gold);
  auto flat = flatten(ds);
  std::string pred_lines;
  for (const auto& s : flat) {
    json rec;
    rec["id"] = s.id;
    json ents = json::array();
    for (const auto& e : s.entities) {
      ents.push_back(json::array({e.start, e.end, entity_type_name(e.type)}));
    }
    rec["entities"] = std::move(ents);
    pred_lines += rec.dump() + "\n";
  }
  auto pred = (dir / "pred.jsonl").string();
  write_file(pred, pred_lines);

  auto machine = (dir / "score.json").string();
  auto res = run_cli("score --gold " + gold + " --pred " + pred + " --out " + machine);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("ent") != std::string::npos);
  CHECK(res.output.find("f1=1.0000") != std::string::npos);
  CHECK(res.output.find("rel_plus") != std::string::npos);
  auto parsed = json::parse(read_file(machine));
  CHECK(parsed.at("ent").at("f1").get<double>() == doctest::Approx(1.0));
  CHECK(parsed.at("rel").at("tp").get<int>() == 0);
}

TEST_CASE("record against a local endpoint then replay byte-identically") {
  auto dir = temp_dir("record");
  auto ds = testing::make_small_fixture(8, "rec");
  auto flat = flatten(ds);
  auto corpus = (dir / "train.jsonl").string();
  testing::write_scierc_file(ds, corpus);

  // Completion endpoint scripted to answer with the identity bracketing.
  httplib::Server server;
  server.Post("/v1/completions", [&](const httplib::Request& req, httplib::Response& res) {
    auto body = json::parse(req.body);
    const std::string prompt = body.at("prompt").get<std::string>();
    auto at = prompt.rfind("Sentence: ");
    json reply;
    reply["choices"] =
        json::array({json{{"text", prompt.substr(at + std::string("Sentence: ").size())}}});
    res.set_content(reply.dump(), "application/json");
  });
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread listener([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  auto cfg = (dir / "run.conf").string();
  auto cache = (dir / "cache.jsonl").string();
  write_file(cfg, "corpus = " + corpus + "\n" + "cache = " + cache + "\n" +
                      "endpoint_url = http://127.0.0.1:" + std::to_string(port) +
                      "/v1/completions\n" + "method = paraphrase\n");

  auto rec_out = (dir / "rec_out").string();
  auto res = run_cli("augment --config " + cfg + " --mode record --out " + rec_out);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("paraphrase run (record): 8/8 produced") != std::string::npos);
  server.stop();
  listener.join();

  auto rep_out = (dir / "rep_out").string();
  auto res2 = run_cli("augment --config " + cfg + " --mode replay --out " + rep_out);
  CHECK(res2.exit_code == 0);
  CHECK(res2.output.find("0 transport requests") != std::string::npos);
  for (const char* name :
       {"pseudo_paraphrase.jsonl", "report_paraphrase.json", "defects_paraphrase.jsonl"}) {
    CAPTURE(name);
    CHECK(fs::exists(fs::path(rec_out) / name));
  }
  CHECK(read_file(rec_out + "/pseudo_paraphrase.jsonl") != "");
  // Reports differ only in the mode field; compare the sample payloads.
  CHECK(same_bytes(fs::path(rec_out) / "pseudo_paraphrase.jsonl",
                   fs::path(rep_out) / "pseudo_paraphrase.jsonl"));
  CHECK(same_bytes(fs::path(rec_out) / "defects_paraphrase.jsonl",
                   fs::path(rep_out) / "defects_paraphrase.jsonl"));

  SUBCASE("replay-verify passes on the recorded cache") {
    auto verify_out = (dir / "verify").string();
    auto res3 = run_cli("replay-verify --config " + cfg + " --out " + verify_out);
    CHECK(res3.exit_code == 0);
    CHECK(res3.output.find("replay-verify: OK") != std::string::npos);
  }
}

TEST_CASE("fidelity subcommand writes a projection and reports pair stats") {
  auto dir = temp_dir("fidelity");
  auto ds = testing::make_small_fixture(6, "fid");
  auto flat = flatten(ds);
  auto origin = (dir / "orig.jsonl").string();
  testing::write_scierc_file(ds, origin);

  std::vector<Sample> pseudo;
  for (std::size_t i = 0; i < flat.size(); ++i) {
    Sample p = flat[i];
    p.pseudo = PseudoMeta{AugmentMethod::generate, flat[i].id, 1};
    p.id = "pga_g_" + std::to_string(i);
    pseudo.push_back(p);
  }
  auto pseudo_path = (dir / "pseudo.jsonl").string();
  save_pga(pseudo, pseudo_path);

  std::string vec_lines;
  int i = 0;
  for (const auto& s : flat) {
    json rec;
    rec["sentence"] = s.sentence();
    rec["vector"] = json::array({1.0, 0.25 * i, 0.0});
    vec_lines += rec.dump() + "\n";
    ++i;
  }
  auto vectors = (dir / "vectors.jsonl").string();
  write_file(vectors, vec_lines);

  auto cfg = (dir / "fid.conf").string();
  write_file(cfg, "embed_vectors = " + vectors + "\nfidelity_pairs = 6\n");
  auto out_dir = (dir / "out").string();
  auto res = run_cli("fidelity --config " + cfg + " --out " + out_dir + " " + origin + " " +
                     pseudo_path);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("generate") != std::string::npos);
  CHECK(res.output.find("pairs=6") != std::string::npos);
  CHECK(fs::exists(fs::path(out_dir) / "projection.csv"));
  auto csv = read_file((fs::path(out_dir) / "projection.csv").string());
  CHECK(csv.rfind("x,y,group\n", 0) == 0);
  CHECK(csv.find("original") != std::string::npos);
  CHECK(csv.find("generate") != std::string::npos);
}
