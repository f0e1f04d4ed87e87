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
// Command-line front end. All pipeline work goes through the shared
// library's C API; this file only parses flags, moves strings around and
// formats output.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "pga/pga.h"

namespace {

using njson = nlohmann::ordered_json;

struct Samples {
  pga_samples* h = nullptr;
  Samples() = default;
  Samples(const Samples&) = delete;
  Samples& operator=(const Samples&) = delete;
  Samples(Samples&& o) noexcept : h(o.h) { o.h = nullptr; }
  Samples& operator=(Samples&& o) noexcept {
    std::swap(h, o.h);
    return *this;
  }
  ~Samples() { pga_samples_free(h); }
};

struct Config {
  pga_config* h = pga_config_new();
  Config() = default;
  Config(const Config&) = delete;
  Config& operator=(const Config&) = delete;
  ~Config() { pga_config_free(h); }
};

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { pga_string_free(s); }
};

int report_failure(pga_status st) {
  std::cerr << "error: " << pga_status_name(st) << ": " << pga_last_error() << std::endl;
  return 1;
}

#define PGA_TRY(call)                            \
  do {                                           \
    pga_status st_ = (call);                     \
    if (st_ != PGA_OK) return report_failure(st_); \
  } while (0)

// Flags shared by the subcommands; only registered where they apply.
struct Options {
  std::string config_path;
  std::string method;
  std::string mode;
  std::string format = "scierc";
  std::string out;
  std::string gold;
  std::string pred;
  std::uint64_t seed = 0;
  std::int64_t n = -1;
  std::vector<std::string> inputs;
};

int build_config(const Options& opt, Config& cfg) {
  if (!opt.config_path.empty()) PGA_TRY(pga_config_load_file(cfg.h, opt.config_path.c_str()));
  if (!opt.method.empty()) PGA_TRY(pga_config_set(cfg.h, "method", opt.method.c_str()));
  if (!opt.mode.empty()) PGA_TRY(pga_config_set(cfg.h, "mode", opt.mode.c_str()));
  if (!opt.out.empty()) PGA_TRY(pga_config_set(cfg.h, "out", opt.out.c_str()));
  return 0;
}

int load_inputs(const Options& opt, const char* format, std::vector<Samples>& out) {
  for (const auto& path : opt.inputs) {
    Samples s;
    PGA_TRY(pga_samples_load(path.c_str(), format, &s.h));
    out.push_back(std::move(s));
  }
  return 0;
}

int merge_inputs(std::vector<Samples>& sets, Samples& merged) {
  if (sets.size() == 1) {
    merged = std::move(sets[0]);
    return 0;
  }
  std::vector<const pga_samples*> raw;
  for (auto& s : sets) raw.push_back(s.h);
  PGA_TRY(pga_combine(raw.data(), raw.size(), &merged.h));
  return 0;
}

std::string describe_stats(const njson& st) {
  std::ostringstream out;
  out << "samples=" << st.at("samples").get<std::uint64_t>()
      << " entities=" << st.at("entities").get<std::uint64_t>() << "("
      << st.at("entity_types").get<std::uint64_t>() << " types)"
      << " relations=" << st.at("relations").get<std::uint64_t>() << "("
      << st.at("relation_types").get<std::uint64_t>() << " types)";
  return out.str();
}

int cmd_stats(const Options& opt) {
  std::vector<Samples> sets;
  if (int rc = load_inputs(opt, "auto", sets)) return rc;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    OwnedString js;
    PGA_TRY(pga_samples_stats_json(sets[i].h, &js.s));
    std::cout << opt.inputs[i] << ": " << describe_stats(njson::parse(js.s)) << "\n";
  }
  if (sets.size() > 1) {
    std::vector<const pga_samples*> raw;
    for (auto& s : sets) raw.push_back(s.h);
    OwnedString js;
    PGA_TRY(pga_samples_stats_total_json(raw.data(), raw.size(), &js.s));
    std::cout << "total: " << describe_stats(njson::parse(js.s)) << "\n";
  }
  return 0;
}

std::string summarize_report(const njson& r) {
  std::ostringstream out;
  out << r.at("method").get<std::string>() << " run (" << r.at("mode").get<std::string>()
      << "): " << r.at("produced").get<std::uint64_t>() << "/"
      << r.at("inputs").get<std::uint64_t>() << " produced";
  if (auto v = r.at("skipped_unbracketable").get<std::uint64_t>())
    out << ", " << v << " skipped (unbracketable)";
  if (auto v = r.at("benign_drops").get<std::uint64_t>()) out << ", " << v << " empty-label drops";
  if (auto v = r.at("discarded").get<std::uint64_t>()) out << ", " << v << " discarded";
  char rate[32];
  std::snprintf(rate, sizeof(rate), "%.2f", r.at("defect_rate").get<double>() * 100.0);
  out << "; first-attempt defect rate " << rate << "% ("
      << r.at("first_attempt_defects").get<std::uint64_t>() << "/"
      << r.at("inputs").get<std::uint64_t>() << "), "
      << r.at("attempts_total").get<std::uint64_t>() << " attempts, "
      << r.at("transport_requests").get<std::uint64_t>() << " transport requests";
  return out.str();
}

int run_augment_once(const Options& opt, const std::string& out_dir, njson* report_out) {
  Config cfg;
  if (int rc = build_config(opt, cfg)) return rc;
  if (!out_dir.empty()) PGA_TRY(pga_config_set(cfg.h, "out", out_dir.c_str()));

  std::string corpus_path;
  std::string corpus_format = "auto";
  if (const char* v = pga_config_get(cfg.h, "corpus")) corpus_path = v;
  if (const char* v = pga_config_get(cfg.h, "corpus_format")) corpus_format = v;
  if (!opt.inputs.empty()) corpus_path = opt.inputs.front();
  if (corpus_path.empty()) {
    std::cerr << "error: config_error: no corpus given (flag or config key 'corpus')" << std::endl;
    return 1;
  }

  Samples input;
  PGA_TRY(pga_samples_load(corpus_path.c_str(), corpus_format.c_str(), &input.h));
  Samples pseudo;
  OwnedString report;
  PGA_TRY(pga_augment(cfg.h, input.h, &pseudo.h, &report.s));
  njson parsed = njson::parse(report.s);
  if (report_out) *report_out = parsed;
  std::cout << summarize_report(parsed) << "\n";
  return 0;
}

int cmd_augment(const Options& opt) {
  Config cfg;
  if (int rc = build_config(opt, cfg)) return rc;
  if (!pga_config_get(cfg.h, "out")) {
    std::cerr << "error: config_error: augment needs an output directory (--out)" << std::endl;
    return 1;
  }
  return run_augment_once(opt, "", nullptr);
}

int cmd_combine(const Options& opt) {
  std::vector<Samples> sets;
  if (int rc = load_inputs(opt, "auto", sets)) return rc;
  Samples merged;
  if (int rc = merge_inputs(sets, merged)) return rc;
  PGA_TRY(pga_samples_save(merged.h, opt.out.c_str()));
  std::cout << "combined " << pga_samples_count(merged.h) << " samples into " << opt.out << "\n";
  return 0;
}

int cmd_subset(const Options& opt) {
  std::vector<Samples> sets;
  if (int rc = load_inputs(opt, "auto", sets)) return rc;
  Samples merged;
  if (int rc = merge_inputs(sets, merged)) return rc;
  if (opt.n < 0) {
    std::cerr << "error: usage: subset needs --n" << std::endl;
    return 2;
  }
  Samples picked;
  PGA_TRY(pga_subset(merged.h, static_cast<size_t>(opt.n), opt.seed, &picked.h));
  PGA_TRY(pga_samples_save(picked.h, opt.out.c_str()));
  std::cout << "wrote " << pga_samples_count(picked.h) << " samples to " << opt.out << "\n";
  return 0;
}

int cmd_sole(const Options& opt) {
  std::vector<Samples> sets;
  if (int rc = load_inputs(opt, "auto", sets)) return rc;
  Samples merged;
  if (int rc = merge_inputs(sets, merged)) return rc;
  Samples train;
  PGA_TRY(pga_sole(merged.h, &train.h));
  PGA_TRY(pga_samples_save(train.h, opt.out.c_str()));
  std::cout << "wrote standalone training set (" << pga_samples_count(train.h) << " samples) to "
            << opt.out << "\n";
  return 0;
}

int cmd_export(const Options& opt) {
  std::vector<Samples> sets;
  if (int rc = load_inputs(opt, "auto", sets)) return rc;
  Samples merged;
  if (int rc = merge_inputs(sets, merged)) return rc;
  PGA_TRY(pga_samples_export(merged.h, opt.format.c_str(), opt.out.c_str()));
  std::cout << "exported " << pga_samples_count(merged.h) << " samples as " << opt.format
            << " to " << opt.out << "\n";
  return 0;
}

int cmd_score(const Options& opt) {
  Config cfg;
  if (int rc = build_config(opt, cfg)) return rc;
  std::string gold = opt.gold;
  std::string pred = opt.pred;
  if (gold.empty()) {
    if (const char* v = pga_config_get(cfg.h, "gold")) gold = v;
  }
  if (pred.empty()) {
    if (const char* v = pga_config_get(cfg.h, "pred")) pred = v;
  }
  if (gold.empty() || pred.empty()) {
    std::cerr << "error: usage: score needs --gold and --pred" << std::endl;
    return 2;
  }
  int swap = 1;
  if (const char* v = pga_config_get(cfg.h, "symmetric_swap")) {
    swap = std::string(v) == "off" || std::string(v) == "false" || std::string(v) == "0" ? 0 : 1;
  }
  Samples gold_samples;
  PGA_TRY(pga_samples_load(gold.c_str(), "auto", &gold_samples.h));
  OwnedString report;
  PGA_TRY(pga_score(gold_samples.h, pred.c_str(), swap, &report.s));
  njson r = njson::parse(report.s);
  for (const char* regime : {"ent", "rel", "rel_plus"}) {
    const auto& x = r.at(regime);
    char line[160];
    std::snprintf(line, sizeof(line), "%-8s precision=%.4f recall=%.4f f1=%.4f tp=%llu fp=%llu fn=%llu",
                  regime, x.at("precision").get<double>(), x.at("recall").get<double>(),
                  x.at("f1").get<double>(),
                  static_cast<unsigned long long>(x.at("tp").get<std::uint64_t>()),
                  static_cast<unsigned long long>(x.at("fp").get<std::uint64_t>()),
                  static_cast<unsigned long long>(x.at("fn").get<std::uint64_t>()));
    std::cout << line << "\n";
  }
  if (!opt.out.empty()) {
    std::ofstream f(opt.out, std::ios::binary | std::ios::trunc);
    f << r.dump(2) << "\n";
    if (!f) {
      std::cerr << "error: io_error: cannot write " << opt.out << std::endl;
      return 1;
    }
  }
  return 0;
}

int cmd_fidelity(const Options& opt) {
  Config cfg;
  if (int rc = build_config(opt, cfg)) return rc;
  if (opt.inputs.size() < 2) {
    std::cerr << "error: usage: fidelity needs <originals> <pseudo-set>..." << std::endl;
    return 2;
  }
  Samples originals;
  PGA_TRY(pga_samples_load(opt.inputs[0].c_str(), "auto", &originals.h));
  std::vector<Samples> pseudo;
  std::vector<const pga_samples*> raw;
  for (std::size_t i = 1; i < opt.inputs.size(); ++i) {
    Samples s;
    PGA_TRY(pga_samples_load(opt.inputs[i].c_str(), "auto", &s.h));
    raw.push_back(s.h);
    pseudo.push_back(std::move(s));
  }
  OwnedString report;
  PGA_TRY(pga_fidelity(cfg.h, originals.h, raw.data(), raw.size(), &report.s));
  njson r = njson::parse(report.s);
  for (auto& [tag, stats] : r.at("pairs").items()) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-12s pairs=%llu mean=%.4f median=%.4f min=%.4f",
                  tag.c_str(),
                  static_cast<unsigned long long>(stats.at("count").get<std::uint64_t>()),
                  stats.at("mean").get<double>(), stats.at("median").get<double>(),
                  stats.at("min").get<double>());
    std::cout << line << "\n";
  }
  if (const char* out_dir = pga_config_get(cfg.h, "out")) {
    std::cout << "projection and report written to " << out_dir << "\n";
  }
  return 0;
}

bool files_identical(const std::filesystem::path& a, const std::filesystem::path& b,
                     std::string* why) {
  std::ifstream fa(a, std::ios::binary);
  std::ifstream fb(b, std::ios::binary);
  if (!fa || !fb) {
    *why = "missing file " + (fa ? b.string() : a.string());
    return false;
  }
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  if (sa.str() != sb.str()) {
    *why = a.string() + " differs from " + b.string();
    return false;
  }
  return true;
}

int cmd_replay_verify(Options opt) {
  opt.mode = "replay";
  Config probe;
  if (int rc = build_config(opt, probe)) return rc;
  const char* out_base_c = pga_config_get(probe.h, "out");
  const char* method_c = pga_config_get(probe.h, "method");
  if (!out_base_c || !method_c) {
    std::cerr << "error: config_error: replay-verify needs 'out' and 'method'" << std::endl;
    return 1;
  }
  const std::string out_base = out_base_c;
  const std::string method = method_c;

  njson reports[2];
  const std::string dirs[2] = {out_base + "/verify_a", out_base + "/verify_b"};
  for (int i = 0; i < 2; ++i) {
    if (int rc = run_augment_once(opt, dirs[i], &reports[i])) return rc;
  }

  bool ok = true;
  for (const auto& name : {"pseudo_" + method + ".jsonl", "report_" + method + ".json",
                           "defects_" + method + ".jsonl"}) {
    std::string why;
    if (!files_identical(std::filesystem::path(dirs[0]) / name,
                         std::filesystem::path(dirs[1]) / name, &why)) {
      std::cerr << "replay-verify: MISMATCH: " << why << std::endl;
      ok = false;
    }
  }
  for (int i = 0; i < 2; ++i) {
    if (reports[i].at("transport_requests").get<std::uint64_t>() != 0) {
      std::cerr << "replay-verify: network activity during replay run " << i << std::endl;
      ok = false;
    }
  }
  if (!ok) return 1;
  std::cout << "replay-verify: OK (runs byte-identical, 0 network calls)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PGA: paraphrase/generate augmentation toolchain for span-based relation extraction corpora"};
  app.require_subcommand(0, 1);

  Options opt;
  auto add_common = [&](CLI::App* sub, bool with_config) {
    if (with_config) sub->add_option("--config", opt.config_path, "key=value config file");
    sub->add_option("--out", opt.out, "output file or directory");
  };

  auto* augment = app.add_subcommand("augment", "synthesize pseudo-samples for a corpus");
  add_common(augment, true);
  augment->add_option("--method", opt.method, "paraphrase|generate");
  augment->add_option("--mode", opt.mode, "live|record|replay");
  augment->add_option("corpus", opt.inputs, "input corpus (overrides config key)")->expected(0, 1);

  auto* combine = app.add_subcommand("combine", "concatenate original and pseudo sets");
  add_common(combine, false);
  combine->add_option("inputs", opt.inputs, "original first, then pseudo sets")->required();
  combine->get_option("--out")->required();

  auto* subsetc = app.add_subcommand("subset", "seeded uniform subset of a pseudo set");
  add_common(subsetc, false);
  subsetc->add_option("--n", opt.n, "subset size")->required();
  subsetc->add_option("--seed", opt.seed, "selection seed");
  subsetc->add_option("inputs", opt.inputs, "pseudo set")->required();
  subsetc->get_option("--out")->required();

  auto* solec = app.add_subcommand("sole", "re-label pseudo-samples as a standalone train set");
  add_common(solec, false);
  solec->add_option("inputs", opt.inputs, "pseudo set")->required();
  solec->get_option("--out")->required();

  auto* exportc = app.add_subcommand("export", "write a training file in a backbone format");
  add_common(exportc, false);
  exportc->add_option("--format", opt.format, "scierc|spert|marker");
  exportc->add_option("inputs", opt.inputs, "sample files")->required();
  exportc->get_option("--out")->required();

  auto* statsc = app.add_subcommand("stats", "dataset statistics");
  statsc->add_option("inputs", opt.inputs, "sample files")->required();

  auto* scorec = app.add_subcommand("score", "score predictions against gold");
  add_common(scorec, true);
  scorec->add_option("--gold", opt.gold, "gold corpus file");
  scorec->add_option("--pred", opt.pred, "prediction file (JSON lines)");

  auto* fidelityc = app.add_subcommand("fidelity", "origin/pseudo embedding similarity report");
  add_common(fidelityc, true);
  fidelityc->add_option("inputs", opt.inputs, "<originals> <pseudo-set>...")->required();

  auto* verifyc = app.add_subcommand("replay-verify", "run augment twice in replay mode and compare");
  add_common(verifyc, true);
  verifyc->add_option("--method", opt.method, "paraphrase|generate");
  verifyc->add_option("corpus", opt.inputs, "input corpus (overrides config key)")->expected(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << std::endl;
    return 2;
  }

  if (augment->parsed()) return cmd_augment(opt);
  if (combine->parsed()) return cmd_combine(opt);
  if (subsetc->parsed()) return cmd_subset(opt);
  if (solec->parsed()) return cmd_sole(opt);
  if (exportc->parsed()) return cmd_export(opt);
  if (statsc->parsed()) return cmd_stats(opt);
  if (scorec->parsed()) return cmd_score(opt);
  if (fidelityc->parsed()) return cmd_fidelity(opt);
  if (verifyc->parsed()) return cmd_replay_verify(opt);

  std::cout << app.help();
  return 2;
}
