// Copyright 2026 The Scrapbook Authors.
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

// scrapbook: generate, check and evaluate scrapbook datasets.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scrapbook/scrapbook.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

int exit_code(sb_status s) {
  switch (s) {
    case SB_OK: return kExitOk;
    case SB_VALIDATION_FAILED: return kExitInvalid;
    default: return kExitUsage;
  }
}

int report_failure(const char* what, sb_status s) {
  std::cerr << "scrapbook " << what << ": " << sb_last_error() << "\n";
  return exit_code(s);
}

// Owns a string returned by the library.
struct Owned {
  char* p = nullptr;
  ~Owned() { sb_free(p); }
  std::string str() const { return p ? p : ""; }
};

std::optional<std::string> slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_generate(const fs::path& config_path, const fs::path& out, std::optional<std::uint64_t> seed, int jobs) {
  const auto text = slurp(config_path);
  if (!text) {
    std::cerr << "scrapbook generate: cannot read " << config_path << "\n";
    return kExitUsage;
  }
  json cfg;
  try {
    cfg = json::parse(*text);
  } catch (const json::exception& e) {
    std::cerr << "scrapbook generate: " << config_path.string() << ": " << e.what() << "\n";
    return kExitUsage;
  }
  if (!cfg.is_object()) {
    std::cerr << "scrapbook generate: config must be a JSON object\n";
    return kExitUsage;
  }
  if (seed) cfg["seed"] = *seed;
  // Directories in the config are relative to the config file.
  const fs::path base = fs::absolute(config_path).parent_path();
  for (const char* key : {"bank_dir", "background_dir"}) {
    if (cfg.contains(key) && cfg[key].is_string() && !cfg[key].get<std::string>().empty()) {
      const fs::path p = cfg[key].get<std::string>();
      if (p.is_relative()) cfg[key] = (base / p).lexically_normal().string();
    }
  }
  Owned runlog;
  const sb_status s = sb_generate(cfg.dump().c_str(), out.string().c_str(), jobs, &runlog.p);
  if (s != SB_OK) return report_failure("generate", s);
  const json log = json::parse(runlog.str());
  std::cout << "wrote " << log.value("images", 0) << " images and " << log.value("questions", 0)
            << " question records to " << out.string() << "\n";
  return kExitOk;
}

int cmd_check(const fs::path& dataset, int jobs) {
  sb_dataset* d = nullptr;
  if (sb_status s = sb_dataset_open(dataset.string().c_str(), &d); s != SB_OK) return report_failure("check", s);
  Owned report;
  const sb_status s = sb_dataset_check(d, jobs, &report.p);
  sb_dataset_close(d);
  if (s != SB_OK && s != SB_VALIDATION_FAILED) return report_failure("check", s);
  const json r = json::parse(report.str());
  for (const auto& v : r["violations"]) {
    std::cout << v["id"].get<std::string>() << ": " << v["message"].get<std::string>() << "\n";
  }
  const auto& c = r["census"];
  std::cout << r["images"] << " images, " << r["questions"] << " question records\n"
            << "answer keys: " << c["questions"] << " questions, yes " << c["yes"] << ", no " << c["no"]
            << ", count " << c["number"] << ", label " << c["text"] << ", unk " << c["unk"] << "\n";
  if (s == SB_VALIDATION_FAILED) {
    std::cout << "FAILED: " << r["violations"].size() << " violation(s)\n";
    return kExitInvalid;
  }
  std::cout << "OK\n";
  return kExitOk;
}

int cmd_evaluate(const fs::path& dataset, const fs::path& responses, const fs::path& out,
                 const std::optional<std::string>& filter, bool star, const std::vector<std::string>& approaches,
                 bool verdicts, int jobs) {
  json opts = {{"jobs", jobs}, {"verdicts", verdicts}};
  if (filter || star) {
    std::vector<std::string> bases = filter ? std::vector<std::string>{*filter}
                                            : std::vector<std::string>{"non_absurd", "full"};
    json fs_ = json::array();
    for (auto b : bases) {
      for (char& ch : b) {
        if (ch == '-') ch = '_';
      }
      fs_.push_back(star ? b + "_star" : b);
    }
    opts["filters"] = fs_;
  }
  if (!approaches.empty()) opts["approaches"] = approaches;

  sb_dataset* d = nullptr;
  if (sb_status s = sb_dataset_open(dataset.string().c_str(), &d); s != SB_OK) return report_failure("evaluate", s);
  Owned summary;
  const sb_status s =
      sb_dataset_evaluate(d, responses.string().c_str(), out.string().c_str(), opts.dump().c_str(), &summary.p);
  sb_dataset_close(d);
  if (s != SB_OK) return report_failure("evaluate", s);
  std::cout << summary.str();
  return kExitOk;
}

int cmd_bank(const fs::path& annotations, const fs::path& images, const fs::path& out, const std::string& classes,
             int jobs) {
  Owned summary;
  const sb_status s = sb_build_bank(annotations.string().c_str(), images.string().c_str(), out.string().c_str(),
                                    classes.c_str(), jobs, &summary.p);
  if (s != SB_OK) return report_failure("bank", s);
  const json r = json::parse(summary.str());
  std::cout << "extracted " << r["entries"] << " cutouts over " << r["classes"].size() << " classes into "
            << out.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scrapbook dataset generator and evaluator"};
  app.set_version_flag("--version", std::string(sb_version()));
  app.require_subcommand(1);
  int jobs = 1;

  auto* gen = app.add_subcommand("generate", "Generate a dataset from a JSON config");
  fs::path config, out;
  std::optional<std::uint64_t> seed;
  gen->add_option("--config", config, "Config file")->required()->check(CLI::ExistingFile);
  gen->add_option("--out", out, "Output dataset directory")->required();
  gen->add_option("--seed", seed, "Override the config seed");
  gen->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* chk = app.add_subcommand("check", "Re-verify geometry and answer keys of a dataset");
  fs::path dataset;
  chk->add_option("--dataset", dataset, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  chk->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* ev = app.add_subcommand("evaluate", "Score model responses against a dataset");
  fs::path responses, report_dir;
  std::optional<std::string> filter;
  bool star = false;
  bool verdicts = false;
  std::vector<std::string> approaches;
  ev->add_option("--dataset", dataset, "Dataset directory")->required()->check(CLI::ExistingDirectory);
  ev->add_option("--responses", responses, "responses.jsonl")->required()->check(CLI::ExistingFile);
  ev->add_option("--out", report_dir, "Report directory")->required();
  ev->add_option("--filter", filter, "Question filter")->check(CLI::IsMember({"non-absurd", "full"}));
  ev->add_flag("--star", star, "Apply simpler-image invalidation");
  ev->add_option("--approach", approaches, "Approaches to score (repeatable)")
      ->check(CLI::IsMember({"aggregated", "original", "condition", "direction", "enumerated"}));
  ev->add_flag("--verdicts", verdicts, "Also write per-question verdicts.jsonl");
  ev->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* bank = app.add_subcommand("bank", "Extract a COCO object bank");
  fs::path annotations, images;
  std::string classes;
  bank->add_option("--annotations", annotations, "COCO instances JSON")->required()->check(CLI::ExistingFile);
  bank->add_option("--images", images, "COCO image directory")->required()->check(CLI::ExistingDirectory);
  bank->add_option("--out", out, "Bank directory")->required();
  bank->add_option("--classes", classes, "Comma-separated class subset");
  bank->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (gen->parsed()) return cmd_generate(config, out, seed, jobs);
  if (chk->parsed()) return cmd_check(dataset, jobs);
  if (ev->parsed()) return cmd_evaluate(dataset, responses, report_dir, filter, star, approaches, verdicts, jobs);
  if (bank->parsed()) return cmd_bank(annotations, images, out, classes, jobs);
  return kExitUsage;
}
