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

#include "scrapbook/scrapbook.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bank/coco.hpp"
#include "check/check.hpp"
#include "core/config.hpp"
#include "core/manifest.hpp"
#include "core/vocab.hpp"
#include "evaluator/report.hpp"
#include "pipeline/pipeline.hpp"

struct sb_dataset {
  std::filesystem::path dir;
  scrapbook::Dataset data;
};

namespace {

using nlohmann::json;
using scrapbook::Error;

thread_local std::string g_last_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p != nullptr) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void hand_out(char** out, const std::string& s) {
  if (out != nullptr) *out = dup(s);
}

template <typename F>
sb_status guarded(F&& f) {
  g_last_error.clear();
  try {
    return f();
  } catch (const Error& e) {
    g_last_error = e.what();
    switch (e.kind()) {
      case Error::Kind::usage: return SB_ERR_USAGE;
      case Error::Kind::io: return SB_ERR_IO;
      case Error::Kind::validation: return SB_VALIDATION_FAILED;
      case Error::Kind::internal: return SB_ERR_INTERNAL;
    }
    return SB_ERR_INTERNAL;
  } catch (const json::exception& e) {
    g_last_error = std::string("malformed JSON: ") + e.what();
    return SB_ERR_USAGE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SB_ERR_INTERNAL;
  }
}

sb_status usage(const std::string& what) {
  g_last_error = what;
  return SB_ERR_USAGE;
}

scrapbook::GenerationConfig parse_config(const char* text) {
  return scrapbook::config_from_json(json::parse(text));
}

}  // namespace

extern "C" {

const char* sb_version(void) { return SCRAPBOOK_VERSION; }

const char* sb_last_error(void) { return g_last_error.c_str(); }

void sb_free(char* p) { std::free(p); }

sb_status sb_config_validate_json(const char* config_json, char** normalized) {
  if (config_json == nullptr) return usage("config is null");
  return guarded([&] {
    const auto cfg = parse_config(config_json);
    const auto problems = scrapbook::validate_config(cfg);
    if (!problems.empty()) {
      std::string msg;
      for (const auto& p : problems) msg += (msg.empty() ? "" : "\n") + p;
      g_last_error = msg;
      return SB_VALIDATION_FAILED;
    }
    hand_out(normalized, scrapbook::config_to_json(cfg).dump(2));
    return SB_OK;
  });
}

sb_status sb_generate(const char* config_json, const char* out_dir, int jobs, char** runlog) {
  if (config_json == nullptr || out_dir == nullptr) return usage("config and output directory are required");
  return guarded([&] {
    const auto cfg = parse_config(config_json);
    const auto problems = scrapbook::validate_config(cfg);
    if (!problems.empty()) {
      std::string msg;
      for (const auto& p : problems) msg += (msg.empty() ? "" : "\n") + p;
      g_last_error = msg;
      return SB_ERR_USAGE;
    }
    const auto log = scrapbook::generate_dataset(cfg, out_dir, {std::max(jobs, 1)});
    hand_out(runlog, log.to_json().dump(2));
    return SB_OK;
  });
}

sb_status sb_dataset_open(const char* dataset_dir, sb_dataset** out) {
  if (dataset_dir == nullptr || out == nullptr) return usage("dataset directory is required");
  *out = nullptr;
  return guarded([&] {
    auto d = std::make_unique<sb_dataset>();
    d->dir = dataset_dir;
    d->data = scrapbook::load_dataset(d->dir);
    *out = d.release();
    return SB_OK;
  });
}

void sb_dataset_close(sb_dataset* d) { delete d; }

sb_status sb_dataset_counts(const sb_dataset* d, int64_t* images, int64_t* questions) {
  if (d == nullptr) return usage("dataset handle is null");
  if (images != nullptr) *images = static_cast<int64_t>(d->data.manifest.images.size());
  if (questions != nullptr) *questions = static_cast<int64_t>(d->data.questions.size());
  return SB_OK;
}

sb_status sb_dataset_check(const sb_dataset* d, int jobs, char** report) {
  if (d == nullptr) return usage("dataset handle is null");
  return guarded([&] {
    const auto r = scrapbook::check::check_dataset(d->data, d->dir, std::max(jobs, 1));
    json v = json::array();
    for (const auto& x : r.violations) v.push_back({{"id", x.subject}, {"message", x.message}});
    const auto& c = r.census;
    json doc = {{"images", r.images},
                {"questions", r.questions},
                {"violations", v},
                {"census",
                 {{"questions", c.questions}, {"yes", c.yes}, {"no", c.no}, {"number", c.number},
                  {"text", c.text}, {"unk", c.unk}}}};
    hand_out(report, doc.dump(2));
    if (!r.ok()) {
      g_last_error = std::to_string(r.violations.size()) + " violation(s)";
      return SB_VALIDATION_FAILED;
    }
    return SB_OK;
  });
}

sb_status sb_dataset_evaluate(const sb_dataset* d, const char* responses_path, const char* out_dir,
                              const char* options_json, char** summary) {
  if (d == nullptr || responses_path == nullptr || out_dir == nullptr) {
    return usage("dataset, responses and output directory are required");
  }
  return guarded([&] {
    scrapbook::EvaluationOptions opts;
    if (options_json != nullptr && *options_json != '\0') {
      const json o = json::parse(options_json);
      for (const auto& [k, v] : o.items()) {
        if (k == "filters") {
          opts.filters.clear();
          for (const auto& f : v) opts.filters.push_back(scrapbook::parse<scrapbook::Filter>(f.get<std::string>()));
        } else if (k == "approaches") {
          opts.approaches.clear();
          for (const auto& a : v) {
            opts.approaches.push_back(scrapbook::parse<scrapbook::Approach>(a.get<std::string>()));
          }
        } else if (k == "verdicts") {
          opts.write_verdicts = v.get<bool>();
        } else if (k == "jobs") {
          opts.jobs = std::max(v.get<int>(), 1);
        } else {
          throw scrapbook::usage_error("unknown evaluation option '" + k + "'");
        }
      }
    }
    const auto responses = scrapbook::load_responses(responses_path);
    const auto r = scrapbook::build_report(d->data, responses, opts);
    scrapbook::write_report(r, out_dir);
    hand_out(summary, scrapbook::summary_table(r));
    return SB_OK;
  });
}

sb_status sb_build_bank(const char* annotations_path, const char* images_dir, const char* out_dir,
                        const char* classes_csv, int jobs, char** summary) {
  if (annotations_path == nullptr || images_dir == nullptr || out_dir == nullptr) {
    return usage("annotations, images directory and output directory are required");
  }
  return guarded([&] {
    scrapbook::CocoBuildOptions opts;
    opts.annotations = annotations_path;
    opts.images_dir = images_dir;
    opts.jobs = std::max(jobs, 1);
    if (classes_csv != nullptr) {
      std::stringstream ss(classes_csv);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) opts.classes.push_back(item);
      }
    }
    const auto entries = scrapbook::build_coco_bank(opts);
    scrapbook::write_bank(out_dir, entries);
    std::map<std::string, int> per_class;
    for (const auto& e : entries) ++per_class[e.object_class];
    hand_out(summary, json{{"entries", entries.size()}, {"classes", per_class}}.dump(2));
    return SB_OK;
  });
}

}  // extern "C"
