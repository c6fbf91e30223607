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

#ifndef SCRAPBOOK_EVALUATOR_REPORT_HPP_
#define SCRAPBOOK_EVALUATOR_REPORT_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "core/manifest.hpp"
#include "core/types.hpp"
#include "levels/levels.hpp"

namespace scrapbook {

struct Counts {
  std::int64_t correct = 0;
  std::int64_t total = 0;
  std::array<std::int64_t, kStatusCount> by_status{};

  double accuracy() const { return total > 0 ? static_cast<double>(correct) / static_cast<double>(total) : 0.0; }
  void add(Status s) {
    ++total;
    ++by_status[static_cast<int>(s)];
    if (s == Status::correct) ++correct;
  }
};

struct SliceKey {
  int level = 1;
  std::string concept_key;
  QType qtype = QType::presence;
  Group group = Group::no_position;
  int subgroup = 1;

  friend auto operator<=>(const SliceKey&, const SliceKey&) = default;
};

struct ConsistencyCounts {
  std::int64_t sets = 0;
  std::int64_t passing = 0;
};

struct EvaluationOptions {
  std::vector<Filter> filters{kAllFilters.begin(), kAllFilters.end()};
  std::vector<Approach> approaches{kAllApproaches.begin(), kAllApproaches.end()};
  int jobs = 1;
  bool write_verdicts = false;
};

struct Report {
  std::int64_t questions = 0;         // evaluated (all four forms answered)
  std::int64_t excluded_missing = 0;  // questions lacking a form response
  std::int64_t unknown_responses = 0;
  std::vector<Filter> filters;
  std::vector<Approach> approaches;
  std::map<std::pair<Filter, Approach>, Counts> totals;
  std::vector<SliceKey> slice_keys;  // sorted
  std::map<std::pair<Filter, Approach>, std::vector<Counts>> slice_counts;  // parallel to slice_keys
  std::map<std::pair<Filter, Approach>, ConsistencyCounts> consistency;
  GateResult gate;  // aggregated approach, non-absurd, unstarred
  std::vector<Verdict> verdicts;  // unstarred: one aggregate and four per-form per question
  bool write_verdicts = false;

  const Counts* slice(Filter f, Approach a, const SliceKey& key) const;
};

/// Scores responses against the dataset. Responses to unknown questions
/// are counted and ignored; a question missing any form is excluded.
Report build_report(const Dataset& dataset, const std::vector<ResponseRecord>& responses,
                    const EvaluationOptions& opts = {});

// 100 * correct / total.
double accuracy_percent(std::int64_t correct, std::int64_t total);
// accuracy_percent rounded to two decimals: "10.01".
std::string format_percent(std::int64_t correct, std::int64_t total);

nlohmann::json report_to_json(const Report& r);
std::string report_to_csv(const Report& r);
// bars/<level>_<concept class>.json contents keyed by file stem.
std::map<std::string, nlohmann::json> report_bars(const Report& r);

/// report.json, report.csv and bars/ under `out_dir`, plus verdicts.jsonl
/// when requested.
void write_report(const Report& r, const std::filesystem::path& out_dir);

// Filters x (corrects, %) table for the aggregated approach plus per-form
// accuracies.
std::string summary_table(const Report& r);

}  // namespace scrapbook

#endif  // SCRAPBOOK_EVALUATOR_REPORT_HPP_
