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

#ifndef SCRAPBOOK_LEVELS_LEVELS_HPP_
#define SCRAPBOOK_LEVELS_LEVELS_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/types.hpp"

namespace scrapbook {

inline constexpr double kPassThreshold = 0.8;

// correct/total >= threshold, tolerant to the binary representation of
// the threshold (4/5 passes 0.8).
inline bool meets_threshold(std::int64_t correct, std::int64_t total, double threshold) {
  return total > 0 && static_cast<double>(correct) >= threshold * static_cast<double>(total) - 1e-9;
}

/// Validation level (1..4) of a question from its concept tags. Throws a
/// validation Error for combinations no level covers.
int classify_level(QType qtype, Group group, const std::vector<std::string>& concepts);

// Concept keys a question contributes to at its level: each tag with the
// ask: tags dropped and ref: roles folded onto the base concept, plus the
// joined tuple ("color:red+object:circle") when there is more than one.
std::vector<std::string> concept_keys(const std::vector<std::string>& concepts);

struct CoverageEntry {
  std::string concept_key;
  int level = 1;
  bool covered = false;
  std::int64_t questions = 0;
  std::map<std::string, std::int64_t> by_subgroup;  // "presence_no_position_1" -> count
};

/// Dataset coverage per level. Level 1: a concept is covered when it has
/// presence questions keyed yes and keyed no, and counting questions keyed
/// 0 and keyed above 0. Level L > 1: only questions whose base concepts
/// include one covered at L-1 are admissible; a key is covered when its
/// admissible questions span a positive and a negative answer (yes/no,
/// >0/0) or a recognition answer.
std::map<int, std::vector<CoverageEntry>> coverage_enablement(const std::vector<QuestionRecord>& questions);
nlohmann::json enablement_to_json(const std::map<int, std::vector<CoverageEntry>>& cov);

// One question (not form) with its aggregated verdict.
struct GateInput {
  const QuestionRecord* question;
  bool correct;
};

struct GateResult {
  // level -> concept -> passed; only concepts evaluated at that level.
  std::map<int, std::map<std::string, bool>> evaluated;
  std::map<int, std::set<std::string>> passed;
};

/// Level-gated performance validation. A level-1 concept passes when every
/// (qtype, group, subgroup) slice of its level-1 questions reaches the
/// threshold. At level L > 1 only concepts that passed L-1 are evaluated,
/// on the level-L questions containing them, with the same rule.
GateResult performance_gate(const std::vector<GateInput>& inputs, double threshold = kPassThreshold);

}  // namespace scrapbook

#endif  // SCRAPBOOK_LEVELS_LEVELS_HPP_
