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

#include "levels/levels.hpp"

#include <algorithm>

#include "core/vocab.hpp"

namespace scrapbook {

using nlohmann::json;

namespace {

std::string fmt_concepts(const std::vector<std::string>& c) {
  std::string s;
  for (const auto& t : c) s += (s.empty() ? "" : ", ") + t;
  return "{" + s + "}";
}

std::vector<std::string> base_concepts(const std::vector<std::string>& concepts) {
  std::vector<std::string> out;
  for (const auto& t : concepts) {
    if (!is_ask_tag(t)) out.push_back(base_concept(t));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string slice_name(const QuestionRecord& q) {
  return std::string(to_string(q.qtype)) + "_" + std::string(to_string(q.group)) + "_" + std::to_string(q.subgroup);
}

bool positive(const QuestionRecord& q) {
  switch (q.expected.kind) {
    case AnswerKey::Kind::yes: return true;
    case AnswerKey::Kind::number: return q.expected.number.value_or(0) > 0;
    case AnswerKey::Kind::text: return true;
    default: return false;
  }
}

bool negative(const QuestionRecord& q) {
  return q.expected.kind == AnswerKey::Kind::no ||
         (q.expected.kind == AnswerKey::Kind::number && q.expected.number.value_or(0) == 0);
}

}  // namespace

int classify_level(QType qtype, Group group, const std::vector<std::string>& concepts) {
  (void)group;
  const auto n = concepts.size();
  bool pos = false, rel = false, ask = false;
  for (const auto& t : concepts) {
    if (t.starts_with("abs:") || t == kAskAbs) pos = true;
    if (t.starts_with("rel:") || t == kAskRel) pos = rel = true;
    if (is_ask_tag(t)) ask = true;
  }
  if (qtype == QType::presence || qtype == QType::counting) {
    if (!ask) {
      if (n == 1 && !pos) return 1;
      if (n == 2 && !rel) return 2;
      if (n == 3 && pos) return 3;
      if (n == 4 && rel) return 4;
    }
  } else {
    if (n == 2 && !rel) return 2;
    if (n == 3) return 3;
    if (n == 4 && pos) return 4;
  }
  throw validation_error("no level covers " + std::string(to_string(qtype)) + " with concepts " +
                         fmt_concepts(concepts));
}

std::vector<std::string> concept_keys(const std::vector<std::string>& concepts) {
  auto keys = base_concepts(concepts);
  if (keys.size() > 1) {
    std::string joined;
    for (const auto& k : keys) joined += (joined.empty() ? "" : "+") + k;
    keys.push_back(joined);
  }
  return keys;
}

std::map<int, std::vector<CoverageEntry>> coverage_enablement(const std::vector<QuestionRecord>& questions) {
  struct Acc {
    std::int64_t questions = 0;
    std::map<std::string, std::int64_t> by_subgroup;
    bool yes = false, no = false, zero = false, some = false;
  };
  std::map<int, std::vector<const QuestionRecord*>> by_level;
  for (const auto& q : questions) {
    if (q.form == Form::original) by_level[q.level].push_back(&q);
  }

  std::map<int, std::vector<CoverageEntry>> out;
  std::set<std::string> covered_prev;
  for (int level = 1; level <= 4; ++level) {
    std::map<std::string, Acc> acc;
    for (const QuestionRecord* q : by_level[level]) {
      const auto bases = base_concepts(q->concepts);
      if (level > 1 && std::none_of(bases.begin(), bases.end(),
                                    [&](const std::string& b) { return covered_prev.count(b) > 0; })) {
        continue;
      }
      for (const auto& key : concept_keys(q->concepts)) {
        Acc& a = acc[key];
        ++a.questions;
        ++a.by_subgroup[slice_name(*q)];
        if (level == 1) {
          if (q->qtype == QType::presence) {
            a.yes |= q->expected.kind == AnswerKey::Kind::yes;
            a.no |= q->expected.kind == AnswerKey::Kind::no;
          } else if (q->qtype == QType::counting) {
            a.some |= positive(*q);
            a.zero |= negative(*q);
          }
        } else {
          a.yes |= positive(*q);
          a.no |= negative(*q);
        }
      }
    }
    std::set<std::string> covered_now;
    auto& entries = out[level];
    for (auto& [key, a] : acc) {
      CoverageEntry e;
      e.concept_key = key;
      e.level = level;
      e.covered = level == 1 ? (a.yes && a.no && a.some && a.zero) : (a.yes && a.no);
      e.questions = a.questions;
      e.by_subgroup = std::move(a.by_subgroup);
      if (e.covered && key.find('+') == std::string::npos) covered_now.insert(key);
      entries.push_back(std::move(e));
    }
    covered_prev = std::move(covered_now);
  }
  return out;
}

json enablement_to_json(const std::map<int, std::vector<CoverageEntry>>& cov) {
  json levels = json::object();
  for (const auto& [level, entries] : cov) {
    json list = json::array();
    for (const auto& e : entries) {
      list.push_back({{"concept", e.concept_key},
                      {"covered", e.covered},
                      {"questions", e.questions},
                      {"subgroups", e.by_subgroup}});
    }
    levels[std::to_string(level)] = list;
  }
  return {{"threshold", kPassThreshold}, {"levels", levels}};
}

GateResult performance_gate(const std::vector<GateInput>& inputs, double threshold) {
  std::vector<QuestionRecord> originals;
  originals.reserve(inputs.size());
  for (const auto& in : inputs) {
    QuestionRecord q = *in.question;
    q.form = Form::original;
    originals.push_back(std::move(q));
  }
  std::set<std::string> candidates;
  auto coverage = coverage_enablement(originals);
  for (const auto& e : coverage[1]) {
    if (e.covered && e.concept_key.find('+') == std::string::npos) candidates.insert(e.concept_key);
  }

  GateResult result;
  for (int level = 1; level <= 4 && !candidates.empty(); ++level) {
    // concept -> slice -> (correct, total)
    std::map<std::string, std::map<std::string, std::pair<std::int64_t, std::int64_t>>> slices;
    for (const auto& in : inputs) {
      if (in.question->level != level) continue;
      for (const auto& b : base_concepts(in.question->concepts)) {
        if (!candidates.count(b)) continue;
        auto& s = slices[b][slice_name(*in.question)];
        s.first += in.correct ? 1 : 0;
        ++s.second;
      }
    }
    std::set<std::string> passed;
    for (const auto& [concept_tag, by_slice] : slices) {
      const bool ok = std::all_of(by_slice.begin(), by_slice.end(), [&](const auto& kv) {
        return meets_threshold(kv.second.first, kv.second.second, threshold);
      });
      result.evaluated[level][concept_tag] = ok;
      if (ok) passed.insert(concept_tag);
    }
    result.passed[level] = passed;
    candidates = std::move(passed);
  }
  return result;
}

}  // namespace scrapbook
