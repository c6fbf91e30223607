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

#include "evaluator/evaluator.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>

#include "core/vocab.hpp"

namespace scrapbook {

namespace {

const std::map<std::string, std::string, std::less<>>& number_words() {
  static const std::map<std::string, std::string, std::less<>> m = {
      {"zero", "0"},     {"one", "1"},       {"two", "2"},        {"three", "3"},     {"four", "4"},
      {"five", "5"},     {"six", "6"},       {"seven", "7"},      {"eight", "8"},     {"nine", "9"},
      {"ten", "10"},     {"eleven", "11"},   {"twelve", "12"},    {"thirteen", "13"}, {"fourteen", "14"},
      {"fifteen", "15"}, {"sixteen", "16"},  {"seventeen", "17"}, {"eighteen", "18"}, {"nineteen", "19"},
      {"twenty", "20"}};
  return m;
}

bool is_number(const std::string& t) {
  return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); });
}

const std::vector<std::string>& na_tokens() {
  static const std::vector<std::string> t = normalize(vocabulary().not_applicable);
  return t;
}

bool contains_run(const std::vector<std::string>& hay, const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > hay.size()) return false;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

// Token sequences accepted as the expected answer.
std::vector<std::vector<std::string>> expected_forms(const AnswerKey& key) {
  if (key.is_unk()) return {na_tokens(), {"unk"}};
  return {normalize(canonical_answer(key))};
}

struct PhraseTable {
  std::vector<std::vector<std::string>> phrases;  // longest first
  std::vector<std::string> names;
};

const PhraseTable& phrase_table(AnswerDomain d) {
  static const auto tables = [] {
    std::map<AnswerDomain, PhraseTable> out;
    for (AnswerDomain dom : all_values<AnswerDomain>()) {
      std::vector<std::pair<std::vector<std::string>, std::string>> entries;
      for (const auto& p : domain_phrases(dom)) entries.emplace_back(normalize(p), p);
      entries.emplace_back(na_tokens(), vocabulary().not_applicable);
      entries.emplace_back(std::vector<std::string>{"unk"}, vocabulary().not_applicable);
      std::stable_sort(entries.begin(), entries.end(),
                       [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
      PhraseTable t;
      for (auto& [tokens, name] : entries) {
        t.phrases.push_back(std::move(tokens));
        t.names.push_back(std::move(name));
      }
      out[dom] = std::move(t);
    }
    return out;
  }();
  return tables.at(d);
}

}  // namespace

std::vector<std::string> normalize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    if (auto it = number_words().find(cur); it != number_words().end()) cur = it->second;
    tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (c >= 0x80) {
      // Non-ASCII bytes are kept inside tokens.
      cur.push_back(static_cast<char>(c));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

bool match_answer(Form form, const AnswerKey& expected, std::string_view raw_text) {
  const auto tokens = normalize(raw_text);
  const bool exact = form == Form::condition || form == Form::enumerated;
  for (const auto& want : expected_forms(expected)) {
    if (exact ? tokens == want : contains_run(tokens, want)) return true;
  }
  return false;
}

std::vector<std::string> plausible_answers(AnswerDomain domain, std::string_view raw_text) {
  const auto tokens = normalize(raw_text);
  const PhraseTable& table = phrase_table(domain);
  std::set<std::string> found;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t advance = 1;
    bool hit = false;
    for (std::size_t p = 0; p < table.phrases.size(); ++p) {
      const auto& ph = table.phrases[p];
      if (i + ph.size() <= tokens.size() && std::equal(ph.begin(), ph.end(), tokens.begin() + i)) {
        found.insert(table.names[p]);
        advance = ph.size();
        hit = true;
        break;
      }
    }
    if (!hit && domain == AnswerDomain::count && is_number(tokens[i])) {
      found.insert(std::to_string(std::stoll(tokens[i].substr(0, 18))));
    }
    i += advance;
  }
  return {found.begin(), found.end()};
}

Status classify_single(const AnswerKey& expected, std::string_view raw_text, AnswerDomain domain) {
  const auto found = plausible_answers(domain, raw_text);
  if (found.size() >= 2) return Status::multiple_answers;
  if (found.empty()) return Status::unexpected_answer;
  const std::string want = expected.is_unk() ? vocabulary().not_applicable : canonical_answer(expected);
  return found.front() == want ? Status::unexpected_answer : Status::wrong_answer;
}

Judgement judge(Form form, const AnswerKey& expected, AnswerDomain domain, std::string_view raw_text) {
  Judgement j;
  j.answers = plausible_answers(domain, raw_text);
  const std::string want = expected.is_unk() ? vocabulary().not_applicable : canonical_answer(expected);
  if (j.answers.size() >= 2) {
    j.status = Status::multiple_answers;
  } else if (j.answers.size() == 1 && j.answers.front() != want) {
    // "upper left" contains "left" but names another direction.
    j.status = Status::wrong_answer;
  } else if (match_answer(form, expected, raw_text)) {
    j.status = Status::correct;
  } else {
    j.status = classify_single(expected, raw_text, domain);
  }
  return j;
}

Status aggregate_forms(const std::array<Judgement, 4>& forms) {
  std::set<Status> errors;
  bool any_correct = false;
  for (const auto& f : forms) {
    if (f.status == Status::correct) {
      any_correct = true;
    } else {
      errors.insert(f.status);
    }
  }
  if (errors.empty()) return Status::correct;
  if (!any_correct && errors.size() == 1) {
    const Status s = *errors.begin();
    if (s == Status::unexpected_answer) return s;
    const bool same = std::all_of(forms.begin(), forms.end(),
                                  [&](const Judgement& f) { return f.answers == forms.front().answers; });
    return same ? s : Status::answer_disagreement;
  }
  if (!errors.count(Status::unexpected_answer)) return Status::answer_disagreement;
  if (errors.size() >= 2) return Status::error_disagreement;
  return Status::unexpected_answer;
}

Consistency consistency(const std::vector<bool>& paraphrase_correct, double threshold) {
  if (paraphrase_correct.empty()) throw usage_error("consistency of an empty paraphrase set");
  const auto correct = std::count(paraphrase_correct.begin(), paraphrase_correct.end(), true);
  const auto n = static_cast<std::int64_t>(paraphrase_correct.size());
  Consistency c;
  c.ratio = static_cast<double>(correct) / static_cast<double>(n);
  c.pass = static_cast<double>(correct) >= threshold * static_cast<double>(n) - 1e-9;
  return c;
}

std::string precedence_key(const QuestionRecord& q) {
  std::string k = std::string(to_string(q.qtype)) + "|" + std::string(to_string(q.group)) + "|" +
                  std::string(to_string(q.form)) + "|" + canonical_answer(q.expected);
  for (const auto& c : q.concepts) k += "|" + c;
  return k;
}

std::vector<Status> precedence_invalidate(const std::vector<const QuestionRecord*>& questions,
                                          const std::vector<Status>& statuses,
                                          const std::vector<ChainLink>& images) {
  std::unordered_map<std::string, const std::optional<std::string>*> parent;
  for (const auto& l : images) parent[l.image_id] = &l.parent_id;
  // (image, key) pairs with a non-correct answer.
  std::set<std::pair<std::string, std::string>> failed;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    if (statuses[i] != Status::correct) failed.insert({questions[i]->image_id, precedence_key(*questions[i])});
  }
  std::vector<Status> out = statuses;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    if (out[i] != Status::correct) continue;
    const std::string key = precedence_key(*questions[i]);
    auto it = parent.find(questions[i]->image_id);
    std::size_t guard = 0;
    while (it != parent.end() && *it->second && guard++ < images.size()) {
      const std::string& anc = **it->second;
      if (failed.count({anc, key})) {
        out[i] = Status::invalidated_by_simpler_image;
        break;
      }
      it = parent.find(anc);
    }
  }
  return out;
}

}  // namespace scrapbook
