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

#include "evaluator/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "core/parallel.hpp"
#include "core/vocab.hpp"
#include "evaluator/evaluator.hpp"

namespace scrapbook {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct QuestionForms {
  std::array<const QuestionRecord*, 4> forms{};
};

std::string concept_class(const std::string& key) {
  if (key.find('+') != std::string::npos) return "tuple";
  return key.substr(0, key.find(':'));
}

json counts_json(const Counts& c) {
  json errors = json::object();
  for (Status s : all_values<Status>()) {
    if (s != Status::correct) errors[std::string(to_string(s))] = c.by_status[static_cast<int>(s)];
  }
  return {{"correct", c.correct}, {"total", c.total}, {"accuracy", c.accuracy()}, {"errors", errors}};
}

// Calls fn(filter, approach, key, counts) for every non-empty slice.
template <typename Fn>
void for_each_slice(const Report& r, Fn&& fn) {
  for (const auto& [fa, counts] : r.slice_counts) {
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (counts[i].total > 0) fn(fa.first, fa.second, r.slice_keys[i], counts[i]);
    }
  }
}

}  // namespace

double accuracy_percent(std::int64_t correct, std::int64_t total) {
  if (total <= 0) return 0.0;
  return 100.0 * static_cast<double>(correct) / static_cast<double>(total);
}

std::string format_percent(std::int64_t correct, std::int64_t total) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", accuracy_percent(correct, total));
  return buf;
}

Report build_report(const Dataset& dataset, const std::vector<ResponseRecord>& responses,
                    const EvaluationOptions& opts) {
  Report r;
  r.filters = opts.filters;
  r.approaches = opts.approaches;

  std::unordered_map<std::string, QuestionForms> by_id;
  std::vector<std::string> order;
  for (const auto& q : dataset.questions) {
    auto [it, fresh] = by_id.try_emplace(q.question_id);
    if (fresh) order.push_back(q.question_id);
    it->second.forms[static_cast<int>(q.form)] = &q;
  }
  std::unordered_map<std::string, std::array<const std::string*, 4>> answers;
  for (const auto& resp : responses) {
    if (!by_id.count(resp.question_id)) {
      ++r.unknown_responses;
      continue;
    }
    answers[resp.question_id][static_cast<int>(resp.form)] = &resp.raw_text;
  }

  std::vector<const QuestionForms*> evaluated;
  std::vector<const std::array<const std::string*, 4>*> evaluated_answers;
  for (const auto& id : order) {
    const QuestionForms& qf = by_id.at(id);
    auto a = answers.find(id);
    const bool complete = a != answers.end() &&
                          std::all_of(a->second.begin(), a->second.end(), [](const std::string* s) { return s; }) &&
                          std::all_of(qf.forms.begin(), qf.forms.end(), [](const QuestionRecord* q) { return q; });
    if (!complete) {
      ++r.excluded_missing;
      continue;
    }
    evaluated.push_back(&qf);
    evaluated_answers.push_back(&a->second);
  }
  const std::size_t n = evaluated.size();
  r.questions = static_cast<std::int64_t>(n);

  // statuses[approach index][question]
  std::vector<std::array<Judgement, 4>> judgements(n);
  parallel_for(n, opts.jobs, [&](std::size_t i) {
    for (int f = 0; f < 4; ++f) {
      const QuestionRecord& q = *evaluated[i]->forms[f];
      judgements[i][f] = judge(q.form, q.expected, q.domain, *(*evaluated_answers[i])[f]);
    }
  });

  std::vector<ChainLink> links;
  for (const auto& img : dataset.manifest.images) links.push_back({img.image_id, img.parent_id});

  for (std::size_t i = 0; i < n; ++i) {
    const QuestionRecord& q = *evaluated[i]->forms[0];
    r.verdicts.push_back({q.question_id, std::nullopt, aggregate_forms(judgements[i])});
    for (int f = 0; f < 4; ++f) r.verdicts.push_back({q.question_id, static_cast<Form>(f), judgements[i][f].status});
  }

  // Slice membership and paraphrase set are fixed per question.
  std::map<SliceKey, int> interned;
  std::vector<std::vector<std::map<SliceKey, int>::iterator>> members(n);
  std::unordered_map<std::string, int> set_ids;
  std::vector<int> set_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    const QuestionRecord& q = *evaluated[i]->forms[0];
    for (const auto& key : concept_keys(q.concepts)) {
      members[i].push_back(interned.try_emplace(SliceKey{q.level, key, q.qtype, q.group, q.subgroup}, 0).first);
    }
    set_of[i] = set_ids.try_emplace(q.parameter_set_id, static_cast<int>(set_ids.size())).first->second;
  }
  for (auto& [key, id] : interned) {
    id = static_cast<int>(r.slice_keys.size());
    r.slice_keys.push_back(key);
  }
  std::vector<std::vector<int>> slice_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto it : members[i]) slice_of[i].push_back(it->second);
  }
  members.clear();

  for (Approach a : opts.approaches) {
    std::vector<const QuestionRecord*> records(n);
    std::vector<Status> raw(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (a == Approach::aggregated) {
        records[i] = evaluated[i]->forms[0];
        raw[i] = aggregate_forms(judgements[i]);
      } else {
        const int f = static_cast<int>(a) - 1;
        records[i] = evaluated[i]->forms[f];
        raw[i] = judgements[i][f].status;
      }
    }
    const bool need_star = std::any_of(opts.filters.begin(), opts.filters.end(), is_starred);
    const std::vector<Status> starred = need_star ? precedence_invalidate(records, raw, links) : raw;

    for (Filter f : opts.filters) {
      Counts& total = r.totals[{f, a}];
      std::vector<Counts>& slices = r.slice_counts[{f, a}];
      slices.assign(r.slice_keys.size(), Counts{});
      std::vector<std::pair<std::int64_t, std::int64_t>> sets(set_ids.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (excludes_absurd(f) && records[i]->expected.is_unk()) continue;
        const Status s = is_starred(f) ? starred[i] : raw[i];
        total.add(s);
        for (int id : slice_of[i]) slices[id].add(s);
        auto& [correct, count] = sets[set_of[i]];
        ++count;
        if (s == Status::correct) ++correct;
      }
      ConsistencyCounts& cc = r.consistency[{f, a}];
      for (const auto& [correct, count] : sets) {
        if (count == 0) continue;
        ++cc.sets;
        if (meets_threshold(correct, count, kPassThreshold)) ++cc.passing;
      }
    }
  }

  std::vector<GateInput> gate_inputs;
  for (std::size_t i = 0; i < n; ++i) {
    const QuestionRecord& q = *evaluated[i]->forms[0];
    if (q.expected.is_unk()) continue;
    gate_inputs.push_back({&q, aggregate_forms(judgements[i]) == Status::correct});
  }
  r.gate = performance_gate(gate_inputs);
  r.write_verdicts = opts.write_verdicts;
  return r;
}

const Counts* Report::slice(Filter f, Approach a, const SliceKey& key) const {
  auto table = slice_counts.find({f, a});
  if (table == slice_counts.end()) return nullptr;
  auto it = std::lower_bound(slice_keys.begin(), slice_keys.end(), key);
  if (it == slice_keys.end() || !(*it == key)) return nullptr;
  return &table->second[static_cast<std::size_t>(it - slice_keys.begin())];
}

json report_to_json(const Report& r) {
  json summary = json::array();
  for (const auto& [fa, c] : r.totals) {
    json row = counts_json(c);
    row["filter"] = to_string(fa.first);
    row["approach"] = to_string(fa.second);
    row["percent"] = format_percent(c.correct, c.total);
    summary.push_back(row);
  }
  json cons = json::array();
  for (const auto& [fa, c] : r.consistency) {
    cons.push_back({{"filter", to_string(fa.first)},
                    {"approach", to_string(fa.second)},
                    {"paraphrase_sets", c.sets},
                    {"passing", c.passing},
                    {"rate", c.sets > 0 ? static_cast<double>(c.passing) / static_cast<double>(c.sets) : 0.0}});
  }
  json gate = json::object();
  for (const auto& [level, evaluated] : r.gate.evaluated) {
    auto p = r.gate.passed.find(level);
    gate[std::to_string(level)] = {{"evaluated", evaluated},
                                   {"passed", p == r.gate.passed.end() ? json::array() : json(p->second)}};
  }
  json slices = json::array();
  for_each_slice(r, [&](Filter f, Approach a, const SliceKey& s, const Counts& c) {
    json row = counts_json(c);
    row["filter"] = to_string(f);
    row["approach"] = to_string(a);
    row["level"] = s.level;
    row["concept"] = s.concept_key;
    row["qtype"] = to_string(s.qtype);
    row["group"] = to_string(s.group);
    row["subgroup"] = s.subgroup;
    slices.push_back(std::move(row));
  });
  return {{"questions_evaluated", r.questions},
          {"excluded_missing_forms", r.excluded_missing},
          {"responses_without_question", r.unknown_responses},
          {"summary", summary},
          {"consistency", cons},
          {"gate", {{"threshold", kPassThreshold}, {"approach", "aggregated"}, {"filter", "non_absurd"}, {"levels", gate}}},
          {"slices", slices}};
}

std::string report_to_csv(const Report& r) {
  std::ostringstream out;
  out << "filter,approach,level,concept,qtype,group,subgroup,correct,total,accuracy";
  for (Status s : all_values<Status>()) {
    if (s != Status::correct) out << "," << to_string(s);
  }
  out << "\n";
  for_each_slice(r, [&](Filter f, Approach a, const SliceKey& s, const Counts& c) {
    char acc[32];
    std::snprintf(acc, sizeof acc, "%.6f", c.accuracy());
    out << to_string(f) << "," << to_string(a) << "," << s.level << "," << s.concept_key << "," << to_string(s.qtype)
        << "," << to_string(s.group) << "," << s.subgroup << "," << c.correct << "," << c.total << "," << acc;
    for (Status st : all_values<Status>()) {
      if (st != Status::correct) out << "," << c.by_status[static_cast<int>(st)];
    }
    out << "\n";
  });
  return out.str();
}

std::map<std::string, json> report_bars(const Report& r) {
  std::map<std::string, json> files;
  for (std::size_t i = 0; i < r.slice_keys.size(); ++i) {
    const SliceKey& s = r.slice_keys[i];
    json bars = json::array();
    for (Approach a : r.approaches) {
      auto table = r.slice_counts.find({Filter::non_absurd, a});
      if (table == r.slice_counts.end()) continue;
      const Counts& c = table->second[i];
      if (c.total == 0) continue;
      bars.push_back({{"approach", to_string(a)},
                      {"correct", c.correct},
                      {"total", c.total},
                      {"accuracy", c.accuracy()},
                      {"pass", meets_threshold(c.correct, c.total, kPassThreshold)}});
    }
    if (bars.empty()) continue;
    const std::string cls = concept_class(s.concept_key);
    json& doc = files[std::to_string(s.level) + "_" + cls];
    if (doc.is_null()) {
      doc = {{"level", s.level}, {"concept_class", cls}, {"threshold", kPassThreshold}, {"groups", json::array()}};
    }
    const std::string group = std::string(to_string(s.qtype)) + "_" + std::string(to_string(s.group)) + "_" +
                              std::to_string(s.subgroup);
    doc["groups"].push_back({{"concept", s.concept_key}, {"group", group}, {"bars", std::move(bars)}});
  }
  return files;
}

void write_report(const Report& r, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir / "bars", ec);
  if (ec) throw io_error("cannot create " + (out_dir / "bars").string() + ": " + ec.message());
  write_text_file(out_dir / "report.json", report_to_json(r).dump() + "\n");
  write_text_file(out_dir / "report.csv", report_to_csv(r));
  if (r.write_verdicts) {
    std::string lines;
    for (const auto& v : r.verdicts) {
      json j = {{"question_id", v.question_id}, {"status", to_string(v.status)}};
      j["form"] = v.form ? json(to_string(*v.form)) : json("aggregate");
      lines += j.dump() + "\n";
    }
    write_text_file(out_dir / "verdicts.jsonl", lines);
  }
  for (const auto& [stem, doc] : report_bars(r)) write_text_file(out_dir / "bars" / (stem + ".json"), doc.dump(1) + "\n");
}

std::string summary_table(const Report& r) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-16s %-12s %10s %10s %8s\n", "filter", "approach", "correct", "total", "%");
  out << line;
  for (const auto& [fa, c] : r.totals) {
    std::snprintf(line, sizeof line, "%-16s %-12s %10lld %10lld %8s\n", std::string(to_string(fa.first)).c_str(),
                  std::string(to_string(fa.second)).c_str(), static_cast<long long>(c.correct),
                  static_cast<long long>(c.total), format_percent(c.correct, c.total).c_str());
    out << line;
  }
  out << "questions evaluated: " << r.questions << ", excluded (missing forms): " << r.excluded_missing
      << ", responses without question: " << r.unknown_responses << "\n";
  return out.str();
}

}  // namespace scrapbook
