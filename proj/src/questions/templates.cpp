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

#include "questions/templates.hpp"

#include <algorithm>
#include <set>

#include "core/vocab.hpp"

namespace scrapbook {

namespace data {
extern const std::string_view templates_json;
}

using nlohmann::json;

namespace {

const std::set<std::string>& scene_slots() {
  static const std::set<std::string> s = {"art", "obj", "objs", "subj", "ref", "abs", "value", "claim", "rel_pos"};
  return s;
}

std::string substitute(const std::string& text, const std::map<std::string, std::string>& values) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto open = text.find('{', i);
    if (open == std::string::npos) {
      out.append(text, i);
      break;
    }
    const auto close = text.find('}', open);
    if (close == std::string::npos) throw usage_error("unterminated slot in '" + text + "'");
    out.append(text, i, open - i);
    const std::string name = text.substr(open + 1, close - open - 1);
    if (name == "art") {
      out += "{art}";
    } else {
      auto it = values.find(name);
      if (it == values.end()) throw usage_error("unbound slot {" + name + "}");
      out += it->second;
    }
    i = close + 1;
  }
  return out;
}

}  // namespace

TemplateLibrary TemplateLibrary::from_json(const json& j) {
  TemplateLibrary lib;
  try {
    lib.version = j.at("version").get<std::string>();
    lib.dictionary.slots = j.at("dictionary").get<std::map<std::string, std::vector<std::string>>>();
    for (const auto& t : j.at("templates")) {
      lib.templates.push_back({t.at("id").get<std::string>(), parse<QType>(t.at("qtype").get<std::string>()),
                               parse<Group>(t.at("group").get<std::string>()), t.at("kind").get<std::string>(),
                               t.at("pattern").get<std::string>()});
    }
    const auto& add = j.at("addenda");
    for (const auto& [k, v] : add.at("condition").items()) lib.condition[parse<AnswerDomain>(k)] = v.get<std::string>();
    lib.direction = add.at("direction").get<std::string>();
    lib.enumerated = add.at("enumerated").get<std::string>();
  } catch (const json::exception& e) {
    throw usage_error("malformed template library: " + std::string(e.what()));
  }
  return lib;
}

const TemplateLibrary& TemplateLibrary::builtin() {
  static const TemplateLibrary lib = from_json(json::parse(data::templates_json));
  return lib;
}

std::vector<const Template*> TemplateLibrary::find(QType qtype, Group group, const std::string& kind) const {
  std::vector<const Template*> out;
  for (const auto& t : templates) {
    if (t.qtype == qtype && t.group == group && t.kind == kind) out.push_back(&t);
  }
  return out;
}

std::vector<std::string> pattern_slots(const std::string& pattern) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while ((i = pattern.find('{', i)) != std::string::npos) {
    const auto close = pattern.find('}', i);
    if (close == std::string::npos) break;
    std::string name = pattern.substr(i + 1, close - i - 1);
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(std::move(name));
    i = close + 1;
  }
  return out;
}

std::vector<std::string> validate_templates(const TemplateLibrary& lib) {
  std::vector<std::string> problems;
  for (const auto& [slot, list] : lib.dictionary.slots) {
    if (list.size() < 3) problems.push_back("slot " + slot + " has fewer than 3 realizations");
    std::set<std::string> uniq(list.begin(), list.end());
    if (uniq.size() != list.size()) problems.push_back("slot " + slot + " repeats a realization");
  }
  std::set<std::string> ids;
  std::map<std::pair<QType, Group>, int> per_pair;
  for (const auto& t : lib.templates) {
    if (!ids.insert(t.id).second) problems.push_back("duplicate template id " + t.id);
    ++per_pair[{t.qtype, t.group}];
    for (const auto& s : pattern_slots(t.pattern)) {
      if (!lib.dictionary.slots.count(s) && !scene_slots().count(s)) {
        problems.push_back("template " + t.id + " uses unknown slot {" + s + "}");
      }
    }
  }
  for (QType q : all_values<QType>()) {
    for (Group g : all_values<Group>()) {
      if (per_pair[{q, g}] < 5) {
        problems.push_back(std::string(to_string(q)) + "/" + std::string(to_string(g)) + " has fewer than 5 templates");
      }
    }
  }
  for (AnswerDomain d : all_values<AnswerDomain>()) {
    if (!lib.condition.count(d)) problems.push_back("no condition addendum for " + std::string(to_string(d)));
  }
  if (lib.enumerated.find("{alternatives}") == std::string::npos) {
    problems.push_back("enumerated addendum lacks {alternatives}");
  }
  return problems;
}

std::string resolve_articles(const std::string& text) {
  static const std::string kArt = "{art}";
  std::string out = text;
  std::size_t i;
  while ((i = out.find(kArt)) != std::string::npos) {
    std::size_t j = i + kArt.size();
    while (j < out.size() && out[j] == ' ') ++j;
    const bool vowel = j < out.size() && std::string_view("aeiou").find(out[j]) != std::string_view::npos;
    out.replace(i, kArt.size(), vowel ? "an" : "a");
  }
  return out;
}

std::vector<Paraphrase> expand_template(const std::vector<const Template*>& templates, const Bindings& bindings,
                                        const ExpressionDictionary& dict, Rng& rng, int cap) {
  // Per template: the realization lists of its dictionary slots.
  struct Plan {
    const Template* t;
    std::vector<std::pair<std::string, const std::vector<std::string>*>> slots;
    std::size_t combos = 1;
  };
  std::vector<Plan> plans;
  std::size_t total = 0;
  for (const Template* t : templates) {
    Plan plan{t, {}, 1};
    for (const auto& s : pattern_slots(t->pattern)) {
      if (s == "art") continue;
      std::string key = s;
      if (auto a = bindings.aliases.find(s); a != bindings.aliases.end()) key = a->second;
      if (auto d = dict.slots.find(key); d != dict.slots.end()) {
        if (d->second.empty()) throw usage_error("dictionary slot " + key + " is empty");
        plan.slots.emplace_back(s, &d->second);
        plan.combos *= d->second.size();
      } else if (!bindings.values.count(s)) {
        throw usage_error("unbound slot {" + s + "} in template " + t->id);
      }
    }
    total += plan.combos;
    plans.push_back(std::move(plan));
  }

  std::vector<Paraphrase> out;
  std::set<std::string> seen;
  if (cap <= 0 || total == 0) return out;
  for (std::size_t pick : rng.sample_indices(total, total)) {
    std::size_t idx = pick;
    std::size_t p = 0;
    while (idx >= plans[p].combos) idx -= plans[p++].combos;
    const Plan& plan = plans[p];
    std::map<std::string, std::string> values = bindings.values;
    for (auto it = plan.slots.rbegin(); it != plan.slots.rend(); ++it) {
      const auto& list = *it->second;
      values[it->first] = list[idx % list.size()];
      idx /= list.size();
    }
    // Realizations may themselves reference scene bindings ({abs}, {value}).
    std::string text = substitute(plan.t->pattern, values);
    text = resolve_articles(substitute(text, bindings.values));
    if (seen.insert(text).second) {
      out.push_back({plan.t->id, std::move(text)});
      if (static_cast<int>(out.size()) == cap) break;
    }
  }
  return out;
}

std::vector<Paraphrase> expand_template(const Template& t, const Bindings& bindings,
                                        const ExpressionDictionary& dict, Rng& rng, int cap) {
  return expand_template(std::vector<const Template*>{&t}, bindings, dict, rng, cap);
}

}  // namespace scrapbook
