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

#ifndef SCRAPBOOK_QUESTIONS_TEMPLATES_HPP_
#define SCRAPBOOK_QUESTIONS_TEMPLATES_HPP_

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/rng.hpp"
#include "core/types.hpp"

namespace scrapbook {

struct Template {
  std::string id;
  QType qtype = QType::presence;
  Group group = Group::no_position;
  std::string kind;  // plain | position | attribute | color | shape | class | abs | rel
  std::string pattern;
};

// slot name -> surface realizations
struct ExpressionDictionary {
  std::map<std::string, std::vector<std::string>> slots;
};

struct TemplateLibrary {
  std::string version;
  ExpressionDictionary dictionary;
  std::vector<Template> templates;
  std::map<AnswerDomain, std::string> condition;
  std::string direction;
  std::string enumerated;  // contains {alternatives}

  static TemplateLibrary from_json(const nlohmann::json& j);
  // The library compiled from data/templates.json.
  static const TemplateLibrary& builtin();

  std::vector<const Template*> find(QType qtype, Group group, const std::string& kind) const;
};

/// Problems with a library: empty or duplicate realizations, slots that are
/// neither dictionary entries nor scene bindings, (qtype, group) pairs with
/// fewer than 5 templates or slots with fewer than 3 realizations.
std::vector<std::string> validate_templates(const TemplateLibrary& lib);

// Scene-side values for a template. `aliases` redirects a pattern slot to
// a keyed dictionary entry ({rel_pos} -> "rel_pos:left").
struct Bindings {
  std::map<std::string, std::string> values;
  std::map<std::string, std::string> aliases;
};

struct Paraphrase {
  std::string template_id;
  std::string text;
};

/// Up to `cap` distinct surface strings drawn without replacement from the
/// cross product of the templates and the dictionary realizations of their
/// slots. {art} becomes "a" or "an" by the following word.
std::vector<Paraphrase> expand_template(const std::vector<const Template*>& templates, const Bindings& bindings,
                                        const ExpressionDictionary& dict, Rng& rng, int cap);
std::vector<Paraphrase> expand_template(const Template& t, const Bindings& bindings,
                                        const ExpressionDictionary& dict, Rng& rng, int cap);

// Slot names of a pattern in order of first appearance.
std::vector<std::string> pattern_slots(const std::string& pattern);

// Replaces every "{art}" with the indefinite article agreeing with the next word.
std::string resolve_articles(const std::string& text);

}  // namespace scrapbook

#endif  // SCRAPBOOK_QUESTIONS_TEMPLATES_HPP_
