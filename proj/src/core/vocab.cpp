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

#include "core/vocab.hpp"

#include <algorithm>

#include <json.hpp>

namespace scrapbook {

namespace data {
extern const std::string_view vocabulary_json;
}

namespace {

Vocabulary load_vocabulary() {
  const auto j = nlohmann::json::parse(data::vocabulary_json);
  Vocabulary v;
  v.version = j.at("version").get<std::string>();
  for (Color c : all_values<Color>()) {
    const auto& rgb = j.at("palette").at(std::string(to_string(c)));
    v.palette[static_cast<int>(c)] = Rgb{rgb.at(0).get<std::uint8_t>(), rgb.at(1).get<std::uint8_t>(),
                                         rgb.at(2).get<std::uint8_t>()};
  }
  v.coco_classes = j.at("coco_classes").get<std::vector<std::string>>();
  v.irregular_plurals = j.at("irregular_plurals").get<std::map<std::string, std::string>>();
  v.unk_token = j.at("unk_token").get<std::string>();
  v.not_applicable = j.at("not_applicable").get<std::string>();
  const auto abs = j.at("abs_answers").get<std::vector<std::string>>();
  const auto rel = j.at("rel_answers").get<std::vector<std::string>>();
  if (abs.size() != kAbsolutePositionCount || rel.size() != kRelativePositionCount ||
      v.coco_classes.size() != kCocoClassCount) {
    throw internal_error("vocabulary.json does not match the compiled enum cardinalities");
  }
  std::copy(abs.begin(), abs.end(), v.abs_answers.begin());
  std::copy(rel.begin(), rel.end(), v.rel_answers.begin());
  return v;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

RelativePosition opposite(RelativePosition r) {
  switch (r) {
    case RelativePosition::upper_left: return RelativePosition::lower_right;
    case RelativePosition::above: return RelativePosition::below;
    case RelativePosition::upper_right: return RelativePosition::lower_left;
    case RelativePosition::left: return RelativePosition::right;
    case RelativePosition::right: return RelativePosition::left;
    case RelativePosition::lower_left: return RelativePosition::upper_right;
    case RelativePosition::below: return RelativePosition::above;
    case RelativePosition::lower_right: return RelativePosition::upper_left;
  }
  throw internal_error("bad RelativePosition");
}

Rect intersect(const Rect& a, const Rect& b) {
  const int x0 = std::max(a.x, b.x);
  const int y0 = std::max(a.y, b.y);
  const int x1 = std::min(a.right(), b.right());
  const int y1 = std::min(a.bottom(), b.bottom());
  if (x1 <= x0 || y1 <= y0) return Rect{x0, y0, 0, 0};
  return Rect{x0, y0, x1 - x0, y1 - y0};
}

const Vocabulary& vocabulary() {
  static const Vocabulary v = load_vocabulary();
  return v;
}

Rgb color_rgb(Color c) { return vocabulary().palette[static_cast<int>(c)]; }

bool is_shape_class(std::string_view name) { return try_parse<Shape>(name).has_value(); }

bool is_coco_class(std::string_view name) {
  const auto& classes = vocabulary().coco_classes;
  return std::binary_search(classes.begin(), classes.end(), name);
}

std::string plural(const std::string& noun) {
  // Multi-word nouns pluralize their head (last word).
  const auto space = noun.rfind(' ');
  if (space != std::string::npos) {
    return noun.substr(0, space + 1) + plural(noun.substr(space + 1));
  }
  const auto& irregular = vocabulary().irregular_plurals;
  if (auto it = irregular.find(noun); it != irregular.end()) return it->second;
  if (ends_with(noun, "s") || ends_with(noun, "x") || ends_with(noun, "ch") || ends_with(noun, "sh")) {
    return noun + "es";
  }
  if (noun.size() > 1 && noun.back() == 'y' &&
      std::string_view("aeiou").find(noun[noun.size() - 2]) == std::string_view::npos) {
    return noun.substr(0, noun.size() - 1) + "ies";
  }
  return noun + "s";
}

const std::string& answer_text(AbsolutePosition p) {
  return vocabulary().abs_answers[static_cast<int>(p)];
}

const std::string& answer_text(RelativePosition r) {
  return vocabulary().rel_answers[static_cast<int>(r)];
}

std::vector<std::string> domain_phrases(AnswerDomain d) {
  std::vector<std::string> out;
  switch (d) {
    case AnswerDomain::yes_no:
      out = {"yes", "no"};
      break;
    case AnswerDomain::count:
      break;
    case AnswerDomain::color:
      for (Color c : all_values<Color>()) out.emplace_back(to_string(c));
      break;
    case AnswerDomain::shape:
      for (Shape s : all_values<Shape>()) out.emplace_back(to_string(s));
      break;
    case AnswerDomain::object_class:
      out = vocabulary().coco_classes;
      break;
    case AnswerDomain::abs_position:
      out.assign(vocabulary().abs_answers.begin(), vocabulary().abs_answers.end());
      break;
    case AnswerDomain::rel_position:
      out.assign(vocabulary().rel_answers.begin(), vocabulary().rel_answers.end());
      break;
  }
  return out;
}

std::string canonical_answer(const AnswerKey& key) {
  switch (key.kind) {
    case AnswerKey::Kind::yes: return "yes";
    case AnswerKey::Kind::no: return "no";
    case AnswerKey::Kind::number:
      if (!key.number) throw internal_error("number answer key without a number");
      return std::to_string(*key.number);
    case AnswerKey::Kind::text:
      if (!key.text) throw internal_error("text answer key without text");
      return *key.text;
    case AnswerKey::Kind::unk: return vocabulary().unk_token;
  }
  throw internal_error("bad AnswerKey kind");
}

std::string tag_value(std::string_view s) {
  std::string out(s);
  std::replace(out.begin(), out.end(), ' ', '-');
  return out;
}

std::string color_tag(Color c) { return "color:" + std::string(to_string(c)); }
std::string object_tag(std::string_view cls) { return "object:" + tag_value(cls); }
std::string abs_tag(AbsolutePosition p) { return "abs:" + std::string(to_string(p)); }
std::string rel_tag(RelativePosition r) { return "rel:" + std::string(to_string(r)); }
std::string ref_tag(const std::string& tag) { return "ref:" + tag; }

bool is_ask_tag(std::string_view tag) { return tag.starts_with("ask:"); }
bool is_position_tag(std::string_view tag) {
  return tag.starts_with("abs:") || tag.starts_with("rel:");
}
bool is_relative_tag(std::string_view tag) { return tag.starts_with("rel:"); }

std::string base_concept(std::string_view tag) {
  if (tag.starts_with("ref:")) tag.remove_prefix(4);
  return std::string(tag);
}

}  // namespace scrapbook
