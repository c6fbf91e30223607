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

// Names, closed answer vocabularies and concept tags.
//
// Every enum has a stable identifier used in files and tags. Answer
// vocabularies (what counts as a "plausible" answer for a domain) and the
// color palette come from data/vocabulary.json, which is compiled into the
// library.

#ifndef SCRAPBOOK_CORE_VOCAB_HPP_
#define SCRAPBOOK_CORE_VOCAB_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/types.hpp"

namespace scrapbook {

template <class E>
struct EnumNames;

#define SCRAPBOOK_ENUM_NAMES(E, ...)                                \
  template <>                                                       \
  struct EnumNames<E> {                                             \
    static constexpr std::string_view kWhat = #E;                   \
    static constexpr auto kNames = std::to_array<std::string_view>( \
        {__VA_ARGS__});                                             \
  }

SCRAPBOOK_ENUM_NAMES(ObjectMode, "shapes", "coco");
SCRAPBOOK_ENUM_NAMES(SelectionMode, "deterministic", "random");
SCRAPBOOK_ENUM_NAMES(CharMode, "same", "unique", "random");
SCRAPBOOK_ENUM_NAMES(BackgroundMode, "solid", "photo");
SCRAPBOOK_ENUM_NAMES(Shape, "circle", "square", "triangle", "pentagon", "hexagon", "heptagon");
SCRAPBOOK_ENUM_NAMES(Color, "black", "blue", "green", "orange", "red", "white", "yellow");
SCRAPBOOK_ENUM_NAMES(AbsolutePosition, "top-left", "top-center", "top-right", "center-left",
                     "center", "center-right", "bottom-left", "bottom-center", "bottom-right");
SCRAPBOOK_ENUM_NAMES(RelativePosition, "upper-left", "above", "upper-right", "left", "right",
                     "lower-left", "below", "lower-right");
SCRAPBOOK_ENUM_NAMES(QType, "presence", "counting", "confirmation", "recognition");
SCRAPBOOK_ENUM_NAMES(Group, "no_position", "absolute_position", "relative_position");
SCRAPBOOK_ENUM_NAMES(Form, "original", "condition", "direction", "enumerated");
SCRAPBOOK_ENUM_NAMES(AnswerDomain, "yes_no", "count", "color", "shape", "object_class",
                     "abs_position", "rel_position");
SCRAPBOOK_ENUM_NAMES(Status, "correct", "wrong_answer", "multiple_answers", "unexpected_answer",
                     "invalidated_by_simpler_image", "answer_disagreement", "error_disagreement");
SCRAPBOOK_ENUM_NAMES(Approach, "aggregated", "original", "condition", "direction", "enumerated");
SCRAPBOOK_ENUM_NAMES(Filter, "non_absurd", "non_absurd_star", "full", "full_star");
SCRAPBOOK_ENUM_NAMES(AnswerKey::Kind, "yes", "no", "number", "text", "unk");

#undef SCRAPBOOK_ENUM_NAMES

template <class E>
constexpr std::string_view to_string(E value) {
  return EnumNames<E>::kNames[static_cast<std::size_t>(value)];
}

template <class E>
std::optional<E> try_parse(std::string_view name) {
  const auto& names = EnumNames<E>::kNames;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<E>(i);
  }
  return std::nullopt;
}

// Throws a usage Error naming the enum when `name` is not a member.
template <class E>
E parse(std::string_view name) {
  if (auto v = try_parse<E>(name)) return *v;
  throw usage_error("unknown " + std::string(EnumNames<E>::kWhat) + " value '" +
                    std::string(name) + "'");
}

template <class E>
constexpr auto all_values() {
  std::array<E, EnumNames<E>::kNames.size()> out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<E>(i);
  return out;
}

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Contents of data/vocabulary.json.
struct Vocabulary {
  std::string version;
  std::array<Rgb, kColorCount> palette{};
  std::vector<std::string> coco_classes;  // alphabetical, 59 entries
  std::map<std::string, std::string> irregular_plurals;
  std::string unk_token;                        // "<unk>"
  std::string not_applicable;                   // "not applicable"
  std::array<std::string, kAbsolutePositionCount> abs_answers;  // "top left", ...
  std::array<std::string, kRelativePositionCount> rel_answers;  // "upper left", ...
};

const Vocabulary& vocabulary();

Rgb color_rgb(Color c);
bool is_shape_class(std::string_view name);
bool is_coco_class(std::string_view name);
std::string plural(const std::string& noun);

// Canonical answer string for a position (what recognition keys carry).
const std::string& answer_text(AbsolutePosition p);
const std::string& answer_text(RelativePosition r);

// Canonical phrases of an answer domain, excluding "not applicable".
// The count domain is open-ended and returns an empty list; numbers are
// recognized by their digits.
std::vector<std::string> domain_phrases(AnswerDomain d);

// Canonical textual answer of a key: "yes", "no", "3", "red", "<unk>".
std::string canonical_answer(const AnswerKey& key);

// ---- concept tags ----------------------------------------------------------
//
// Tags are namespaced strings. Main-object descriptors use `color:` and
// `object:`; position constraints use `abs:` and `rel:`; the reference of a
// relative question uses `ref:color:` / `ref:object:`; recognition questions
// carry the asked attribute as `ask:color|object|abs|rel`.

std::string tag_value(std::string_view s);  // "red circle" -> "red-circle"
std::string color_tag(Color c);
std::string object_tag(std::string_view cls);
std::string abs_tag(AbsolutePosition p);
std::string rel_tag(RelativePosition r);
std::string ref_tag(const std::string& tag);  // "object:x" -> "ref:object:x"
inline constexpr std::string_view kAskColor = "ask:color";
inline constexpr std::string_view kAskObject = "ask:object";
inline constexpr std::string_view kAskAbs = "ask:abs";
inline constexpr std::string_view kAskRel = "ask:rel";

bool is_ask_tag(std::string_view tag);
bool is_position_tag(std::string_view tag);
bool is_relative_tag(std::string_view tag);
// Concept identity of a tag regardless of role: "ref:object:x" -> "object:x".
std::string base_concept(std::string_view tag);

}  // namespace scrapbook

#endif  // SCRAPBOOK_CORE_VOCAB_HPP_
