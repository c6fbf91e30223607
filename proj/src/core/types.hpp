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

#ifndef SCRAPBOOK_CORE_TYPES_HPP_
#define SCRAPBOOK_CORE_TYPES_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scrapbook {

// Error raised anywhere inside the library. The C API maps the kind onto
// its status codes.
class Error : public std::runtime_error {
 public:
  enum class Kind { usage, io, validation, internal };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline Error usage_error(const std::string& what) { return Error(Error::Kind::usage, what); }
inline Error io_error(const std::string& what) { return Error(Error::Kind::io, what); }
inline Error validation_error(const std::string& what) { return Error(Error::Kind::validation, what); }
inline Error internal_error(const std::string& what) { return Error(Error::Kind::internal, what); }

enum class ObjectMode { shapes, coco };
enum class SelectionMode { deterministic, random };
enum class CharMode { same, unique, random };
enum class BackgroundMode { solid, photo };

enum class Shape { circle, square, triangle, pentagon, hexagon, heptagon };
inline constexpr int kShapeCount = 6;

enum class Color { black, blue, green, orange, red, white, yellow };
inline constexpr int kColorCount = 7;

inline constexpr int kCocoClassCount = 59;

// Row-major cells of the 3x3 canvas partition.
enum class AbsolutePosition {
  top_left,
  top_center,
  top_right,
  center_left,
  center,
  center_right,
  bottom_left,
  bottom_center,
  bottom_right,
};
inline constexpr int kAbsolutePositionCount = 9;

enum class RelativePosition {
  upper_left,
  above,
  upper_right,
  left,
  right,
  lower_left,
  below,
  lower_right,
};
inline constexpr int kRelativePositionCount = 8;

RelativePosition opposite(RelativePosition r);

enum class QType { presence, counting, confirmation, recognition };
enum class Group { no_position, absolute_position, relative_position };
enum class Form { original, condition, direction, enumerated };
inline constexpr std::array<Form, 4> kAllForms = {Form::original, Form::condition, Form::direction,
                                                  Form::enumerated};

// Closed vocabulary an answer is drawn from.
enum class AnswerDomain { yes_no, count, color, shape, object_class, abs_position, rel_position };

enum class Status {
  correct,
  wrong_answer,
  multiple_answers,
  unexpected_answer,
  invalidated_by_simpler_image,
  answer_disagreement,
  error_disagreement,
};
inline constexpr int kStatusCount = 7;

enum class Approach { aggregated, original, condition, direction, enumerated };
inline constexpr std::array<Approach, 5> kAllApproaches = {
    Approach::aggregated, Approach::original, Approach::condition, Approach::direction,
    Approach::enumerated};

enum class Filter { non_absurd, non_absurd_star, full, full_star };
inline constexpr std::array<Filter, 4> kAllFilters = {Filter::non_absurd, Filter::non_absurd_star,
                                                      Filter::full, Filter::full_star};
inline bool is_starred(Filter f) { return f == Filter::non_absurd_star || f == Filter::full_star; }
inline bool excludes_absurd(Filter f) { return f == Filter::non_absurd || f == Filter::non_absurd_star; }

struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const { return x + w; }
  int bottom() const { return y + h; }
  std::int64_t area() const { return std::int64_t{w} * h; }
  bool empty() const { return w <= 0 || h <= 0; }
  bool contains(const Rect& o) const {
    return o.x >= x && o.y >= y && o.right() <= right() && o.bottom() <= bottom();
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

Rect intersect(const Rect& a, const Rect& b);

struct GenerationConfig {
  ObjectMode object_mode = ObjectMode::shapes;
  SelectionMode selection_mode = SelectionMode::deterministic;
  CharMode class_char_mode = CharMode::unique;
  CharMode color_char_mode = CharMode::unique;
  CharMode size_char_mode = CharMode::unique;
  int sets = 3;               // S
  int objects_per_set = 5;    // N
  int backgrounds = 3;        // B
  int arrangements = 2;       // A
  int objects_per_image = 3;  // x
  int region_pairs = 3;       // P
  int questions_per_type = 3;
  std::uint64_t seed = 0;
  int canvas_width = 1280;
  int canvas_height = 768;
  // Number of rungs on the 70 + 40*i size ladder available to selection.
  int size_levels = 7;
  BackgroundMode background_mode = BackgroundMode::solid;
  std::string background_dir;
  std::string bank_dir;
  int max_attempts = 1000;

  friend bool operator==(const GenerationConfig&, const GenerationConfig&) = default;
};

struct ObjectSpec {
  std::string object_class;  // shape name or COCO class name
  std::optional<Color> color;
  std::optional<int> size_index;
  std::optional<std::string> bank_id;

  friend bool operator==(const ObjectSpec&, const ObjectSpec&) = default;
};

struct Placement {
  ObjectSpec object;
  Rect bbox;
  std::string mask_ref;

  friend bool operator==(const Placement&, const Placement&) = default;
};

struct SceneImage {
  std::string image_id;
  std::optional<std::string> parent_id;
  std::string background_id;
  std::string arrangement_id;
  std::vector<Placement> placements;
  std::optional<int> main_index;
  std::optional<int> reference_index;
  std::pair<AbsolutePosition, AbsolutePosition> abs_pos_pair{};
  RelativePosition rel_pos{};

  friend bool operator==(const SceneImage&, const SceneImage&) = default;
};

struct AnswerKey {
  enum class Kind { yes, no, number, text, unk };

  Kind kind = Kind::unk;
  std::optional<int> number;
  std::optional<std::string> text;

  static AnswerKey yes() { return {Kind::yes, {}, {}}; }
  static AnswerKey no() { return {Kind::no, {}, {}}; }
  static AnswerKey unk() { return {Kind::unk, {}, {}}; }
  static AnswerKey count(int n) { return {Kind::number, n, {}}; }
  static AnswerKey label(std::string t) { return {Kind::text, {}, std::move(t)}; }

  bool is_unk() const { return kind == Kind::unk; }
  friend bool operator==(const AnswerKey&, const AnswerKey&) = default;
};

struct QuestionRecord {
  std::string question_id;
  std::string image_id;
  QType qtype = QType::presence;
  Group group = Group::no_position;
  int subgroup = 1;
  Form form = Form::original;
  std::string text;
  std::vector<std::string> concepts;  // sorted, namespaced tags
  int level = 1;
  AnswerKey expected;
  AnswerDomain domain = AnswerDomain::yes_no;
  std::string template_id;
  std::string parameter_set_id;

  friend bool operator==(const QuestionRecord&, const QuestionRecord&) = default;
};

struct ResponseRecord {
  std::string question_id;
  Form form = Form::original;
  std::string raw_text;

  friend bool operator==(const ResponseRecord&, const ResponseRecord&) = default;
};

struct Verdict {
  std::string question_id;
  std::optional<Form> form;  // empty on aggregate verdicts
  Status status = Status::correct;
};

}  // namespace scrapbook

#endif  // SCRAPBOOK_CORE_TYPES_HPP_
