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

#include "questions/answer.hpp"

#include <optional>

#include "composer/composer.hpp"
#include "core/vocab.hpp"

namespace scrapbook {

namespace {

struct Constraints {
  std::vector<std::string> colors;
  std::vector<std::string> objects;
  std::vector<std::string> ref_colors;
  std::vector<std::string> ref_objects;
  std::optional<AbsolutePosition> abs;
  std::optional<RelativePosition> rel;
  std::string ask;
};

Constraints parse_concepts(const std::vector<std::string>& concepts) {
  Constraints c;
  for (const auto& t : concepts) {
    if (t.starts_with("color:")) {
      c.colors.push_back(t.substr(6));
    } else if (t.starts_with("object:")) {
      c.objects.push_back(t.substr(7));
    } else if (t.starts_with("ref:color:")) {
      c.ref_colors.push_back(t.substr(10));
    } else if (t.starts_with("ref:object:")) {
      c.ref_objects.push_back(t.substr(11));
    } else if (t.starts_with("abs:")) {
      c.abs = parse<AbsolutePosition>(t.substr(4));
    } else if (t.starts_with("rel:")) {
      c.rel = parse<RelativePosition>(t.substr(4));
    } else if (is_ask_tag(t)) {
      c.ask = t;
    } else {
      throw usage_error("unknown concept tag '" + t + "'");
    }
  }
  return c;
}

bool carries(const ObjectSpec& s, const std::vector<std::string>& colors, const std::vector<std::string>& objects) {
  for (const auto& c : colors) {
    if (!s.color || to_string(*s.color) != c) return false;
  }
  for (const auto& o : objects) {
    if (tag_value(s.object_class) != o) return false;
  }
  return true;
}

}  // namespace

SceneView scene_view(const SceneImage& img, int canvas_width, int canvas_height) {
  SceneView v{canvas_width, canvas_height, {}};
  for (const auto& p : img.placements) v.objects.push_back({p.object, p.bbox});
  return v;
}

AnswerKey answer_key(const SceneView& scene, QType qtype, const std::vector<std::string>& concepts) {
  const Constraints c = parse_concepts(concepts);
  if (c.rel.has_value() != (!c.ref_colors.empty() || !c.ref_objects.empty()) && c.ask != kAskRel) {
    throw internal_error("relative concepts need both a direction and a reference");
  }
  const bool has_ref = !c.ref_colors.empty() || !c.ref_objects.empty();
  std::optional<std::size_t> ref;
  if (has_ref) {
    int n = 0;
    for (std::size_t i = 0; i < scene.objects.size(); ++i) {
      if (carries(scene.objects[i].spec, c.ref_colors, c.ref_objects)) {
        ref = i;
        ++n;
      }
    }
    if (n == 0) return AnswerKey::unk();
    if (n > 1) throw internal_error("ambiguous reference in question concepts");
  }

  std::vector<std::size_t> matches;
  std::vector<std::optional<RelativePosition>> dirs;
  for (std::size_t i = 0; i < scene.objects.size(); ++i) {
    if (ref && i == *ref) continue;
    const SceneObject& o = scene.objects[i];
    if (!carries(o.spec, c.colors, c.objects)) continue;
    const double cx = o.bbox.x + o.bbox.w / 2.0;
    const double cy = o.bbox.y + o.bbox.h / 2.0;
    if (c.abs && region_at(cx, cy, scene.canvas_width, scene.canvas_height) != *c.abs) continue;
    std::optional<RelativePosition> dir;
    if (ref) dir = try_classify_relative(o.bbox, scene.objects[*ref].bbox);
    if (c.rel && dir != c.rel) continue;
    matches.push_back(i);
    dirs.push_back(dir);
  }

  switch (qtype) {
    case QType::presence:
    case QType::confirmation:
      return matches.empty() ? AnswerKey::no() : AnswerKey::yes();
    case QType::counting:
      return AnswerKey::count(static_cast<int>(matches.size()));
    case QType::recognition:
      break;
  }
  if (matches.empty()) throw internal_error("recognition question without a matching object");
  std::optional<std::string> answer;
  for (std::size_t k = 0; k < matches.size(); ++k) {
    const SceneObject& o = scene.objects[matches[k]];
    std::string a;
    if (c.ask == kAskColor) {
      if (!o.spec.color) throw internal_error("color asked of an uncolored object");
      a = std::string(to_string(*o.spec.color));
    } else if (c.ask == kAskObject) {
      a = o.spec.object_class;
    } else if (c.ask == kAskAbs) {
      a = answer_text(region_at(o.bbox.x + o.bbox.w / 2.0, o.bbox.y + o.bbox.h / 2.0, scene.canvas_width,
                                scene.canvas_height));
    } else if (c.ask == kAskRel) {
      if (!dirs[k]) throw internal_error("relative position asked without a defined direction");
      a = answer_text(*dirs[k]);
    } else {
      throw internal_error("recognition question without an ask: concept");
    }
    if (answer && *answer != a) throw internal_error("recognition matches disagree");
    answer = a;
  }
  return AnswerKey::label(*answer);
}

}  // namespace scrapbook
