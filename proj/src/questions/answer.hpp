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

#ifndef SCRAPBOOK_QUESTIONS_ANSWER_HPP_
#define SCRAPBOOK_QUESTIONS_ANSWER_HPP_

#include <string>
#include <vector>

#include "core/types.hpp"

namespace scrapbook {

struct SceneObject {
  ObjectSpec spec;
  Rect bbox;
};

struct SceneView {
  int canvas_width = 1280;
  int canvas_height = 768;
  std::vector<SceneObject> objects;
};

SceneView scene_view(const SceneImage& img, int canvas_width, int canvas_height);

/// Answer key of a question from scene geometry and its concept tags.
///
/// The reference (ref: tags) must match at most one object; none makes the
/// question incoherent (<unk>). The matched objects are those other than
/// the reference carrying every color:/object: tag, whose bbox center lies
/// in the abs: region and which sit in the rel: direction from the
/// reference. Presence and confirmation ask whether any match exists,
/// counting asks how many, recognition asks for the ask: attribute shared by
/// the matches. Throws an internal Error for ill-posed combinations.
AnswerKey answer_key(const SceneView& scene, QType qtype, const std::vector<std::string>& concepts);

}  // namespace scrapbook

#endif  // SCRAPBOOK_QUESTIONS_ANSWER_HPP_
