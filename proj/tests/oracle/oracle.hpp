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

#ifndef SCRAPBOOK_TESTS_ORACLE_ORACLE_HPP_
#define SCRAPBOOK_TESTS_ORACLE_ORACLE_HPP_

// Test-side reference implementations. Nothing here calls into the
// composer, the question generator or the dataset checker.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bank/raster.hpp"
#include "core/types.hpp"

namespace oracle {

using scrapbook::AnswerKey;
using scrapbook::Mask;
using scrapbook::QuestionRecord;
using scrapbook::Rect;
using scrapbook::SceneImage;

// 0..8 row-major thirds of the canvas, containing the point.
int cell_index(double x, double y, int width, int height);
// 0 = right, counter-clockwise in 45 degree steps with y pointing down;
// -1 for a zero displacement.
int octant(double dx, double dy);
// Name used by the vocabulary for cell / octant indices ("top-left", "right").
std::string cell_name(int cell);
std::string octant_name(int oct);

// Scene-graph answer for a question; nullopt when the concept list does
// not describe an answerable question.
std::optional<AnswerKey> answer(const SceneImage& img, int width, int height, const QuestionRecord& q);

using MaskLoader = std::function<Mask(const std::string& mask_ref)>;

// Every geometric rule an emitted image must obey; returns one message per
// broken rule.
std::vector<std::string> verify_image(const SceneImage& img, const std::map<std::string, const SceneImage*>& by_id,
                                      int width, int height, const MaskLoader& load);

// Fraction of the box area inside cell `cell`.
double inside_fraction(const Rect& box, int cell, int width, int height);

}  // namespace oracle

#endif  // SCRAPBOOK_TESTS_ORACLE_ORACLE_HPP_
