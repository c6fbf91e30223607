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

#ifndef SCRAPBOOK_CHECK_CHECK_HPP_
#define SCRAPBOOK_CHECK_CHECK_HPP_

// Dataset self-validation. Geometry and answer keys are recomputed here
// from the manifest and mask files without touching the composer or the
// question generator.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "core/manifest.hpp"
#include "core/types.hpp"

namespace scrapbook::check {

struct Violation {
  std::string subject;  // image or question id
  std::string message;
};

struct KeyCensus {
  std::int64_t questions = 0;  // distinct question ids
  std::int64_t yes = 0;
  std::int64_t no = 0;
  std::int64_t number = 0;
  std::int64_t text = 0;
  std::int64_t unk = 0;

  std::int64_t non_absurd() const { return questions - unk; }
};

struct CheckReport {
  std::int64_t images = 0;
  std::int64_t questions = 0;  // question records
  std::vector<Violation> violations;
  KeyCensus census;

  bool ok() const { return violations.empty(); }
};

// Region containing point (x, y) under thirds split at floor(k*dim/3).
AbsolutePosition region_of(double x, double y, int width, int height);
// Direction of `object` seen from `reference`, by bbox centers (y down).
std::optional<RelativePosition> direction_of(const Rect& object, const Rect& reference);
// Area share of `box` lying inside the region.
double share_inside(const Rect& box, AbsolutePosition region, int width, int height);

// Recomputed answer for a question about `img`; throws validation_error on
// malformed concept lists.
AnswerKey oracle_answer(const SceneImage& img, int width, int height, QType qtype,
                        const std::vector<std::string>& concepts);

std::vector<Violation> check_geometry(const Manifest& m, const std::filesystem::path& dataset_dir, int jobs = 1);
std::vector<Violation> check_questions(const Dataset& d);
KeyCensus key_census(const std::vector<QuestionRecord>& questions);

CheckReport check_dataset(const Dataset& d, const std::filesystem::path& dataset_dir, int jobs = 1);
CheckReport check_dataset(const std::filesystem::path& dataset_dir, int jobs = 1);

}  // namespace scrapbook::check

#endif  // SCRAPBOOK_CHECK_CHECK_HPP_
