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

#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "check/check.hpp"
#include "core/vocab.hpp"
#include "pipeline/pipeline.hpp"

using namespace scrapbook;
namespace fs = std::filesystem;

namespace {

GenerationConfig small_config() {
  GenerationConfig cfg;
  cfg.sets = 1;
  cfg.objects_per_set = 3;
  cfg.backgrounds = 1;
  cfg.arrangements = 1;
  cfg.region_pairs = 2;
  cfg.objects_per_image = 3;
  cfg.canvas_width = 640;
  cfg.canvas_height = 384;
  cfg.seed = 11;
  return cfg;
}

const fs::path& dataset_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "scrapbook_check_test";
    fs::remove_all(d);
    generate_dataset(small_config(), d, {});
    return d;
  }();
  return dir;
}

bool names(const check::CheckReport& r, const std::string& subject) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const check::Violation& v) { return v.subject == subject; });
}

}  // namespace

TEST_CASE("geometry helpers") {
  CHECK(check::region_of(0, 0, 1280, 768) == AbsolutePosition::top_left);
  CHECK(check::region_of(425, 255, 1280, 768) == AbsolutePosition::top_left);
  CHECK(check::region_of(426, 256, 1280, 768) == AbsolutePosition::center);
  CHECK(check::region_of(1279, 767, 1280, 768) == AbsolutePosition::bottom_right);
  CHECK(check::direction_of({100, 0, 10, 10}, {0, 0, 10, 10}) == RelativePosition::right);
  CHECK(check::direction_of({0, 0, 10, 10}, {100, 100, 10, 10}) == RelativePosition::upper_left);
  CHECK_FALSE(check::direction_of({5, 5, 10, 10}, {5, 5, 10, 10}).has_value());
}

TEST_CASE("a freshly generated dataset passes") {
  const auto r = check::check_dataset(dataset_dir());
  for (const auto& v : r.violations) INFO(v.subject << ": " << v.message);
  CHECK(r.ok());
  CHECK(r.images > 0);
  CHECK(r.questions > 0);
  CHECK(r.census.questions == r.census.yes + r.census.no + r.census.number + r.census.text + r.census.unk);
}

TEST_CASE("a moved bounding box is reported against its image") {
  Dataset d = load_dataset(dataset_dir());
  auto it = std::find_if(d.manifest.images.begin(), d.manifest.images.end(),
                         [](const SceneImage& img) { return img.placements.size() >= 2; });
  REQUIRE(it != d.manifest.images.end());
  it->placements[0].bbox.x += 37;
  const auto r = check::check_dataset(d, dataset_dir());
  CHECK_FALSE(r.ok());
  CHECK(names(r, it->image_id));
}

TEST_CASE("a flipped answer key is reported against its question") {
  Dataset d = load_dataset(dataset_dir());
  auto it = std::find_if(d.questions.begin(), d.questions.end(),
                         [](const QuestionRecord& q) { return q.expected.kind == AnswerKey::Kind::yes; });
  REQUIRE(it != d.questions.end());
  const std::string id = it->question_id;
  for (auto& q : d.questions) {
    if (q.question_id == id) q.expected = AnswerKey::no();
  }
  const auto r = check::check_dataset(d, dataset_dir());
  CHECK_FALSE(r.ok());
  CHECK(names(r, id));
}

TEST_CASE("a form that disagrees with its siblings is reported") {
  Dataset d = load_dataset(dataset_dir());
  auto it = std::find_if(d.questions.begin(), d.questions.end(),
                         [](const QuestionRecord& q) { return q.form == Form::direction; });
  REQUIRE(it != d.questions.end());
  it->concepts.push_back("color:red");
  const auto r = check::check_dataset(d, dataset_dir());
  CHECK(names(r, it->question_id));
}

TEST_CASE("a missing image file is reported") {
  const fs::path copy = fs::temp_directory_path() / "scrapbook_check_missing";
  fs::remove_all(copy);
  fs::copy(dataset_dir(), copy, fs::copy_options::recursive);
  Dataset d = load_dataset(copy);
  const std::string victim = d.manifest.images.front().image_id;
  fs::remove(copy / "images" / (victim + ".png"));
  const auto r = check::check_dataset(copy);
  CHECK(names(r, victim));
}

TEST_CASE("oracle answers agree with the stored keys") {
  const Dataset d = load_dataset(dataset_dir());
  std::map<std::string, const SceneImage*> by_id;
  for (const auto& img : d.manifest.images) by_id[img.image_id] = &img;
  for (const auto& q : d.questions) {
    const auto key = check::oracle_answer(*by_id.at(q.image_id), d.manifest.config.canvas_width,
                                          d.manifest.config.canvas_height, q.qtype, q.concepts);
    CHECK(key == q.expected);
  }
}
