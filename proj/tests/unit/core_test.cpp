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

#include <filesystem>
#include <set>

#include "core/config.hpp"
#include "core/manifest.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "core/vocab.hpp"

using namespace scrapbook;
namespace fs = std::filesystem;

namespace {

GenerationConfig reference_config() {
  GenerationConfig c;
  c.sets = 3;
  c.objects_per_set = 5;
  c.backgrounds = 3;
  c.arrangements = 2;
  c.objects_per_image = 3;
  c.region_pairs = 3;
  c.questions_per_type = 3;
  return c;
}

bool mentions(const std::vector<std::string>& problems, const std::string& needle) {
  for (const auto& p : problems) {
    if (p.find(needle) != std::string::npos) return true;
  }
  return false;
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("scrapbook_core_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("reference configuration is valid") { CHECK(validate_config(reference_config()).empty()); }

TEST_CASE("x larger than N is rejected") {
  auto c = reference_config();
  c.objects_per_image = 6;
  CHECK(mentions(validate_config(c), "x <= N"));
}

TEST_CASE("arrangement bound equals the number of ordered pairs") {
  // Brute-force ordered pairs of five distinct objects.
  int pairs = 0;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) pairs += i != j;
  }
  REQUIRE(pairs == 20);
  auto c = reference_config();
  c.arrangements = 21;
  CHECK(mentions(validate_config(c), "A <= N*(N-1)=20"));
  c.arrangements = 20;
  CHECK(validate_config(c).empty());
}

TEST_CASE("config JSON round trip and strict keys") {
  auto c = reference_config();
  c.seed = 0xfeedbeefcafeULL;
  c.color_char_mode = CharMode::random;
  CHECK(config_from_json(config_to_json(c)) == c);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"arrangements", 2}}), Error);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"S", "three"}}), Error);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::array()), Error);
}

TEST_CASE("enum names round trip") {
  for (auto v : all_values<AbsolutePosition>()) CHECK(parse<AbsolutePosition>(to_string(v)) == v);
  for (auto v : all_values<RelativePosition>()) CHECK(parse<RelativePosition>(to_string(v)) == v);
  for (auto v : all_values<Status>()) CHECK(parse<Status>(to_string(v)) == v);
  CHECK_FALSE(try_parse<Color>("purple").has_value());
  CHECK_THROWS_AS(parse<Filter>("partial"), Error);
}

TEST_CASE("opposite directions are involutive") {
  for (auto r : all_values<RelativePosition>()) {
    CHECK(opposite(opposite(r)) == r);
    CHECK(opposite(r) != r);
  }
  CHECK(opposite(RelativePosition::upper_left) == RelativePosition::lower_right);
}

TEST_CASE("vocabulary") {
  CHECK(vocabulary().coco_classes.size() == kCocoClassCount);
  CHECK(std::is_sorted(vocabulary().coco_classes.begin(), vocabulary().coco_classes.end()));
  CHECK(is_coco_class("traffic light"));
  CHECK(is_shape_class("heptagon"));
  CHECK_FALSE(is_shape_class("octagon"));
  CHECK(plural("circle") == "circles");
  CHECK(plural("traffic light") == "traffic lights");
  CHECK(plural("bus") == "buses");
  CHECK(answer_text(AbsolutePosition::top_left) == "top left");
  CHECK(answer_text(RelativePosition::lower_right) == "lower right");
  CHECK(canonical_answer(AnswerKey::unk()) == "<unk>");
  CHECK(canonical_answer(AnswerKey::count(0)) == "0");
  CHECK(domain_phrases(AnswerDomain::color).size() == kColorCount);
}

TEST_CASE("concept tags") {
  CHECK(object_tag("fire hydrant") == "object:fire-hydrant");
  CHECK(ref_tag(object_tag("square")) == "ref:object:square");
  CHECK(base_concept("ref:object:square") == "object:square");
  CHECK(is_relative_tag(rel_tag(RelativePosition::left)));
  CHECK(is_position_tag(abs_tag(AbsolutePosition::center)));
  CHECK(is_ask_tag(kAskColor));
}

TEST_CASE("derived seeds are stable and separate streams") {
  CHECK(derive_seed(7, {1, 2}) == derive_seed(7, {1, 2}));
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 50; ++a) {
    for (std::uint64_t b = 0; b < 50; ++b) seen.insert(derive_seed(7, {a, b}));
  }
  CHECK(seen.size() == 2500);
  CHECK(derive_seed(7, {1, 2}) != derive_seed(8, {1, 2}));
}

TEST_CASE("sample_indices yields distinct in-range indices") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(100);
    const std::size_t k = rng.below(n + 5);
    const auto idx = rng.sample_indices(n, k);
    CHECK(idx.size() == std::min(n, k));
    std::set<std::size_t> s(idx.begin(), idx.end());
    CHECK(s.size() == idx.size());
    CHECK((idx.empty() || *s.rbegin() < n));
  }
}

TEST_CASE("parallel_for output does not depend on the worker count") {
  auto run = [](int jobs) {
    std::vector<std::uint64_t> out(500);
    parallel_for(out.size(), jobs, [&](std::size_t i) { out[i] = derive_seed(3, {i}); });
    return out;
  };
  CHECK(run(1) == run(4));
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                    if (i == 7) throw validation_error("boom");
                  }),
                  Error);
}

TEST_CASE("question records survive a JSON round trip") {
  QuestionRecord q;
  q.question_id = "img:abc:0";
  q.image_id = "img";
  q.qtype = QType::recognition;
  q.group = Group::relative_position;
  q.form = Form::enumerated;
  q.text = "what is the color of the circle?";
  q.concepts = {"ask:color", "object:circle"};
  q.level = 2;
  q.expected = AnswerKey::label("red");
  q.domain = AnswerDomain::color;
  q.template_id = "rc-np-1";
  q.parameter_set_id = "img:abc";
  CHECK(question_from_json(to_json(q)) == q);
  q.expected = AnswerKey::unk();
  CHECK(question_from_json(to_json(q)) == q);
  CHECK(question_file_name(QType::counting, Group::absolute_position, 2) == "counting_absolute_position_2.jsonl");
}

TEST_CASE("empty dataset manifest echoes the config") {
  Dataset d;
  d.manifest.config = reference_config();
  const auto j = nlohmann::json::parse(canonical_manifest(d));
  CHECK(j["images"].empty());
  CHECK(manifest_from_json(j).config == reference_config());
  CHECK(manifest_from_json(j).question_files.empty());
}

TEST_CASE("responses file schema") {
  const fs::path dir = scratch("responses");
  std::vector<ResponseRecord> rs = {{"q:1", Form::original, "Yes."}, {"q:1", Form::enumerated, "yes"}};
  write_responses(dir / "r.jsonl", rs);
  CHECK(load_responses(dir / "r.jsonl") == rs);

  write_text_file(dir / "dup.jsonl", R"({"question_id":"q","form":"original","raw_text":"a"}
{"question_id":"q","form":"original","raw_text":"b"}
)");
  CHECK_THROWS(load_responses(dir / "dup.jsonl"));
  write_text_file(dir / "form.jsonl", R"({"question_id":"q","form":"sideways","raw_text":"a"})"
                                      "\n");
  CHECK_THROWS(load_responses(dir / "form.jsonl"));
  write_text_file(dir / "missing.jsonl", R"({"question_id":"q","form":"original"})"
                                         "\n");
  CHECK_THROWS(load_responses(dir / "missing.jsonl"));
  CHECK_THROWS_AS(load_responses(dir / "absent.jsonl"), Error);
}
