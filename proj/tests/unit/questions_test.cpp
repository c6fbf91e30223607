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

#include <map>
#include <set>

#include "core/rng.hpp"
#include "core/manifest.hpp"
#include "core/vocab.hpp"
#include "oracle/oracle.hpp"
#include "questions/answer.hpp"
#include "questions/generator.hpp"
#include "questions/templates.hpp"

using namespace scrapbook;

namespace {

ObjectSpec shape(const std::string& cls, Color c, int size = 0) { return ObjectSpec{cls, c, size, std::nullopt}; }

Placement at(const ObjectSpec& s, int x, int y, int side = 70) { return Placement{s, {x, y, side, side}, "masks/x.png"}; }

SceneImage scene(std::vector<Placement> ps) {
  SceneImage img;
  img.image_id = "img";
  img.arrangement_id = "arr";
  img.background_id = "solid-black";
  img.placements = std::move(ps);
  img.main_index = 0;
  if (img.placements.size() > 1) img.reference_index = 1;
  img.abs_pos_pair = {AbsolutePosition::top_left, AbsolutePosition::center};
  img.rel_pos = RelativePosition::upper_left;
  return img;
}

const std::vector<ObjectSpec> kArrangement = {shape("square", Color::blue), shape("circle", Color::red),
                                              shape("triangle", Color::green), shape("pentagon", Color::yellow),
                                              shape("hexagon", Color::white)};

SceneImage three_object_scene() {
  return scene({at(kArrangement[0], 100, 60), at(kArrangement[1], 600, 350), at(kArrangement[2], 1000, 600)});
}

bool has_tag(const QuestionRecord& q, const std::string& prefix) {
  for (const auto& c : q.concepts) {
    if (c.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("builtin templates validate") {
  CHECK(validate_templates(TemplateLibrary::builtin()).empty());
}

TEST_CASE("template expansion reproduces the paraphrase of the example") {
  ExpressionDictionary dict;
  dict.slots["where_affirmation"] = {"", " located", " placed"};
  dict.slots["abs_pos"] = {"on the {abs}", "in the {abs} part", "at the {abs}"};
  const Template t{"t", QType::presence, Group::absolute_position, "plain",
                   "are you aware of {art} {obj}{where_affirmation} {abs_pos}?"};
  Bindings b;
  b.values = {{"obj", "dog"}, {"abs", "left"}};
  Rng rng(1);
  const auto all = expand_template(t, b, dict, rng, 100);
  CHECK(all.size() == 9);
  bool found = false;
  for (const auto& p : all) found = found || p.text == "are you aware of a dog on the left?";
  CHECK(found);

  Rng r1(2);
  CHECK(expand_template(t, b, dict, r1, 1).size() == 1);
  Rng r3(3);
  const auto three = expand_template(t, b, dict, r3, 3);
  REQUIRE(three.size() == 3);
  CHECK(std::set<std::string>{three[0].text, three[1].text, three[2].text}.size() == 3);
  CHECK(resolve_articles("{art} apple and {art} pear") == "an apple and a pear");
}

TEST_CASE("answer keys for direct questions") {
  const SceneView v = scene_view(scene({at(shape("circle", Color::black), 100, 100)}), 1280, 768);
  CHECK(answer_key(v, QType::presence, {"object:circle"}) == AnswerKey::yes());
  CHECK(answer_key(v, QType::counting, {"object:pentagon"}) == AnswerKey::count(0));
  CHECK(answer_key(v, QType::presence, {"object:circle", "ref:object:square", "rel:left"}) == AnswerKey::unk());
  CHECK(answer_key(v, QType::recognition, {"ask:color", "object:circle"}) == AnswerKey::label("black"));
  CHECK(answer_key(v, QType::recognition, {"ask:abs", "object:circle"}) == AnswerKey::label("top left"));
}

TEST_CASE("enumerated alternatives") {
  CHECK(enumerated_alternatives(AnswerDomain::yes_no, 3) == std::vector<std::string>{"yes", "no", "not applicable"});
  CHECK(enumerated_alternatives(AnswerDomain::count, 2) == std::vector<std::string>{"0", "1", "2", "not applicable"});
}

TEST_CASE("single-object scenes get no relative questions") {
  GenerationConfig cfg;
  const auto qs = generate_for_image(scene({at(kArrangement[0], 100, 60)}), kArrangement, cfg);
  CHECK_FALSE(qs.empty());
  for (const auto& q : qs) CHECK(q.group != Group::relative_position);
}

TEST_CASE("generated questions are coherent") {
  GenerationConfig cfg;
  const SceneImage img = three_object_scene();
  const auto qs = generate_for_image(img, kArrangement, cfg);
  std::map<std::string, std::vector<const QuestionRecord*>> by_id;
  std::map<std::string, std::set<std::string>> by_set;
  std::set<std::string> files;
  for (const auto& q : qs) {
    by_id[q.question_id].push_back(&q);
    by_set[q.parameter_set_id].insert(q.question_id);
    files.insert(question_file_name(q.qtype, q.group, q.subgroup));
    const auto key = oracle::answer(img, 1280, 768, q);
    REQUIRE(key.has_value());
    CHECK(*key == q.expected);
  }
  for (const auto& [id, forms] : by_id) {
    REQUIRE(forms.size() == 4);
    for (const auto* f : forms) {
      CHECK(f->expected == forms[0]->expected);
      CHECK(f->concepts == forms[0]->concepts);
    }
  }
  for (const auto& [ps, ids] : by_set) CHECK(ids.size() <= 3);
  // Every relative subgroup and all absolute subgroups show up in a rich scene.
  for (int s = 1; s <= 4; ++s) CHECK(files.count(question_file_name(QType::presence, Group::relative_position, s)));
  for (int s = 1; s <= 3; ++s) CHECK(files.count(question_file_name(QType::counting, Group::absolute_position, s)));
}

TEST_CASE("question forms append their addenda") {
  GenerationConfig cfg;
  const auto qs = generate_for_image(three_object_scene(), kArrangement, cfg);
  for (const auto& q : qs) {
    if (q.form == Form::enumerated && q.domain == AnswerDomain::count) {
      CHECK(q.text.find("0, 1, 2, 3, or not applicable") != std::string::npos);
    }
    if (q.form == Form::enumerated && q.domain == AnswerDomain::yes_no) {
      CHECK(q.text.find("yes, no, or not applicable") != std::string::npos);
    }
  }
  QuestionRecord base;
  base.question_id = "q";
  base.text = "is there a circle?";
  base.domain = AnswerDomain::yes_no;
  base.expected = AnswerKey::yes();
  const auto forms = apply_forms(base, 1);
  REQUIRE(forms.size() == 4);
  CHECK(forms[0].text == base.text);
  for (const auto& f : forms) CHECK(f.expected == base.expected);
}

TEST_CASE("shapes mode asks about characteristics, COCO mode does not") {
  GenerationConfig shapes_cfg;
  const auto shape_qs = generate_for_image(three_object_scene(), kArrangement, shapes_cfg);
  std::size_t color_questions = 0;
  for (const auto& q : shape_qs) color_questions += has_tag(q, "color:") || has_tag(q, "ask:color");
  CHECK(color_questions > 0);

  GenerationConfig coco_cfg;
  coco_cfg.object_mode = ObjectMode::coco;
  coco_cfg.bank_dir = "unused";
  const std::vector<ObjectSpec> objs = {ObjectSpec{"bicycle", std::nullopt, std::nullopt, "1-1"},
                                        ObjectSpec{"oven", std::nullopt, std::nullopt, "2-2"},
                                        ObjectSpec{"toilet", std::nullopt, std::nullopt, "3-3"}};
  const auto coco_qs = generate_for_image(scene({at(objs[0], 100, 60), at(objs[1], 600, 350)}), objs, coco_cfg);
  CHECK_FALSE(coco_qs.empty());
  for (const auto& q : coco_qs) {
    CHECK_FALSE(has_tag(q, "color:"));
    CHECK_FALSE(has_tag(q, "ask:color"));
    if (q.qtype == QType::recognition && has_tag(q, "ask:object")) CHECK(q.domain == AnswerDomain::object_class);
  }
}

TEST_CASE("random scenes: every key matches the oracle") {
  GenerationConfig cfg;
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Placement> ps;
    const int n = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < n; ++i) {
      ps.push_back(at(kArrangement[i], static_cast<int>(rng.below(1100)), static_cast<int>(rng.below(600)), 70 + 40 * static_cast<int>(rng.below(3))));
    }
    const SceneImage img = scene(ps);
    for (const auto& q : generate_for_image(img, kArrangement, cfg)) {
      if (q.form != Form::original) continue;
      const auto key = oracle::answer(img, 1280, 768, q);
      REQUIRE(key.has_value());
      CHECK(*key == q.expected);
    }
  }
}

TEST_CASE("answer domains") {
  CHECK(answer_domain(QType::presence, {"object:circle"}, ObjectMode::shapes) == AnswerDomain::yes_no);
  CHECK(answer_domain(QType::counting, {"object:circle"}, ObjectMode::shapes) == AnswerDomain::count);
  CHECK(answer_domain(QType::recognition, {"ask:object", "color:red"}, ObjectMode::shapes) == AnswerDomain::shape);
  CHECK(answer_domain(QType::recognition, {"ask:object", "abs:center"}, ObjectMode::coco) == AnswerDomain::object_class);
  CHECK(answer_domain(QType::recognition, {"ask:rel", "object:circle", "ref:object:square"}, ObjectMode::shapes) ==
        AnswerDomain::rel_position);
}
