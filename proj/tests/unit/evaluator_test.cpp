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

#include "core/vocab.hpp"
#include "evaluator/evaluator.hpp"

using namespace scrapbook;

namespace {

using V = std::vector<std::string>;

Judgement J(Status s, V answers = {}) { return Judgement{s, std::move(answers)}; }

std::array<Judgement, 4> judge_all(const AnswerKey& key, AnswerDomain d, const std::array<const char*, 4>& raw) {
  std::array<Judgement, 4> out;
  for (int f = 0; f < 4; ++f) out[f] = judge(static_cast<Form>(f), key, d, raw[f]);
  return out;
}

QuestionRecord question(const std::string& id, const std::string& image, AnswerKey key) {
  QuestionRecord q;
  q.question_id = id;
  q.image_id = image;
  q.concepts = {"object:dog"};
  q.expected = key;
  return q;
}

}  // namespace

TEST_CASE("normalization") {
  CHECK(normalize("Yes, there is a dog.") == V{"yes", "there", "is", "a", "dog"});
  CHECK(normalize("Two") == V{"2"});
  CHECK(normalize("").empty());
  CHECK(normalize("  UPPER-left!! ") == V{"upper", "left"});
}

TEST_CASE("form matching") {
  CHECK(match_answer(Form::original, AnswerKey::yes(), "Yes, there is a bicycle."));
  CHECK_FALSE(match_answer(Form::enumerated, AnswerKey::yes(), "yes, there is"));
  CHECK(match_answer(Form::enumerated, AnswerKey::yes(), "Yes."));
  CHECK_FALSE(match_answer(Form::original, AnswerKey::no(), "not applicable"));
  CHECK(match_answer(Form::direction, AnswerKey::count(3), "I count three circles"));
  CHECK(match_answer(Form::condition, AnswerKey::unk(), "Not applicable"));
  CHECK(match_answer(Form::original, AnswerKey::unk(), "<unk>"));
}

TEST_CASE("single-form statuses") {
  CHECK(judge(Form::original, AnswerKey::label("green"), AnswerDomain::color, "yellow").status == Status::wrong_answer);
  CHECK(judge(Form::original, AnswerKey::yes(), AnswerDomain::yes_no, "yes and no").status == Status::multiple_answers);
  CHECK(judge(Form::original, AnswerKey::label("circle"), AnswerDomain::shape, "blue").status ==
        Status::unexpected_answer);
  CHECK(judge(Form::original, AnswerKey::label("left"), AnswerDomain::rel_position, "upper left").status ==
        Status::wrong_answer);
  CHECK(judge(Form::original, AnswerKey::label("upper left"), AnswerDomain::rel_position, "It is upper left.").status ==
        Status::correct);
  CHECK(judge(Form::enumerated, AnswerKey::yes(), AnswerDomain::yes_no, "yes, there is").status ==
        Status::unexpected_answer);
  CHECK(judge(Form::original, AnswerKey::count(2), AnswerDomain::count, "two").status == Status::correct);
  CHECK(judge(Form::original, AnswerKey::count(2), AnswerDomain::count, "3").status == Status::wrong_answer);
  CHECK(plausible_answers(AnswerDomain::abs_position, "the top left, or maybe center") == V{"center", "top left"});
}

TEST_CASE("form aggregation") {
  const AnswerKey green = AnswerKey::label("green");
  CHECK(aggregate_forms(judge_all(green, AnswerDomain::color, {"green", "green", "green", "green"})) == Status::correct);
  CHECK(aggregate_forms(judge_all(green, AnswerDomain::color, {"green", "yellow", "green", "green"})) ==
        Status::answer_disagreement);
  CHECK(aggregate_forms(judge_all(green, AnswerDomain::color, {"yellow", "yellow", "yellow", "yellow"})) ==
        Status::wrong_answer);
  CHECK(aggregate_forms(judge_all(green, AnswerDomain::color, {"yellow", "red", "yellow", "yellow"})) ==
        Status::answer_disagreement);
  CHECK(aggregate_forms(judge_all(green, AnswerDomain::color, {"yellow", "a cat", "green", "green"})) ==
        Status::error_disagreement);
  CHECK(aggregate_forms(judge_all(green, AnswerDomain::color, {"a cat", "a dog", "?", "hm"})) ==
        Status::unexpected_answer);
  CHECK(aggregate_forms({J(Status::multiple_answers, {"red", "green"}), J(Status::multiple_answers, {"red", "green"}),
                         J(Status::multiple_answers, {"red", "green"}), J(Status::multiple_answers, {"red", "green"})}) ==
        Status::multiple_answers);
}

TEST_CASE("aggregate is correct only when every form is") {
  const std::array<Status, 4> pool = {Status::correct, Status::wrong_answer, Status::unexpected_answer,
                                      Status::multiple_answers};
  for (int code = 0; code < 256; ++code) {
    std::array<Judgement, 4> forms;
    bool all = true;
    for (int f = 0; f < 4; ++f) {
      forms[f] = J(pool[(code >> (2 * f)) & 3]);
      all = all && forms[f].status == Status::correct;
    }
    CHECK((aggregate_forms(forms) == Status::correct) == all);
  }
}

TEST_CASE("consistency ratio") {
  CHECK(consistency({true, true, true, true, false}).pass);
  CHECK(consistency({true, true, true, true, false}).ratio == doctest::Approx(0.8));
  CHECK_FALSE(consistency({true, true, true, false, false}).pass);
  CHECK_FALSE(consistency({false, false, false}).pass);
  CHECK(consistency({true, true, true}).ratio == 1.0);
  CHECK_THROWS_AS(consistency({}), Error);
}

TEST_CASE("simpler-image precedence") {
  const std::vector<ChainLink> chain = {{"a-1", std::nullopt}, {"a-2", "a-1"}, {"a-3", "a-2"}, {"b-1", std::nullopt}};
  const auto parent = question("p", "a-1", AnswerKey::yes());
  const auto child = question("c", "a-3", AnswerKey::yes());
  const auto other = question("o", "b-1", AnswerKey::yes());
  std::vector<const QuestionRecord*> qs = {&parent, &child, &other};
  auto out = precedence_invalidate(qs, {Status::wrong_answer, Status::correct, Status::correct}, chain);
  CHECK(out[0] == Status::wrong_answer);
  CHECK(out[1] == Status::invalidated_by_simpler_image);
  CHECK(out[2] == Status::correct);
  out = precedence_invalidate(qs, {Status::correct, Status::correct, Status::correct}, chain);
  CHECK(out[1] == Status::correct);
  // Different expected answer on the ancestor is a different question.
  const auto changed = question("p2", "a-1", AnswerKey::no());
  std::vector<const QuestionRecord*> qs2 = {&changed, &child};
  CHECK(precedence_invalidate(qs2, {Status::wrong_answer, Status::correct}, chain)[1] == Status::correct);
  // Only correct statuses are overridden.
  CHECK(precedence_invalidate(qs, {Status::wrong_answer, Status::unexpected_answer, Status::correct}, chain)[1] ==
        Status::unexpected_answer);
}
