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

#ifndef SCRAPBOOK_EVALUATOR_EVALUATOR_HPP_
#define SCRAPBOOK_EVALUATOR_EVALUATOR_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/types.hpp"

namespace scrapbook {

/// Lowercase, punctuation to spaces, whitespace collapsed, number words
/// zero..twenty mapped to digits.
std::vector<std::string> normalize(std::string_view text);

/// Form-dependent match: original/direction need the expected answer as a
/// whole-token run inside the response, condition/enumerated need the
/// response to be exactly the expected answer. <unk> keys accept
/// "not applicable" or "unk".
bool match_answer(Form form, const AnswerKey& expected, std::string_view raw_text);

/// Distinct plausible answers of the domain found in a response, by
/// longest phrase match; "unk" is reported as "not applicable".
std::vector<std::string> plausible_answers(AnswerDomain domain, std::string_view raw_text);

/// Error kind of a response that did not match: one plausible answer other
/// than the expected one is wrong_answer, several are multiple_answers, none
/// (or only the expected one in the wrong format) is unexpected_answer.
Status classify_single(const AnswerKey& expected, std::string_view raw_text, AnswerDomain domain);

struct Judgement {
  Status status = Status::correct;
  std::vector<std::string> answers;  // plausible answers found, sorted
};

/// Verdict of one form. A response naming several plausible answers is
/// multiple_answers even when it also contains the expected one.
Judgement judge(Form form, const AnswerKey& expected, AnswerDomain domain, std::string_view raw_text);

/// Aggregate over the four forms (original, condition, direction,
/// enumerated): unanimous correct is correct; a shared error with the same
/// answers keeps that error; forms with only plausible answers that differ
/// are answer_disagreement; two or more different error kinds are
/// error_disagreement; unexpected answers mixed only with corrects stay
/// unexpected_answer.
Status aggregate_forms(const std::array<Judgement, 4>& forms);

/// correct/size and whether it reaches the threshold (inclusive). Throws a
/// usage Error on an empty set.
struct Consistency {
  double ratio = 0;
  bool pass = false;
};
Consistency consistency(const std::vector<bool>& paraphrase_correct, double threshold = 0.8);

// Identity of "the same question" across a precedence chain.
std::string precedence_key(const QuestionRecord& q);

struct ChainLink {
  std::string image_id;
  std::optional<std::string> parent_id;
};

/// Per-question statuses after precedence invalidation: a correct status
/// becomes invalidated_by_simpler_image when a question with the same
/// precedence key (and the same expected answer) on an ancestor image has a
/// non-correct status. `questions[i]` carries `statuses[i]`.
std::vector<Status> precedence_invalidate(const std::vector<const QuestionRecord*>& questions,
                                          const std::vector<Status>& statuses,
                                          const std::vector<ChainLink>& images);

}  // namespace scrapbook

#endif  // SCRAPBOOK_EVALUATOR_EVALUATOR_HPP_
