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

#ifndef SCRAPBOOK_QUESTIONS_GENERATOR_HPP_
#define SCRAPBOOK_QUESTIONS_GENERATOR_HPP_

#include <string>
#include <vector>

#include "core/types.hpp"
#include "questions/templates.hpp"

namespace scrapbook {

/// Every question about one image, four forms per paraphrase, in
/// generation order. `arrangement_objects` is the full ordered arrangement
/// the image was built from; its unplaced objects supply the absent-object
/// questions.
std::vector<QuestionRecord> generate_for_image(const SceneImage& scene,
                                               const std::vector<ObjectSpec>& arrangement_objects,
                                               const GenerationConfig& cfg,
                                               const TemplateLibrary& lib = TemplateLibrary::builtin());

/// The four forms of a base (original) record. `max_count` bounds the
/// enumerated alternatives of counting questions.
std::vector<QuestionRecord> apply_forms(const QuestionRecord& base, int max_count,
                                        const TemplateLibrary& lib = TemplateLibrary::builtin());

// "a, b, or c" list offered by the enumerated form.
std::vector<std::string> enumerated_alternatives(AnswerDomain domain, int max_count);

// Answer domain of a question; recognition depends on the asked attribute.
AnswerDomain answer_domain(QType qtype, const std::vector<std::string>& concepts, ObjectMode mode);

}  // namespace scrapbook

#endif  // SCRAPBOOK_QUESTIONS_GENERATOR_HPP_
