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

#ifndef SCRAPBOOK_CORE_MANIFEST_HPP_
#define SCRAPBOOK_CORE_MANIFEST_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/types.hpp"

namespace scrapbook {

struct ObjectSet {
  std::string set_id;
  std::vector<ObjectSpec> specs;

  friend bool operator==(const ObjectSet&, const ObjectSet&) = default;
};

// (main, reference, remainder...) in placement order.
struct ArrangementRecord {
  std::string arrangement_id;
  std::string set_id;
  std::vector<ObjectSpec> objects;

  friend bool operator==(const ArrangementRecord&, const ArrangementRecord&) = default;
};

struct Manifest {
  std::string format_version = "1";
  GenerationConfig config;
  std::vector<ObjectSet> sets;
  std::vector<ArrangementRecord> arrangements;
  std::vector<SceneImage> images;
  std::map<std::string, std::int64_t> question_files;  // file name -> record count

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

struct Dataset {
  Manifest manifest;
  std::vector<QuestionRecord> questions;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

nlohmann::json to_json(const ObjectSpec& s);
ObjectSpec object_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Rect& r);
Rect rect_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SceneImage& img);
SceneImage scene_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AnswerKey& k);
AnswerKey answer_key_from_json(const nlohmann::json& j);
nlohmann::json to_json(const QuestionRecord& q);
QuestionRecord question_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ResponseRecord& r);
ResponseRecord response_from_json(const nlohmann::json& j);

nlohmann::json manifest_to_json(const Manifest& m);
Manifest manifest_from_json(const nlohmann::json& j);

/// Deterministic byte serialization of the manifest: keys sorted, images
/// sorted by id, question file counts recomputed from `questions`. Equal
/// datasets yield identical bytes.
std::string canonical_manifest(const Dataset& d);

/// `<type>_<group>_<subgroup>.jsonl`
std::string question_file_name(QType t, Group g, int subgroup);

/// Canonical question order: by question id, then form.
void sort_questions(std::vector<QuestionRecord>& qs);

// Dataset directory layout.
void write_question_files(const std::filesystem::path& dataset_dir,
                          const std::vector<QuestionRecord>& sorted_questions);
Dataset load_dataset(const std::filesystem::path& dataset_dir);

std::vector<ResponseRecord> load_responses(const std::filesystem::path& path);
void write_responses(const std::filesystem::path& path, const std::vector<ResponseRecord>& rs);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace scrapbook

#endif  // SCRAPBOOK_CORE_MANIFEST_HPP_
