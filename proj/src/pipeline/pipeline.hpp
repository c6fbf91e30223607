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

#ifndef SCRAPBOOK_PIPELINE_PIPELINE_HPP_
#define SCRAPBOOK_PIPELINE_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/manifest.hpp"
#include "core/types.hpp"

namespace scrapbook {

struct RunLog {
  std::uint64_t seed = 0;
  std::int64_t attempted_units = 0;
  std::int64_t generated_units = 0;
  std::int64_t skipped_units = 0;
  std::int64_t dropped_distractors = 0;
  std::int64_t images = 0;
  std::int64_t questions = 0;
  std::vector<std::string> skipped;  // unit ids
  double compose_ms = 0;
  double questions_ms = 0;
  double write_ms = 0;

  nlohmann::json to_json() const;
};

struct GenerateOptions {
  int jobs = 1;
};

/// Selection, composition and question generation in memory; no rasters
/// are produced.
Dataset build_dataset(const GenerationConfig& cfg, const GenerateOptions& opts, RunLog* log = nullptr);

/// Full generation into `out_dir`: images/, masks/, questions/,
/// manifest.json, enablement.json and runlog.json. Existing images/,
/// masks/ and questions/ subdirectories are replaced.
RunLog generate_dataset(const GenerationConfig& cfg, const std::filesystem::path& out_dir,
                        const GenerateOptions& opts);

}  // namespace scrapbook

#endif  // SCRAPBOOK_PIPELINE_PIPELINE_HPP_
