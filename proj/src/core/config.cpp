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

#include "core/config.hpp"

#include <algorithm>
#include <set>

#include "core/vocab.hpp"

namespace scrapbook {

namespace {

void require_positive(std::vector<std::string>& out, const char* name, long long v) {
  if (v < 1) out.push_back(std::string(name) + " >= 1 (" + name + "=" + std::to_string(v) + ")");
}

int domain_size(const GenerationConfig& cfg, const char* attribute) {
  const std::string a = attribute;
  if (a == "class") return cfg.object_mode == ObjectMode::shapes ? kShapeCount : kCocoClassCount;
  if (a == "color") return kColorCount;
  return cfg.size_levels;
}

}  // namespace

std::vector<std::string> validate_config(const GenerationConfig& cfg) {
  std::vector<std::string> out;
  require_positive(out, "S", cfg.sets);
  require_positive(out, "N", cfg.objects_per_set);
  require_positive(out, "B", cfg.backgrounds);
  require_positive(out, "A", cfg.arrangements);
  require_positive(out, "x", cfg.objects_per_image);
  require_positive(out, "P", cfg.region_pairs);
  require_positive(out, "n_questions_per_type", cfg.questions_per_type);
  require_positive(out, "size_levels", cfg.size_levels);
  require_positive(out, "max_attempts", cfg.max_attempts);
  require_positive(out, "canvas.width", cfg.canvas_width);
  require_positive(out, "canvas.height", cfg.canvas_height);

  if (cfg.objects_per_image > cfg.objects_per_set) {
    out.push_back("x <= N (x=" + std::to_string(cfg.objects_per_image) +
                  ", N=" + std::to_string(cfg.objects_per_set) + ")");
  }
  if (cfg.region_pairs > kAbsolutePositionCount * kAbsolutePositionCount) {
    out.push_back("P <= 81 (P=" + std::to_string(cfg.region_pairs) + ")");
  }
  const long long pairs = static_cast<long long>(cfg.objects_per_set) * (cfg.objects_per_set - 1);
  if (cfg.arrangements > pairs) {
    out.push_back("A <= N*(N-1)=" + std::to_string(pairs) + " (A=" + std::to_string(cfg.arrangements) + ")");
  }

  const std::pair<const char*, CharMode> modes[] = {{"class", cfg.class_char_mode},
                                                    {"color", cfg.color_char_mode},
                                                    {"size", cfg.size_char_mode}};
  for (const auto& [attribute, mode] : modes) {
    if (cfg.object_mode == ObjectMode::coco && std::string(attribute) != "class") continue;
    if (mode == CharMode::unique && cfg.objects_per_set > domain_size(cfg, attribute)) {
      out.push_back(std::string("unique ") + attribute + " mode needs N <= " +
                    std::to_string(domain_size(cfg, attribute)) + " (N=" +
                    std::to_string(cfg.objects_per_set) + ")");
    }
  }

  if (cfg.object_mode == ObjectMode::shapes) {
    if (cfg.background_mode == BackgroundMode::solid && cfg.color_char_mode == CharMode::unique &&
        cfg.objects_per_set >= kColorCount) {
      out.push_back("solid backgrounds need a color unused by the set (N < 7 with unique colors)");
    }
    const int largest = 70 + 40 * std::max(cfg.size_levels - 1, 0);
    if (cfg.size_levels >= 1 && std::min(cfg.canvas_width, cfg.canvas_height) < largest) {
      out.push_back("canvas must fit the largest object (" + std::to_string(largest) + " px)");
    }
  } else if (cfg.bank_dir.empty()) {
    out.push_back("coco mode requires bank_dir");
  }
  if (cfg.background_mode == BackgroundMode::photo && cfg.background_dir.empty()) {
    out.push_back("photo backgrounds require background_dir");
  }
  return out;
}

namespace {

template <class T>
void read_field(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw usage_error(std::string("config field '") + key + "': " + e.what());
  }
}

template <class E>
void read_enum(const nlohmann::json& j, const char* key, E& out) {
  std::string name;
  read_field(j, key, name);
  if (!name.empty()) out = parse<E>(name);
}

}  // namespace

GenerationConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw usage_error("config must be a JSON object");
  static const std::set<std::string> known = {
      "object_mode", "selection_mode", "class_char_mode", "color_char_mode", "size_char_mode",
      "S", "N", "B", "A", "x", "P", "n_questions_per_type", "seed", "canvas", "size_levels",
      "background_mode", "background_dir", "bank_dir", "max_attempts"};
  for (const auto& item : j.items()) {
    if (!known.contains(item.key())) throw usage_error("unknown config field '" + item.key() + "'");
  }
  GenerationConfig cfg;
  read_enum(j, "object_mode", cfg.object_mode);
  read_enum(j, "selection_mode", cfg.selection_mode);
  read_enum(j, "class_char_mode", cfg.class_char_mode);
  read_enum(j, "color_char_mode", cfg.color_char_mode);
  read_enum(j, "size_char_mode", cfg.size_char_mode);
  read_field(j, "S", cfg.sets);
  read_field(j, "N", cfg.objects_per_set);
  read_field(j, "B", cfg.backgrounds);
  read_field(j, "A", cfg.arrangements);
  read_field(j, "x", cfg.objects_per_image);
  read_field(j, "P", cfg.region_pairs);
  read_field(j, "n_questions_per_type", cfg.questions_per_type);
  read_field(j, "seed", cfg.seed);
  if (j.contains("canvas")) {
    const auto& c = j.at("canvas");
    read_field(c, "width", cfg.canvas_width);
    read_field(c, "height", cfg.canvas_height);
  }
  read_field(j, "size_levels", cfg.size_levels);
  read_enum(j, "background_mode", cfg.background_mode);
  read_field(j, "background_dir", cfg.background_dir);
  read_field(j, "bank_dir", cfg.bank_dir);
  read_field(j, "max_attempts", cfg.max_attempts);
  return cfg;
}

nlohmann::json config_to_json(const GenerationConfig& cfg) {
  return {
      {"object_mode", to_string(cfg.object_mode)},
      {"selection_mode", to_string(cfg.selection_mode)},
      {"class_char_mode", to_string(cfg.class_char_mode)},
      {"color_char_mode", to_string(cfg.color_char_mode)},
      {"size_char_mode", to_string(cfg.size_char_mode)},
      {"S", cfg.sets},
      {"N", cfg.objects_per_set},
      {"B", cfg.backgrounds},
      {"A", cfg.arrangements},
      {"x", cfg.objects_per_image},
      {"P", cfg.region_pairs},
      {"n_questions_per_type", cfg.questions_per_type},
      {"seed", cfg.seed},
      {"canvas", {{"width", cfg.canvas_width}, {"height", cfg.canvas_height}}},
      {"size_levels", cfg.size_levels},
      {"background_mode", to_string(cfg.background_mode)},
      {"background_dir", cfg.background_dir},
      {"bank_dir", cfg.bank_dir},
      {"max_attempts", cfg.max_attempts},
  };
}

}  // namespace scrapbook
