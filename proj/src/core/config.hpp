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

#ifndef SCRAPBOOK_CORE_CONFIG_HPP_
#define SCRAPBOOK_CORE_CONFIG_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "core/types.hpp"

namespace scrapbook {

/// Every violated GenerationConfig invariant, one human-readable line each.
/// An empty result means the config is usable.
std::vector<std::string> validate_config(const GenerationConfig& cfg);

/// Parses the JSON config document. Absent fields keep their defaults;
/// unknown fields and ill-typed values raise a usage Error.
GenerationConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const GenerationConfig& cfg);

}  // namespace scrapbook

#endif  // SCRAPBOOK_CORE_CONFIG_HPP_
