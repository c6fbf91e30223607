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

#ifndef SCRAPBOOK_BANK_BACKGROUND_HPP_
#define SCRAPBOOK_BANK_BACKGROUND_HPP_

#include <filesystem>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "bank/raster.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"

namespace scrapbook {

inline constexpr int kMinPhotoSide = 500;

// Photos in `dir` (png/jpg/jpeg, sorted by name) at least 500 px on both
// sides. Throws when none qualifies.
std::vector<std::string> eligible_photos(const std::filesystem::path& dir);

/// Background id for background `b` of set `set_index`: "solid-<color>"
/// with a color outside `set_colors`, or "photo-<file name>".
std::string pick_background(const GenerationConfig& cfg, const std::set<Color>& set_colors, int set_index, int b,
                            const std::vector<std::string>& photos, Rng& rng);

// Materializes background ids at canvas size. Photos are resampled
// (bilinear) to the canvas. Thread-safe; photos are cached.
class BackgroundCache {
 public:
  BackgroundCache(std::filesystem::path dir, int width, int height)
      : dir_(std::move(dir)), width_(width), height_(height) {}

  Image get(const std::string& background_id);

 private:
  std::filesystem::path dir_;
  int width_;
  int height_;
  std::mutex mu_;
  std::map<std::string, Image> cache_;
};

Image resize_bilinear(const Image& src, int width, int height);

}  // namespace scrapbook

#endif  // SCRAPBOOK_BANK_BACKGROUND_HPP_
