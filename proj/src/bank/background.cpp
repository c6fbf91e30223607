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

#include "bank/background.hpp"

#include <algorithm>
#include <cmath>

#include "core/vocab.hpp"

namespace scrapbook {

namespace fs = std::filesystem;

std::vector<std::string> eligible_photos(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw io_error("background directory " + dir.string() + " does not exist");
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::string ext = e.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext != ".png" && ext != ".jpg" && ext != ".jpeg") continue;
    const auto [w, h] = read_image_size(e.path());
    if (w >= kMinPhotoSide && h >= kMinPhotoSide) names.push_back(e.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  if (names.empty()) throw usage_error("no background photo of at least 500x500 in " + dir.string());
  return names;
}

std::string pick_background(const GenerationConfig& cfg, const std::set<Color>& set_colors, int set_index, int b,
                            const std::vector<std::string>& photos, Rng& rng) {
  const bool sliding = cfg.selection_mode == SelectionMode::deterministic;
  if (cfg.background_mode == BackgroundMode::photo) {
    if (photos.empty()) throw usage_error("photo backgrounds need an eligible photo");
    const std::size_t i = sliding ? static_cast<std::size_t>(set_index + b) % photos.size() : rng.below(photos.size());
    return "photo-" + photos[i];
  }
  std::vector<Color> free;
  for (Color c : all_values<Color>()) {
    if (!set_colors.count(c)) free.push_back(c);
  }
  if (free.empty()) throw usage_error("every color is used by the set; no solid background is possible");
  const std::size_t i = sliding ? static_cast<std::size_t>(b) % free.size() : rng.below(free.size());
  return "solid-" + std::string(to_string(free[i]));
}

Image resize_bilinear(const Image& src, int width, int height) {
  Image out(width, height, 3);
  const double sx = static_cast<double>(src.width) / width;
  const double sy = static_cast<double>(src.height) / height;
  for (int y = 0; y < height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, src.height - 1.0);
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, src.height - 1);
    const double ty = fy - y0;
    for (int x = 0; x < width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, src.width - 1.0);
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, src.width - 1);
      const double tx = fx - x0;
      for (int c = 0; c < 3; ++c) {
        const double top = src.at(x0, y0)[c] * (1 - tx) + src.at(x1, y0)[c] * tx;
        const double bottom = src.at(x0, y1)[c] * (1 - tx) + src.at(x1, y1)[c] * tx;
        out.at(x, y)[c] = static_cast<std::uint8_t>(std::lround(top * (1 - ty) + bottom * ty));
      }
    }
  }
  return out;
}

Image BackgroundCache::get(const std::string& background_id) {
  if (background_id.starts_with("solid-")) {
    return Image::filled(width_, height_, color_rgb(parse<Color>(background_id.substr(6))));
  }
  if (!background_id.starts_with("photo-")) throw io_error("unknown background id '" + background_id + "'");
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(background_id);
  if (it == cache_.end()) {
    const Image photo = read_image(dir_ / background_id.substr(6));
    Image rgb(photo.width, photo.height, 3);
    for (int y = 0; y < photo.height; ++y) {
      for (int x = 0; x < photo.width; ++x) std::copy_n(photo.at(x, y), 3, rgb.at(x, y));
    }
    it = cache_.emplace(background_id, resize_bilinear(rgb, width_, height_)).first;
  }
  return it->second;
}

}  // namespace scrapbook
