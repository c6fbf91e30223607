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

#include "composer/composer.hpp"

#include <cmath>

#include "core/vocab.hpp"

namespace scrapbook {

namespace {

// tan(22.5 degrees).
const double kTanHalfSector = std::sqrt(2.0) - 1.0;

int edge(int k, int extent) { return static_cast<int>(std::int64_t{k} * extent / 3); }

std::string spec_key(const ObjectSpec& s) {
  if (s.bank_id) return "bank:" + *s.bank_id;
  return s.object_class + ":" + (s.color ? std::string(to_string(*s.color)) : "") + ":" +
         (s.size_index ? std::to_string(*s.size_index) : "");
}

bool fits(int w, int h, const ComposeParams& p) { return w <= p.canvas_width && h <= p.canvas_height; }

// Uniform top-left corner for which the box overlaps the region at all.
std::optional<Rect> candidate_near(int w, int h, const Rect& region, const ComposeParams& p, Rng& rng) {
  const int x_lo = std::max(0, region.x - w + 1);
  const int x_hi = std::min(p.canvas_width - w, region.right() - 1);
  const int y_lo = std::max(0, region.y - h + 1);
  const int y_hi = std::min(p.canvas_height - h, region.bottom() - 1);
  if (x_lo > x_hi || y_lo > y_hi) return std::nullopt;
  const int x = static_cast<int>(rng.uniform(x_lo, x_hi));
  const int y = static_cast<int>(rng.uniform(y_lo, y_hi));
  return Rect{x, y, w, h};
}

bool disjoint_from(const Cutout& c, const Rect& box, const std::vector<Placed>& priors) {
  for (const auto& q : priors) {
    if (masks_overlap(c.mask, box, q.cutout->mask, q.box)) return false;
  }
  return true;
}

bool reference_ok(const Cutout& ref, const Rect& box, const Rect& region, RelativePosition rel, const Placed& main) {
  if (!mostly_inside(box, region)) return false;
  if (try_classify_relative(main.box, box) != rel) return false;
  return !masks_overlap(ref.mask, box, main.cutout->mask, main.box);
}

}  // namespace

Rect region_bounds(AbsolutePosition p, int width, int height) {
  const int i = static_cast<int>(p);
  const int row = i / 3;
  const int col = i % 3;
  const int x0 = edge(col, width), x1 = edge(col + 1, width);
  const int y0 = edge(row, height), y1 = edge(row + 1, height);
  return Rect{x0, y0, x1 - x0, y1 - y0};
}

AbsolutePosition region_at(double x, double y, int width, int height) {
  int col = 0, row = 0;
  while (col < 2 && x >= edge(col + 1, width)) ++col;
  while (row < 2 && y >= edge(row + 1, height)) ++row;
  return static_cast<AbsolutePosition>(row * 3 + col);
}

std::optional<RelativePosition> try_classify_relative(const Rect& main, const Rect& ref) {
  // Doubled center coordinates keep everything integral.
  const std::int64_t dx = (2 * std::int64_t{main.x} + main.w) - (2 * std::int64_t{ref.x} + ref.w);
  const std::int64_t dy = (2 * std::int64_t{main.y} + main.h) - (2 * std::int64_t{ref.y} + ref.h);
  if (dx == 0 && dy == 0) return std::nullopt;
  const double ax = std::abs(static_cast<double>(dx));
  const double ay = std::abs(static_cast<double>(dy));
  if (ay < kTanHalfSector * ax) return dx > 0 ? RelativePosition::right : RelativePosition::left;
  if (ax < kTanHalfSector * ay) return dy > 0 ? RelativePosition::below : RelativePosition::above;
  if (dy < 0) return dx > 0 ? RelativePosition::upper_right : RelativePosition::upper_left;
  return dx > 0 ? RelativePosition::lower_right : RelativePosition::lower_left;
}

RelativePosition classify_relative(const Rect& main, const Rect& ref) {
  if (auto r = try_classify_relative(main, ref)) return *r;
  throw validation_error("relative position undefined for coincident centers");
}

bool mostly_inside(const Rect& box, const Rect& region) {
  return 4 * intersect(box, region).area() >= 3 * box.area();
}

std::shared_ptr<const Cutout> CutoutProvider::get(const ObjectSpec& spec) {
  const std::string key = spec_key(spec);
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  std::shared_ptr<const Cutout> made;
  if (spec.bank_id) {
    if (bank_ == nullptr) throw usage_error("object '" + *spec.bank_id + "' needs an object bank");
    made = std::make_shared<const Cutout>(bank_->cutout(*spec.bank_id));
  } else {
    made = std::make_shared<const Cutout>(rasterize_shape(spec));
  }
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(key, made).first->second;
}

std::optional<Rect> place_main(int w, int h, AbsolutePosition region, const ComposeParams& p, Rng& rng) {
  if (!fits(w, h, p)) return std::nullopt;
  const Rect cell = region_bounds(region, p.canvas_width, p.canvas_height);
  for (int attempt = 0; attempt < p.max_attempts; ++attempt) {
    auto box = candidate_near(w, h, cell, p, rng);
    if (!box) return std::nullopt;
    if (mostly_inside(*box, cell)) return box;
  }
  return std::nullopt;
}

std::optional<Rect> place_reference(const Cutout& ref, AbsolutePosition region, RelativePosition rel,
                                    const Placed& main, const ComposeParams& p, Rng& rng) {
  if (!fits(ref.mask.width, ref.mask.height, p)) return std::nullopt;
  const Rect cell = region_bounds(region, p.canvas_width, p.canvas_height);
  for (int attempt = 0; attempt < p.max_attempts; ++attempt) {
    auto box = candidate_near(ref.mask.width, ref.mask.height, cell, p, rng);
    if (!box) return std::nullopt;
    if (reference_ok(ref, *box, cell, rel, main)) return box;
  }
  return std::nullopt;
}

std::optional<Rect> place_distractor(const Cutout& c, const std::vector<Placed>& priors, RelativePosition rel,
                                     const ComposeParams& p, Rng& rng) {
  const int w = c.mask.width, h = c.mask.height;
  if (!fits(w, h, p) || priors.size() < 2) return std::nullopt;
  for (int attempt = 0; attempt < p.max_attempts; ++attempt) {
    const Rect box{static_cast<int>(rng.uniform(0, p.canvas_width - w)),
                   static_cast<int>(rng.uniform(0, p.canvas_height - h)), w, h};
    const auto dir = try_classify_relative(box, priors[1].box);
    if (!dir || *dir == rel) continue;
    if (disjoint_from(c, box, priors)) return box;
  }
  return std::nullopt;
}

ChainOutcome compose_chain(const Arrangement& arrangement, const std::string& background_id,
                           std::pair<AbsolutePosition, AbsolutePosition> regions, RelativePosition rel, int x,
                           const ComposeParams& p, CutoutProvider& cutouts, Rng& rng, const std::string& id_prefix) {
  ChainOutcome out;
  const auto main_cut = cutouts.get(arrangement.main);
  const auto ref_cut = cutouts.get(arrangement.reference);
  const Rect main_cell = region_bounds(regions.first, p.canvas_width, p.canvas_height);
  const Rect ref_cell = region_bounds(regions.second, p.canvas_width, p.canvas_height);

  std::optional<Rect> main_box, ref_box;
  if (fits(main_cut->mask.width, main_cut->mask.height, p)) {
    for (int attempt = 0; attempt < p.max_attempts && !ref_box; ++attempt) {
      main_box = candidate_near(main_cut->mask.width, main_cut->mask.height, main_cell, p, rng);
      if (!main_box) break;
      if (!mostly_inside(*main_box, main_cell)) continue;
      if (x < 2) break;
      const Placed main{*main_box, main_cut};
      auto box = candidate_near(ref_cut->mask.width, ref_cut->mask.height, ref_cell, p, rng);
      if (!box) break;
      if (reference_ok(*ref_cut, *box, ref_cell, rel, main)) ref_box = box;
    }
  }
  if (!main_box || !mostly_inside(*main_box, main_cell) || (x >= 2 && !ref_box)) return out;

  std::vector<Placed> placed{{*main_box, main_cut}};
  SceneImage img;
  img.background_id = background_id;
  img.arrangement_id = arrangement.arrangement_id;
  img.abs_pos_pair = regions;
  img.rel_pos = rel;
  img.main_index = 0;

  auto emit = [&](const ObjectSpec& spec, const Rect& box) {
    const std::string id = id_prefix + "-" + std::to_string(out.images.size() + 1);
    if (!out.images.empty()) img.parent_id = out.images.back().image_id;
    img.image_id = id;
    img.placements.push_back(
        Placement{spec, box, "masks/" + id + "_" + std::to_string(img.placements.size()) + ".png"});
    out.images.push_back(img);
  };

  emit(arrangement.main, *main_box);
  if (x < 2) return out;
  placed.push_back({*ref_box, ref_cut});
  img.reference_index = 1;
  emit(arrangement.reference, *ref_box);

  const std::size_t extra = std::min<std::size_t>(static_cast<std::size_t>(x - 2), arrangement.remainder.size());
  for (std::size_t i = 0; i < extra; ++i) {
    const ObjectSpec& spec = arrangement.remainder[i];
    const auto cut = cutouts.get(spec);
    const auto box = place_distractor(*cut, placed, rel, p, rng);
    if (!box) {
      ++out.dropped;
      continue;
    }
    placed.push_back({*box, cut});
    emit(spec, *box);
  }
  return out;
}

Image render(const SceneImage& scene, const Image& background, CutoutProvider& cutouts) {
  Image canvas = background;
  for (const auto& pl : scene.placements) {
    const auto cut = cutouts.get(pl.object);
    if (cut->rgba.width != pl.bbox.w || cut->rgba.height != pl.bbox.h) {
      throw validation_error("placement box of " + scene.image_id + " does not match its cutout");
    }
    composite_over(canvas, cut->rgba, pl.bbox.x, pl.bbox.y);
  }
  return canvas;
}

Mask placement_mask(const Placement& placement, const Cutout& cutout, int width, int height) {
  Mask m(width, height);
  const Rect& b = placement.bbox;
  for (int y = 0; y < b.h; ++y) {
    for (int x = 0; x < b.w; ++x) {
      const int cx = b.x + x, cy = b.y + y;
      if (cutout.mask.get(x, y) && cx >= 0 && cy >= 0 && cx < width && cy < height) m.set(cx, cy);
    }
  }
  return m;
}

}  // namespace scrapbook
