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

#ifndef SCRAPBOOK_COMPOSER_COMPOSER_HPP_
#define SCRAPBOOK_COMPOSER_COMPOSER_HPP_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "bank/coco.hpp"
#include "bank/shapes.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"
#include "selection/selection.hpp"

namespace scrapbook {

/// Cell of the 3x3 partition. Column edges are floor(k*W/3), row edges
/// floor(k*H/3), so the cells tile the canvas exactly.
Rect region_bounds(AbsolutePosition p, int width, int height);

// Cell containing the point (x, y); points on an inner edge belong to the
// right/lower cell.
AbsolutePosition region_at(double x, double y, int width, int height);

/// Direction of main's bbox center seen from ref's bbox center, in 45
/// degree sectors centered on the axes and diagonals (y grows downwards).
/// Empty when the centers coincide.
std::optional<RelativePosition> try_classify_relative(const Rect& main, const Rect& ref);

// As above but throws a validation Error on coincident centers.
RelativePosition classify_relative(const Rect& main, const Rect& ref);

// At least three quarters of the box area lies inside the region.
bool mostly_inside(const Rect& box, const Rect& region);

// Cutouts for object specs: rasterized shapes or bank cutouts, cached.
// Thread-safe.
class CutoutProvider {
 public:
  explicit CutoutProvider(const ObjectBank* bank = nullptr) : bank_(bank) {}
  std::shared_ptr<const Cutout> get(const ObjectSpec& spec);

 private:
  const ObjectBank* bank_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const Cutout>> cache_;
};

struct ComposeParams {
  int canvas_width = 1280;
  int canvas_height = 768;
  int max_attempts = 1000;
};

/// Uniform position for a w x h box whose bbox is at least 75% inside the
/// region. Empty after max_attempts rejections or when the box cannot fit.
std::optional<Rect> place_main(int w, int h, AbsolutePosition region, const ComposeParams& p, Rng& rng);

struct Placed {
  Rect box;
  std::shared_ptr<const Cutout> cutout;
};

/// Reference position: 75% in its region, mask-disjoint from main, and
/// main classified at `rel` from it.
std::optional<Rect> place_reference(const Cutout& ref, AbsolutePosition region, RelativePosition rel,
                                    const Placed& main, const ComposeParams& p, Rng& rng);

/// Anywhere on the canvas, mask-disjoint from every prior, and not at
/// `rel` from the reference (prior[1]).
std::optional<Rect> place_distractor(const Cutout& c, const std::vector<Placed>& priors, RelativePosition rel,
                                     const ComposeParams& p, Rng& rng);

struct ChainOutcome {
  std::vector<SceneImage> images;  // empty when the pair could not be placed
  int dropped = 0;                 // distractors without a valid position
};

/// Builds the precedence chain: main alone, then + reference, then one
/// distractor per image for the first x-2 remaining objects. Main and
/// reference are re-sampled jointly up to max_attempts times.
ChainOutcome compose_chain(const Arrangement& arrangement, const std::string& background_id,
                           std::pair<AbsolutePosition, AbsolutePosition> regions, RelativePosition rel, int x,
                           const ComposeParams& p, CutoutProvider& cutouts, Rng& rng, const std::string& id_prefix);

/// Composites the placements over the background in order.
Image render(const SceneImage& scene, const Image& background, CutoutProvider& cutouts);

// Full-canvas mask of one placement.
Mask placement_mask(const Placement& placement, const Cutout& cutout, int width, int height);

}  // namespace scrapbook

#endif  // SCRAPBOOK_COMPOSER_COMPOSER_HPP_
