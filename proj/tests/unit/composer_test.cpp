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

#include <doctest.h>

#include <cstring>
#include <map>

#include "bank/shapes.hpp"
#include "composer/composer.hpp"
#include "core/rng.hpp"
#include "core/vocab.hpp"
#include "oracle/oracle.hpp"
#include "selection/selection.hpp"

using namespace scrapbook;

namespace {

constexpr int W = 1280, H = 768;

Rect box_at(int cx, int cy) { return {cx - 10, cy - 10, 20, 20}; }

ObjectSpec shape(const std::string& cls, Color c, int size) { return ObjectSpec{cls, c, size, std::nullopt}; }

Arrangement three_shapes() {
  Arrangement a;
  a.arrangement_id = "t";
  a.main = shape("square", Color::blue, 0);
  a.reference = shape("circle", Color::red, 0);
  a.remainder = {shape("triangle", Color::green, 0), shape("hexagon", Color::white, 1)};
  return a;
}

const ComposeParams kParams{W, H, 1000};

// Verifies every chain image with the test oracle using full-canvas masks.
std::vector<std::string> verify_chain(const std::vector<SceneImage>& chain, CutoutProvider& cutouts) {
  std::map<std::string, const SceneImage*> by_id;
  std::map<std::string, Mask> masks;
  for (const auto& img : chain) {
    by_id[img.image_id] = &img;
    for (const auto& p : img.placements) masks[p.mask_ref] = placement_mask(p, *cutouts.get(p.object), W, H);
  }
  std::vector<std::string> bad;
  for (const auto& img : chain) {
    for (auto& m : oracle::verify_image(img, by_id, W, H, [&](const std::string& ref) { return masks.at(ref); })) {
      bad.push_back(img.image_id + ": " + m);
    }
  }
  return bad;
}

}  // namespace

TEST_CASE("regions split the canvas at floor(k*dim/3)") {
  CHECK(region_bounds(AbsolutePosition::top_left, W, H) == Rect{0, 0, 426, 256});
  CHECK(region_bounds(AbsolutePosition::bottom_right, W, H) == Rect{853, 512, 427, 256});
  CHECK(region_at(W / 2.0, H / 2.0, W, H) == AbsolutePosition::center);
  std::int64_t area = 0;
  for (auto p : all_values<AbsolutePosition>()) {
    const Rect r = region_bounds(p, W, H);
    area += r.area();
    for (auto q : all_values<AbsolutePosition>()) {
      if (p != q) CHECK(intersect(r, region_bounds(q, W, H)).empty());
    }
  }
  CHECK(area == std::int64_t{W} * H);
  for (int y = 0; y < H; y += 37) {
    for (int x = 0; x < W; x += 41) {
      CHECK(static_cast<int>(region_at(x, y, W, H)) == oracle::cell_index(x, y, W, H));
    }
  }
}

TEST_CASE("relative position sectors") {
  CHECK(classify_relative(box_at(300, 100), box_at(100, 100)) == RelativePosition::right);
  CHECK(classify_relative(box_at(100, 40), box_at(100, 100)) == RelativePosition::above);
  CHECK(classify_relative(box_at(200, 141), box_at(100, 100)) == RelativePosition::right);
  CHECK(classify_relative(box_at(200, 143), box_at(100, 100)) == RelativePosition::lower_right);
  CHECK(classify_relative(box_at(40, 40), box_at(100, 100)) == RelativePosition::upper_left);
  CHECK_THROWS_AS(classify_relative(box_at(5, 5), box_at(5, 5)), Error);
  // Agreement with the atan2 oracle on a grid of displacements.
  static const int kToOctant[8] = {3, 2, 1, 4, 0, 5, 6, 7};
  for (int dx = -300; dx <= 300; dx += 7) {
    for (int dy = -300; dy <= 300; dy += 11) {
      if (dx == 0 && dy == 0) continue;
      const auto r = classify_relative(box_at(500 + dx, 400 + dy), box_at(500, 400));
      CHECK(kToOctant[static_cast<int>(r)] == oracle::octant(dx, dy));
    }
  }
}

TEST_CASE("main placement lands mostly inside the region") {
  Rng rng(11);
  const auto top_left = place_main(70, 70, AbsolutePosition::top_left, kParams, rng);
  REQUIRE(top_left.has_value());
  CHECK(oracle::inside_fraction(*top_left, 0, W, H) >= 0.75);
  CHECK_FALSE(place_main(1300, 100, AbsolutePosition::center, kParams, rng).has_value());

  for (int trial = 0; trial < 1000; ++trial) {
    const int size = size_for_index(static_cast<int>(rng.below(7)));
    const auto region = static_cast<AbsolutePosition>(rng.below(9));
    const auto box = place_main(size, size, region, kParams, rng);
    REQUIRE(box.has_value());
    CHECK(oracle::inside_fraction(*box, static_cast<int>(region), W, H) >= 0.75);
    CHECK((box->x >= 0 && box->y >= 0 && box->right() <= W && box->bottom() <= H));
  }
}

TEST_CASE("reference placement honors the requested relation") {
  Rng rng(3);
  CutoutProvider cutouts;
  const auto main_cut = cutouts.get(shape("square", Color::blue, 0));
  const auto ref_cut = cutouts.get(shape("circle", Color::red, 0));
  int placed = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto mb = place_main(70, 70, AbsolutePosition::top_center, kParams, rng);
    REQUIRE(mb);
    const auto rb = place_reference(*ref_cut, AbsolutePosition::center, RelativePosition::upper_right,
                                    Placed{*mb, main_cut}, kParams, rng);
    if (!rb) continue;
    ++placed;
    CHECK(oracle::octant((mb->x + 35) - (rb->x + 35), (mb->y + 35) - (rb->y + 35)) == 1);
    CHECK(oracle::inside_fraction(*rb, 4, W, H) >= 0.75);
  }
  CHECK(placed > 0);
}

TEST_CASE("geometrically impossible relation is skipped") {
  Rng rng(8);
  CutoutProvider cutouts;
  const auto out = compose_chain(three_shapes(), "solid-black", {AbsolutePosition::center_left, AbsolutePosition::center_right},
                                 RelativePosition::right, 3, kParams, cutouts, rng, "x");
  CHECK(out.images.empty());
}

TEST_CASE("chains grow by one placement and pass the oracle") {
  CutoutProvider cutouts;
  int successes = 0;
  for (std::uint64_t seed = 0; successes < 500 && seed < 5000; ++seed) {
    Rng rng(derive_seed(1234, {seed}));
    const auto regions = std::make_pair(static_cast<AbsolutePosition>(rng.below(9)), static_cast<AbsolutePosition>(rng.below(9)));
    const auto rel = static_cast<RelativePosition>(rng.below(8));
    const auto out = compose_chain(three_shapes(), "solid-black", regions, rel, 4, kParams, cutouts, rng, "c");
    if (out.images.empty()) continue;
    ++successes;
    CHECK(out.images.size() + out.dropped == 4);
    for (std::size_t i = 0; i < out.images.size(); ++i) {
      CHECK(out.images[i].placements.size() == i + 1);
      CHECK(out.images[i].image_id == "c-" + std::to_string(i + 1));
    }
    const auto bad = verify_chain(out.images, cutouts);
    CHECK_MESSAGE(bad.empty(), (bad.empty() ? "" : bad.front()));
  }
  CHECK(successes == 500);
}

TEST_CASE("single-object chains have no reference") {
  Rng rng(2);
  CutoutProvider cutouts;
  const auto out = compose_chain(three_shapes(), "solid-black", {AbsolutePosition::center, AbsolutePosition::top_left},
                                 RelativePosition::right, 1, kParams, cutouts, rng, "one");
  REQUIRE(out.images.size() == 1);
  CHECK_FALSE(out.images[0].reference_index.has_value());
  CHECK(out.images[0].placements.size() == 1);
}

TEST_CASE("distractors avoid the reference relation and drop when the canvas is full") {
  CutoutProvider cutouts;
  const auto tri = cutouts.get(shape("triangle", Color::green, 0));
  const auto sq = cutouts.get(shape("square", Color::blue, 0));
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const Placed main{{100, 100, 70, 70}, sq};
    const Placed ref{{600, 400, 70, 70}, sq};
    const auto rel = static_cast<RelativePosition>(trial % 8);
    const auto box = place_distractor(*tri, {main, ref}, rel, kParams, rng);
    REQUIRE(box);
    CHECK(try_classify_relative(*box, ref.box) != rel);
  }
  // A full-canvas prior leaves no room.
  auto wall = std::make_shared<Cutout>();
  wall->mask = Mask(W, H);
  std::fill(wall->mask.bits.begin(), wall->mask.bits.end(), 1);
  wall->rgba = Image(W, H, 4);
  const Placed blocker{{0, 0, W, H}, wall};
  CHECK_FALSE(place_distractor(*tri, {blocker, blocker}, RelativePosition::left, ComposeParams{W, H, 50}, rng));
}

TEST_CASE("rendering a child only changes pixels inside the new placement") {
  Rng rng(21);
  CutoutProvider cutouts;
  const auto out = compose_chain(three_shapes(), "solid-black", {AbsolutePosition::top_left, AbsolutePosition::bottom_right},
                                 RelativePosition::upper_left, 3, kParams, cutouts, rng, "r");
  REQUIRE(out.images.size() == 3);
  const Image bg = Image::filled(W, H, color_rgb(Color::black));
  for (std::size_t i = 1; i < out.images.size(); ++i) {
    const Image parent = render(out.images[i - 1], bg, cutouts);
    const Image child = render(out.images[i], bg, cutouts);
    const Rect added = out.images[i].placements.back().bbox;
    std::int64_t outside_diff = 0;
    for (int y = 0; y < H; ++y) {
      for (int x = 0; x < W; ++x) {
        const bool in = x >= added.x && x < added.right() && y >= added.y && y < added.bottom();
        if (!in && std::memcmp(parent.at(x, y), child.at(x, y), 3) != 0) ++outside_diff;
      }
    }
    CHECK(outside_diff == 0);
  }
  SceneImage empty;
  CHECK(render(empty, bg, cutouts) == bg);
}
