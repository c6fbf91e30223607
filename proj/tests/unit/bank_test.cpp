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

#include <cmath>
#include <filesystem>
#include <set>

#include "bank/background.hpp"
#include "bank/coco.hpp"
#include "bank/raster.hpp"
#include "bank/shapes.hpp"
#include "core/manifest.hpp"
#include "core/rng.hpp"
#include "core/vocab.hpp"

using namespace scrapbook;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("scrapbook_bank_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ObjectSpec shape(const std::string& cls, Color c, int size) { return ObjectSpec{cls, c, size, std::nullopt}; }

// Column-major run lengths to the compressed COCO string form.
std::string encode_counts(const std::vector<std::uint32_t>& counts) {
  std::string s;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    long long x = counts[i];
    if (i > 2) x -= static_cast<long long>(counts[i - 2]);
    bool more = true;
    while (more) {
      long long c = x & 0x1f;
      x >>= 5;
      more = (c & 0x10) ? x != -1 : x != 0;
      if (more) c |= 0x20;
      s.push_back(static_cast<char>(c + 48));
    }
  }
  return s;
}

std::vector<std::uint32_t> column_runs(const Mask& m) {
  std::vector<std::uint32_t> runs;
  bool cur = false;
  std::uint32_t n = 0;
  for (int x = 0; x < m.width; ++x) {
    for (int y = 0; y < m.height; ++y) {
      if (m.get(x, y) != cur) {
        runs.push_back(n);
        n = 0;
        cur = !cur;
      }
      ++n;
    }
  }
  runs.push_back(n);
  return runs;
}

json rect_poly(double x, double y, double w, double h) { return json::array({json::array({x, y, x + w, y, x + w, y + h, x, y + h})}); }

}  // namespace

TEST_CASE("shape rasters follow the size ladder") {
  const Cutout c = rasterize_shape(shape("circle", Color::black, 0));
  CHECK(c.mask.width == 70);
  CHECK(c.mask.height == 70);
  const double disk = M_PI * 35.0 * 35.0;
  CHECK(std::abs(static_cast<double>(c.mask.count()) - disk) / disk < 0.02);
  const Cutout t = rasterize_shape(shape("triangle", Color::red, 1));
  CHECK(t.rgba.width == 110);
  CHECK(t.rgba.height == 110);
  CHECK(rasterize_shape(shape("square", Color::blue, 4)).mask.width == 230);
}

TEST_CASE("shape cutouts are opaque exactly under the mask and carry their color") {
  for (auto s : all_values<Shape>()) {
    const Cutout c = rasterize_shape(shape(std::string(to_string(s)), Color::orange, 2));
    CHECK(c.mask.count() > 0);
    const Rgb rgb = color_rgb(Color::orange);
    bool ok = true;
    for (int y = 0; y < c.mask.height; ++y) {
      for (int x = 0; x < c.mask.width; ++x) {
        const auto* px = c.rgba.at(x, y);
        if (c.mask.get(x, y)) {
          ok = ok && px[3] == 255 && px[0] == rgb.r && px[1] == rgb.g && px[2] == rgb.b;
        } else {
          ok = ok && px[3] == 0;
        }
      }
    }
    CHECK_MESSAGE(ok, to_string(s));
  }
  // Polygon areas grow toward the inscribed disk.
  const auto area = [](const char* cls) { return rasterize_shape(shape(cls, Color::red, 3)).mask.count(); };
  CHECK(area("triangle") < area("pentagon"));
  CHECK(area("pentagon") < area("heptagon"));
  CHECK(area("heptagon") < area("circle"));
}

TEST_CASE("png round trips") {
  const fs::path dir = scratch("png");
  Image img(5, 4, 3);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = static_cast<std::uint8_t>(i * 7);
  write_png(dir / "a.png", img);
  CHECK(read_image(dir / "a.png") == img);
  CHECK(read_image_size(dir / "a.png") == std::pair<int, int>{5, 4});
  Mask m(9, 3);
  m.set(0, 0);
  m.set(8, 2);
  m.set(4, 1);
  write_mask_png(dir / "m.png", m);
  CHECK(read_mask_png(dir / "m.png") == m);
  CHECK_THROWS_AS(read_image(dir / "missing.png"), Error);
}

TEST_CASE("mask overlap honors placement offsets") {
  Mask a(10, 10), b(10, 10);
  a.set(9, 9);
  b.set(0, 0);
  CHECK(masks_overlap(a, {0, 0, 10, 10}, b, {9, 9, 10, 10}));
  CHECK_FALSE(masks_overlap(a, {0, 0, 10, 10}, b, {10, 9, 10, 10}));
}

TEST_CASE("composite keeps the background outside the cutout") {
  Image canvas = Image::filled(20, 20, {1, 2, 3});
  const Cutout c = rasterize_shape(shape("circle", Color::white, 0));
  Image big = Image::filled(100, 100, {1, 2, 3});
  composite_over(big, c.rgba, 10, 10);
  CHECK(big.at(0, 0)[0] == 1);
  CHECK(big.at(45, 45)[0] == 255);
  (void)canvas;
}

TEST_CASE("compressed RLE strings decode like the reference encoder") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int w = 1 + static_cast<int>(rng.below(40)), h = 1 + static_cast<int>(rng.below(40));
    Mask m(w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) m.set(x, y, rng.below(3) == 0);
    }
    const auto runs = column_runs(m);
    CHECK(rle_counts_from_string(encode_counts(runs)) == runs);
    CHECK(decode_rle(runs, w, h) == m);
  }
}

TEST_CASE("polygon decoding fills the interior") {
  const Mask m = decode_polygons({{10, 10, 30, 10, 30, 20, 10, 20}}, 50, 40);
  CHECK(m.get(15, 15));
  CHECK_FALSE(m.get(5, 5));
  CHECK(std::abs(static_cast<double>(m.count()) - 200.0) <= 40.0);
}

TEST_CASE("COCO bank extraction filters instances") {
  const fs::path dir = scratch("coco");
  fs::create_directories(dir / "images");
  write_png(dir / "images" / "1.png", Image::filled(300, 200, {10, 20, 30}));
  write_png(dir / "images" / "2.png", Image::filled(200, 200, {40, 50, 60}));
  const json doc = {
      {"images", {{{"id", 1}, {"file_name", "1.png"}, {"width", 300}, {"height", 200}},
                  {{"id", 2}, {"file_name", "2.png"}, {"width", 200}, {"height", 200}}}},
      {"categories", {{{"id", 2}, {"name", "bicycle"}}, {{"id", 78}, {"name", "oven"}}, {{"id", 1}, {"name", "person"}}}},
      {"annotations",
       {
           {{"id", 11}, {"image_id", 1}, {"category_id", 2}, {"iscrowd", 0}, {"segmentation", rect_poly(20, 20, 60, 60)}},
           // 40 wide: below the size floor.
           {{"id", 12}, {"image_id", 1}, {"category_id", 2}, {"iscrowd", 0}, {"segmentation", rect_poly(100, 0.5, 40, 199)}},
           // Touches the right border.
           {{"id", 13}, {"image_id", 1}, {"category_id", 78}, {"iscrowd", 0}, {"segmentation", rect_poly(220, 50, 80, 80)}},
           {{"id", 14}, {"image_id", 2}, {"category_id", 78}, {"iscrowd", 0}, {"segmentation", rect_poly(50, 50, 100, 90)}},
           {{"id", 15}, {"image_id", 2}, {"category_id", 78}, {"iscrowd", 1}, {"segmentation", rect_poly(60, 60, 90, 90)}},
           // Not a supported class.
           {{"id", 16}, {"image_id", 2}, {"category_id", 1}, {"iscrowd", 0}, {"segmentation", rect_poly(10, 10, 80, 80)}},
       }}};
  write_text_file(dir / "instances.json", doc.dump());

  CocoBuildOptions opts;
  opts.annotations = dir / "instances.json";
  opts.images_dir = dir / "images";
  const auto entries = build_coco_bank(opts);
  std::set<std::string> ids;
  for (const auto& e : entries) {
    ids.insert(e.bank_id);
    CHECK(e.original_bbox.w >= kMinCutoutSide);
    CHECK(e.original_bbox.h >= kMinCutoutSide);
    CHECK(e.cutout.mask.count() > 0);
  }
  CHECK(ids == std::set<std::string>{"1-11", "2-14"});

  opts.classes = {"oven"};
  const auto ovens = build_coco_bank(opts);
  REQUIRE(ovens.size() == 1);
  CHECK(ovens[0].object_class == "oven");
  opts.classes = {"toilet"};
  CHECK_THROWS_AS(build_coco_bank(opts), Error);

  write_bank(dir / "bank", entries);
  const ObjectBank bank = ObjectBank::load(dir / "bank");
  CHECK(bank.entries().size() == 2);
  const Cutout c = bank.cutout("1-11");
  CHECK(c.mask == entries[0].cutout.mask);
  CHECK(bank.class_domain().classes == std::vector<std::string>{"bicycle", "oven"});
  CHECK_THROWS(bank.cutout("9-99"));
}

TEST_CASE("solid backgrounds avoid the set colors") {
  GenerationConfig cfg;
  Rng rng(1);
  const std::set<Color> used = {Color::black, Color::blue, Color::green};
  for (int b = 0; b < 8; ++b) {
    const std::string id = pick_background(cfg, used, 0, b, {}, rng);
    const auto color = parse<Color>(id.substr(6));
    CHECK(id.rfind("solid-", 0) == 0);
    CHECK_FALSE(used.count(color));
  }
  cfg.selection_mode = SelectionMode::random;
  for (int b = 0; b < 20; ++b) CHECK_FALSE(used.count(parse<Color>(pick_background(cfg, used, 0, b, {}, rng).substr(6))));
}

TEST_CASE("solid background raster has one color") {
  BackgroundCache cache("", 64, 32);
  const Image img = cache.get("solid-orange");
  std::set<std::tuple<int, int, int>> colors;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) colors.insert({img.at(x, y)[0], img.at(x, y)[1], img.at(x, y)[2]});
  }
  CHECK(colors.size() == 1);
  const Rgb o = color_rgb(Color::orange);
  CHECK(*colors.begin() == std::tuple<int, int, int>{o.r, o.g, o.b});
}

TEST_CASE("photo directory needs 500 px on both sides") {
  const fs::path dir = scratch("photos");
  write_png(dir / "small.png", Image::filled(400, 600, {1, 1, 1}));
  CHECK_THROWS_AS(eligible_photos(dir), Error);
  write_png(dir / "big.png", Image::filled(640, 520, {9, 9, 9}));
  CHECK(eligible_photos(dir) == std::vector<std::string>{"big.png"});
  BackgroundCache cache(dir, 128, 64);
  const Image img = cache.get("photo-big.png");
  CHECK(img.width == 128);
  CHECK(img.at(10, 10)[0] == 9);
}
