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

#include "bank/shapes.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "core/vocab.hpp"
#include "selection/selection.hpp"

namespace scrapbook {

namespace {

int vertex_count(Shape s) {
  switch (s) {
    case Shape::circle: return 0;
    case Shape::square: return 4;
    case Shape::triangle: return 3;
    case Shape::pentagon: return 5;
    case Shape::hexagon: return 6;
    case Shape::heptagon: return 7;
  }
  throw internal_error("bad Shape");
}

struct Pt {
  double x, y;
};

// Vertices in increasing angle order; the interior lies on the positive
// side of every edge.
bool inside_convex(const std::vector<Pt>& poly, double x, double y) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Pt& a = poly[i];
    const Pt& b = poly[(i + 1) % n];
    const double cross = (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x);
    if (cross < -1e-9) return false;
  }
  return true;
}

}  // namespace

Cutout rasterize_shape(const ObjectSpec& spec) {
  const auto shape = try_parse<Shape>(spec.object_class);
  if (!shape) throw usage_error("unknown shape '" + spec.object_class + "'");
  if (!spec.color || !spec.size_index) {
    throw usage_error("shape '" + spec.object_class + "' needs a color and a size index");
  }
  const int side = size_for_index(*spec.size_index);
  const double r = side / 2.0;
  const int n = vertex_count(*shape);

  std::vector<Pt> poly;
  for (int k = 0; k < n; ++k) {
    // Starting at 90 + 180/n degrees puts one edge horizontal at the bottom.
    const double a = (90.0 + 180.0 / n + 360.0 * k / n) * std::numbers::pi / 180.0;
    poly.push_back({r + r * std::cos(a), r + r * std::sin(a)});
  }

  Cutout out{Image(side, side, 4), Mask(side, side)};
  const Rgb c = color_rgb(*spec.color);
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      const double px = x + 0.5;
      const double py = y + 0.5;
      bool in;
      if (n == 0) {
        in = (px - r) * (px - r) + (py - r) * (py - r) <= r * r;
      } else {
        in = inside_convex(poly, px, py);
      }
      if (!in) continue;
      out.mask.set(x, y);
      std::uint8_t* p = out.rgba.at(x, y);
      p[0] = c.r;
      p[1] = c.g;
      p[2] = c.b;
      p[3] = 255;
    }
  }
  return out;
}

}  // namespace scrapbook
