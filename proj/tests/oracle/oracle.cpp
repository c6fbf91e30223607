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

#include "oracle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace oracle {

namespace {

const char* const kCells[9] = {"top-left",    "top-center", "top-right",     "center-left",  "center",
                               "center-right", "bottom-left", "bottom-center", "bottom-right"};
const char* const kOctants[8] = {"right", "upper-right", "above", "upper-left",
                                 "left",  "lower-left",  "below", "lower-right"};
const char* const kColors[7] = {"black", "blue", "green", "orange", "red", "white", "yellow"};

struct Node {
  std::string color;  // empty for COCO objects
  std::string cls;    // spaces replaced by '-'
  double cx, cy;
  Rect box;
};

std::vector<Node> nodes_of(const SceneImage& img) {
  std::vector<Node> out;
  for (const auto& p : img.placements) {
    Node n;
    if (p.object.color) n.color = kColors[static_cast<int>(*p.object.color)];
    n.cls = p.object.object_class;
    for (char& c : n.cls) {
      if (c == ' ') c = '-';
    }
    n.box = p.bbox;
    n.cx = p.bbox.x + 0.5 * p.bbox.w;
    n.cy = p.bbox.y + 0.5 * p.bbox.h;
    out.push_back(n);
  }
  return out;
}

std::string spaced(std::string s) {
  for (char& c : s) {
    if (c == '-') c = ' ';
  }
  return s;
}

}  // namespace

int cell_index(double x, double y, int width, int height) {
  auto band = [](double v, int dim) {
    int k = 0;
    while (k < 2 && v >= std::floor((k + 1) * static_cast<double>(dim) / 3.0)) ++k;
    return k;
  };
  return band(y, height) * 3 + band(x, width);
}

int octant(double dx, double dy) {
  if (dx == 0 && dy == 0) return -1;
  // Rotate by half a sector and bucket the polar angle (y flipped up).
  const double a = std::atan2(-dy, dx) + M_PI / 8.0;
  double turns = a / (2.0 * M_PI);
  turns -= std::floor(turns);
  return static_cast<int>(turns * 8.0) % 8;
}

std::string cell_name(int cell) { return kCells[cell]; }
std::string octant_name(int oct) { return kOctants[oct]; }

double inside_fraction(const Rect& box, int cell, int width, int height) {
  const double x0 = std::floor((cell % 3) * width / 3.0), x1 = std::floor((cell % 3 + 1) * width / 3.0);
  const double y0 = std::floor((cell / 3) * height / 3.0), y1 = std::floor((cell / 3 + 1) * height / 3.0);
  const double w = std::max(0.0, std::min<double>(box.x + box.w, x1) - std::max<double>(box.x, x0));
  const double h = std::max(0.0, std::min<double>(box.y + box.h, y1) - std::max<double>(box.y, y0));
  return (w * h) / (static_cast<double>(box.w) * box.h);
}

std::optional<AnswerKey> answer(const SceneImage& img, int width, int height, const QuestionRecord& q) {
  const std::vector<Node> nodes = nodes_of(img);
  std::string color, cls, ref_color, ref_cls, ask;
  int cell = -1, dir = -1;
  for (const auto& c : q.concepts) {
    auto value = [&](std::size_t n) { return c.substr(n); };
    if (c.rfind("color:", 0) == 0) {
      color = value(6);
    } else if (c.rfind("object:", 0) == 0) {
      cls = value(7);
    } else if (c.rfind("ref:color:", 0) == 0) {
      ref_color = value(10);
    } else if (c.rfind("ref:object:", 0) == 0) {
      ref_cls = value(11);
    } else if (c.rfind("abs:", 0) == 0) {
      for (int i = 0; i < 9; ++i) {
        if (value(4) == kCells[i]) cell = i;
      }
    } else if (c.rfind("rel:", 0) == 0) {
      for (int i = 0; i < 8; ++i) {
        if (value(4) == kOctants[i]) dir = i;
      }
    } else if (c.rfind("ask:", 0) == 0) {
      ask = value(4);
    } else {
      return std::nullopt;
    }
  }
  auto fits = [](const Node& n, const std::string& col, const std::string& k) {
    return (col.empty() || n.color == col) && (k.empty() || n.cls == k);
  };

  const Node* ref = nullptr;
  if (!ref_color.empty() || !ref_cls.empty()) {
    int hits = 0;
    for (const auto& n : nodes) {
      if (fits(n, ref_color, ref_cls)) {
        ref = &n;
        ++hits;
      }
    }
    if (hits == 0) return AnswerKey::unk();
    if (hits > 1) return std::nullopt;
  } else if (dir >= 0) {
    return std::nullopt;
  }

  std::set<std::string> asked;
  int count = 0;
  for (const auto& n : nodes) {
    if (&n == ref || !fits(n, color, cls)) continue;
    const int here = cell_index(n.cx, n.cy, width, height);
    if (cell >= 0 && here != cell) continue;
    const int towards = ref ? octant(n.cx - ref->cx, n.cy - ref->cy) : -1;
    if (dir >= 0 && towards != dir) continue;
    ++count;
    if (ask == "color") asked.insert(n.color);
    if (ask == "object") asked.insert(spaced(n.cls));
    if (ask == "abs") asked.insert(spaced(kCells[here]));
    if (ask == "rel" && towards >= 0) asked.insert(spaced(kOctants[towards]));
  }
  switch (q.qtype) {
    case scrapbook::QType::presence:
    case scrapbook::QType::confirmation:
      return count ? AnswerKey::yes() : AnswerKey::no();
    case scrapbook::QType::counting:
      return AnswerKey::count(count);
    case scrapbook::QType::recognition:
      if (asked.size() != 1 || asked.begin()->empty()) return std::nullopt;
      return AnswerKey::label(*asked.begin());
  }
  return std::nullopt;
}

std::vector<std::string> verify_image(const SceneImage& img, const std::map<std::string, const SceneImage*>& by_id,
                                      int width, int height, const MaskLoader& load) {
  std::vector<std::string> bad;
  const auto& ps = img.placements;
  std::vector<int> owner(static_cast<std::size_t>(width) * height, -1);
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Rect& b = ps[i].bbox;
    if (b.x < 0 || b.y < 0 || b.x + b.w > width || b.y + b.h > height || b.w <= 0 || b.h <= 0) {
      bad.push_back("containment " + std::to_string(i));
      continue;
    }
    const Mask m = load(ps[i].mask_ref);
    for (int y = 0; y < m.height; ++y) {
      for (int x = 0; x < m.width; ++x) {
        if (!m.get(x, y)) continue;
        ++sum;
        int& o = owner[static_cast<std::size_t>(y) * width + x];
        if (o >= 0) bad.push_back("overlap " + std::to_string(o) + "/" + std::to_string(i));
        o = static_cast<int>(i);
        if (x < b.x || x >= b.x + b.w || y < b.y || y >= b.y + b.h) bad.push_back("mask outside bbox");
      }
    }
  }
  if (!bad.empty()) return bad;
  std::int64_t uni = 0;
  for (int o : owner) uni += o >= 0;
  if (uni != sum) bad.push_back("union != sum");

  const int main_cell = static_cast<int>(img.abs_pos_pair.first);
  const int ref_cell = static_cast<int>(img.abs_pos_pair.second);
  // RelativePosition enumerators run upper-left, above, upper-right, left,
  // right, lower-left, below, lower-right.
  static const int kToOctant[8] = {3, 2, 1, 4, 0, 5, 6, 7};
  const int want = kToOctant[static_cast<int>(img.rel_pos)];
  if (inside_fraction(ps[0].bbox, main_cell, width, height) < 0.75) bad.push_back("main region");
  if (ps.size() >= 2) {
    const Rect& m = ps[0].bbox;
    const Rect& r = ps[1].bbox;
    auto dir_of = [&](const Rect& o) {
      return octant((o.x + 0.5 * o.w) - (r.x + 0.5 * r.w), (o.y + 0.5 * o.h) - (r.y + 0.5 * r.h));
    };
    if (inside_fraction(r, ref_cell, width, height) < 0.75) bad.push_back("reference region");
    if (dir_of(m) != want) bad.push_back("reference relation");
    for (std::size_t i = 2; i < ps.size(); ++i) {
      if (dir_of(ps[i].bbox) == want) bad.push_back("distractor " + std::to_string(i) + " in relation");
    }
  }
  if (img.parent_id) {
    auto it = by_id.find(*img.parent_id);
    if (it == by_id.end()) {
      bad.push_back("missing parent");
    } else {
      const auto& pp = it->second->placements;
      if (pp.size() + 1 != ps.size() || !std::equal(pp.begin(), pp.end(), ps.begin())) bad.push_back("chain step");
    }
  } else if (ps.size() != 1) {
    bad.push_back("root size");
  }
  return bad;
}

}  // namespace oracle
