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

#include "check/check.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <set>
#include <unordered_map>

#include "bank/raster.hpp"
#include "core/parallel.hpp"
#include "core/vocab.hpp"
#include "levels/levels.hpp"

namespace scrapbook::check {

namespace fs = std::filesystem;

namespace {

int third(int k, int dim) { return static_cast<int>(std::int64_t{k} * dim / 3); }

Rect cell(AbsolutePosition p, int width, int height) {
  const int i = static_cast<int>(p);
  const int c = i % 3, r = i / 3;
  return {third(c, width), third(r, height), third(c + 1, width) - third(c, width),
          third(r + 1, height) - third(r, height)};
}

std::string dashed(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c == ' ') c = '-';
  }
  return out;
}

struct Query {
  std::vector<std::string> colors, objects, ref_colors, ref_objects;
  std::optional<AbsolutePosition> abs;
  std::optional<RelativePosition> rel;
  std::optional<std::string> ask;
};

Query parse_query(const std::vector<std::string>& concepts) {
  Query q;
  for (const auto& t : concepts) {
    const auto colon = t.find(':');
    if (colon == std::string::npos) throw validation_error("malformed concept '" + t + "'");
    const std::string ns = t.substr(0, colon), v = t.substr(colon + 1);
    if (ns == "color") {
      q.colors.push_back(v);
    } else if (ns == "object") {
      q.objects.push_back(v);
    } else if (ns == "abs") {
      auto p = try_parse<AbsolutePosition>(v);
      if (!p) throw validation_error("unknown region '" + v + "'");
      q.abs = p;
    } else if (ns == "rel") {
      auto p = try_parse<RelativePosition>(v);
      if (!p) throw validation_error("unknown direction '" + v + "'");
      q.rel = p;
    } else if (ns == "ask") {
      q.ask = v;
    } else if (t.starts_with("ref:color:")) {
      q.ref_colors.push_back(t.substr(10));
    } else if (t.starts_with("ref:object:")) {
      q.ref_objects.push_back(t.substr(11));
    } else {
      throw validation_error("unknown concept '" + t + "'");
    }
  }
  return q;
}

bool has(const ObjectSpec& o, const std::vector<std::string>& colors, const std::vector<std::string>& objects) {
  for (const auto& c : colors) {
    if (!o.color || std::string(to_string(*o.color)) != c) return false;
  }
  for (const auto& k : objects) {
    if (dashed(o.object_class) != k) return false;
  }
  return true;
}

std::pair<double, double> center(const Rect& r) { return {r.x + r.w / 2.0, r.y + r.h / 2.0}; }

class MaskStore {
 public:
  explicit MaskStore(fs::path root) : root_(std::move(root)) {}

  std::shared_ptr<const Mask> get(const std::string& ref) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (auto it = cache_.find(ref); it != cache_.end()) return it->second;
    }
    auto m = std::make_shared<const Mask>(read_mask_png(root_ / ref));
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(ref, m).first->second;
  }

 private:
  fs::path root_;
  std::mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<const Mask>> cache_;
};

std::string rect_text(const Rect& r) {
  return "[" + std::to_string(r.x) + "," + std::to_string(r.y) + "," + std::to_string(r.w) + "," +
         std::to_string(r.h) + "]";
}

void check_image(const SceneImage& img, const std::map<std::string, const SceneImage*>& by_id, int W, int H,
                 const fs::path& dir, MaskStore& masks, std::vector<Violation>& out) {
  auto fail = [&](const std::string& msg) { out.push_back({img.image_id, msg}); };
  const auto& ps = img.placements;
  if (ps.empty()) {
    fail("image has no placements");
    return;
  }

  const fs::path png = dir / "images" / (img.image_id + ".png");
  if (!fs::exists(png)) {
    fail("missing image file " + png.filename().string());
  } else {
    const auto [w, h] = read_image_size(png);
    if (w != W || h != H) fail("image file is " + std::to_string(w) + "x" + std::to_string(h));
  }

  bool boxes_ok = true;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Rect& b = ps[i].bbox;
    if (b.w <= 0 || b.h <= 0 || b.x < 0 || b.y < 0 || b.x + b.w > W || b.y + b.h > H) {
      fail("placement " + std::to_string(i) + " bbox " + rect_text(b) + " leaves the canvas");
      boxes_ok = false;
    }
  }
  if (!boxes_ok) return;

  // Pixel ownership across all placements: union area must equal the sum.
  std::vector<std::uint8_t> owner(std::size_t(W) * H, 0);
  std::int64_t sum = 0, uni = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    std::shared_ptr<const Mask> m;
    try {
      m = masks.get(ps[i].mask_ref);
    } catch (const Error& e) {
      fail("placement " + std::to_string(i) + ": " + e.what());
      continue;
    }
    if (m->width != W || m->height != H) {
      fail("mask " + ps[i].mask_ref + " is not canvas sized");
      continue;
    }
    const Rect& b = ps[i].bbox;
    std::int64_t area = 0, outside = 0;
    for (int y = 0; y < H; ++y) {
      for (int x = 0; x < W; ++x) {
        if (!m->get(x, y)) continue;
        ++area;
        if (x < b.x || y < b.y || x >= b.x + b.w || y >= b.y + b.h) ++outside;
        auto& o = owner[std::size_t(y) * W + x];
        if (o == 0) ++uni;
        o = 1;
      }
    }
    sum += area;
    if (area == 0) fail("mask " + ps[i].mask_ref + " is empty");
    if (outside > 0) fail("mask " + ps[i].mask_ref + " has " + std::to_string(outside) + " pixels outside its bbox");
  }
  if (uni != sum) fail("masks overlap by " + std::to_string(sum - uni) + " pixels");

  const auto [main_region, ref_region] = img.abs_pos_pair;
  const std::size_t mi = img.main_index.value_or(0);
  if (mi >= ps.size()) {
    fail("main index out of range");
    return;
  }
  if (share_inside(ps[mi].bbox, main_region, W, H) < 0.75) {
    fail("main object is not mostly inside " + std::string(to_string(main_region)));
  }
  if (img.reference_index) {
    const std::size_t ri = *img.reference_index;
    if (ri >= ps.size() || ri == mi) {
      fail("reference index out of range");
      return;
    }
    if (share_inside(ps[ri].bbox, ref_region, W, H) < 0.75) {
      fail("reference object is not mostly inside " + std::string(to_string(ref_region)));
    }
    if (direction_of(ps[mi].bbox, ps[ri].bbox) != img.rel_pos) {
      fail("main object is not " + std::string(to_string(img.rel_pos)) + " of the reference");
    }
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (i == mi || i == ri) continue;
      if (direction_of(ps[i].bbox, ps[ri].bbox) == img.rel_pos) {
        fail("distractor " + std::to_string(i) + " lies " + std::string(to_string(img.rel_pos)) +
             " of the reference");
      }
    }
  } else if (ps.size() > 1) {
    fail("several placements without a reference");
  }

  if (img.parent_id) {
    auto it = by_id.find(*img.parent_id);
    if (it == by_id.end()) {
      fail("unknown parent " + *img.parent_id);
      return;
    }
    const SceneImage& parent = *it->second;
    if (parent.placements.size() + 1 != ps.size()) {
      fail("adds " + std::to_string(static_cast<long>(ps.size()) - static_cast<long>(parent.placements.size())) +
           " placements to its parent");
    } else if (!std::equal(parent.placements.begin(), parent.placements.end(), ps.begin())) {
      fail("parent placements are not preserved");
    }
    if (parent.background_id != img.background_id) fail("background differs from parent");
    if (parent.abs_pos_pair != img.abs_pos_pair || parent.rel_pos != img.rel_pos) {
      fail("position parameters differ from parent");
    }
  } else if (ps.size() != 1) {
    fail("chain root holds " + std::to_string(ps.size()) + " placements");
  }
}

bool positive(const AnswerKey& k) {
  return k.kind == AnswerKey::Kind::yes || k.kind == AnswerKey::Kind::text ||
         (k.kind == AnswerKey::Kind::number && k.number.value_or(0) > 0);
}

bool negative(const AnswerKey& k) {
  return k.kind == AnswerKey::Kind::no || (k.kind == AnswerKey::Kind::number && k.number.value_or(-1) == 0);
}

AnswerDomain expected_domain(QType t, const std::optional<std::string>& ask, bool coco) {
  switch (t) {
    case QType::presence:
    case QType::confirmation:
      return AnswerDomain::yes_no;
    case QType::counting:
      return AnswerDomain::count;
    case QType::recognition:
      break;
  }
  if (ask == "color") return AnswerDomain::color;
  if (ask == "abs") return AnswerDomain::abs_position;
  if (ask == "rel") return AnswerDomain::rel_position;
  return coco ? AnswerDomain::object_class : AnswerDomain::shape;
}

}  // namespace

AbsolutePosition region_of(double x, double y, int width, int height) {
  const int col = x < third(1, width) ? 0 : x < third(2, width) ? 1 : 2;
  const int row = y < third(1, height) ? 0 : y < third(2, height) ? 1 : 2;
  return static_cast<AbsolutePosition>(row * 3 + col);
}

std::optional<RelativePosition> direction_of(const Rect& object, const Rect& reference) {
  const auto [ox, oy] = center(object);
  const auto [rx, ry] = center(reference);
  const double dx = ox - rx, dy = ry - oy;  // dy positive upward
  if (dx == 0 && dy == 0) return std::nullopt;
  double deg = std::atan2(dy, dx) * 180.0 / std::numbers::pi;
  if (deg < 0) deg += 360.0;
  static constexpr RelativePosition kByOctant[8] = {
      RelativePosition::right,      RelativePosition::upper_right, RelativePosition::above,
      RelativePosition::upper_left, RelativePosition::left,        RelativePosition::lower_left,
      RelativePosition::below,      RelativePosition::lower_right};
  const int oct = static_cast<int>(std::floor((deg + 22.5) / 45.0)) % 8;
  return kByOctant[oct];
}

double share_inside(const Rect& box, AbsolutePosition region, int width, int height) {
  const Rect c = cell(region, width, height);
  const int x0 = std::max(box.x, c.x), x1 = std::min(box.x + box.w, c.x + c.w);
  const int y0 = std::max(box.y, c.y), y1 = std::min(box.y + box.h, c.y + c.h);
  if (x1 <= x0 || y1 <= y0 || box.w <= 0 || box.h <= 0) return 0.0;
  return static_cast<double>(x1 - x0) * (y1 - y0) / (static_cast<double>(box.w) * box.h);
}

AnswerKey oracle_answer(const SceneImage& img, int width, int height, QType qtype,
                        const std::vector<std::string>& concepts) {
  const Query q = parse_query(concepts);
  const bool refd = !q.ref_colors.empty() || !q.ref_objects.empty();
  if (q.rel && !refd) throw validation_error("direction without a reference");

  std::optional<std::size_t> ref;
  if (refd) {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < img.placements.size(); ++i) {
      if (has(img.placements[i].object, q.ref_colors, q.ref_objects)) hits.push_back(i);
    }
    if (hits.empty()) return AnswerKey::unk();
    if (hits.size() > 1) throw validation_error("reference matches several objects");
    ref = hits[0];
  }

  std::vector<std::string> answers;
  int count = 0;
  for (std::size_t i = 0; i < img.placements.size(); ++i) {
    if (ref && *ref == i) continue;
    const Placement& p = img.placements[i];
    if (!has(p.object, q.colors, q.objects)) continue;
    const auto [cx, cy] = center(p.bbox);
    const AbsolutePosition where = region_of(cx, cy, width, height);
    if (q.abs && where != *q.abs) continue;
    std::optional<RelativePosition> dir;
    if (ref) dir = direction_of(p.bbox, img.placements[*ref].bbox);
    if (q.rel && dir != q.rel) continue;
    ++count;
    if (qtype != QType::recognition) continue;
    if (q.ask == "color") {
      answers.push_back(p.object.color ? std::string(to_string(*p.object.color)) : "");
    } else if (q.ask == "object") {
      answers.push_back(p.object.object_class);
    } else if (q.ask == "abs") {
      answers.push_back(answer_text(where));
    } else if (q.ask == "rel" && dir) {
      answers.push_back(answer_text(*dir));
    } else {
      throw validation_error("recognition question without a usable ask concept");
    }
  }

  switch (qtype) {
    case QType::presence:
    case QType::confirmation:
      return count > 0 ? AnswerKey::yes() : AnswerKey::no();
    case QType::counting:
      return AnswerKey::count(count);
    case QType::recognition:
      break;
  }
  if (answers.empty()) throw validation_error("recognition question matches no object");
  for (const auto& a : answers) {
    if (a != answers.front() || a.empty()) throw validation_error("recognition question has no single answer");
  }
  return AnswerKey::label(answers.front());
}

std::vector<Violation> check_geometry(const Manifest& m, const fs::path& dataset_dir, int jobs) {
  const int W = m.config.canvas_width, H = m.config.canvas_height;
  std::map<std::string, const SceneImage*> by_id;
  std::vector<Violation> out;
  for (const auto& img : m.images) {
    if (!by_id.emplace(img.image_id, &img).second) out.push_back({img.image_id, "duplicate image id"});
  }
  MaskStore masks(dataset_dir);
  std::vector<std::vector<Violation>> per(m.images.size());
  parallel_for(m.images.size(), jobs, [&](std::size_t i) {
    try {
      check_image(m.images[i], by_id, W, H, dataset_dir, masks, per[i]);
    } catch (const std::exception& e) {
      per[i].push_back({m.images[i].image_id, e.what()});
    }
  });
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::vector<Violation> check_questions(const Dataset& d) {
  const Manifest& m = d.manifest;
  const bool coco = m.config.object_mode == ObjectMode::coco;
  std::map<std::string, const SceneImage*> images;
  for (const auto& img : m.images) images.emplace(img.image_id, &img);

  std::vector<Violation> out;
  std::map<std::string, std::vector<const QuestionRecord*>> by_id;
  for (const auto& q : d.questions) by_id[q.question_id].push_back(&q);

  for (const auto& [id, forms] : by_id) {
    auto fail = [&, id = id](const std::string& msg) { out.push_back({id, msg}); };
    std::set<Form> seen;
    for (const auto* f : forms) seen.insert(f->form);
    if (seen.size() != 4 || forms.size() != 4) fail("expected one record per form, found " + std::to_string(forms.size()));
    const QuestionRecord& q = *forms.front();
    bool coherent = true;
    for (const auto* f : forms) {
      if (f->expected != q.expected || f->concepts != q.concepts || f->image_id != q.image_id ||
          f->qtype != q.qtype || f->group != q.group || f->subgroup != q.subgroup || f->level != q.level) {
        coherent = false;
      }
    }
    if (!coherent) fail("forms disagree on key or parameters");

    auto img = images.find(q.image_id);
    if (img == images.end()) {
      fail("unknown image " + q.image_id);
      continue;
    }
    try {
      const AnswerKey key =
          oracle_answer(*img->second, m.config.canvas_width, m.config.canvas_height, q.qtype, q.concepts);
      if (key != q.expected) {
        fail("answer key " + canonical_answer(q.expected) + " but the scene gives " + canonical_answer(key));
      }
      const Query parsed = parse_query(q.concepts);
      if (q.domain != expected_domain(q.qtype, parsed.ask, coco)) fail("answer domain does not fit the question type");
    } catch (const Error& e) {
      fail(e.what());
    }

    const bool ok = q.subgroup == 4 ? q.expected.is_unk()
                                    : (q.subgroup == 1 ? positive(q.expected) : negative(q.expected));
    if (!ok) fail("answer key " + canonical_answer(q.expected) + " contradicts subgroup " + std::to_string(q.subgroup));
    if (q.group == Group::no_position && q.subgroup > 2) fail("no-position questions have two subgroups");
    if (q.qtype == QType::recognition && q.subgroup != 1) fail("recognition questions have one subgroup");

    try {
      if (classify_level(q.qtype, q.group, q.concepts) != q.level) fail("level " + std::to_string(q.level) + " is wrong");
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  return out;
}

KeyCensus key_census(const std::vector<QuestionRecord>& questions) {
  KeyCensus c;
  for (const auto& q : questions) {
    if (q.form != Form::original) continue;
    ++c.questions;
    switch (q.expected.kind) {
      case AnswerKey::Kind::yes: ++c.yes; break;
      case AnswerKey::Kind::no: ++c.no; break;
      case AnswerKey::Kind::number: ++c.number; break;
      case AnswerKey::Kind::text: ++c.text; break;
      case AnswerKey::Kind::unk: ++c.unk; break;
    }
  }
  return c;
}

CheckReport check_dataset(const fs::path& dataset_dir, int jobs) {
  return check_dataset(load_dataset(dataset_dir), dataset_dir, jobs);
}

CheckReport check_dataset(const Dataset& d, const fs::path& dataset_dir, int jobs) {
  CheckReport r;
  r.images = static_cast<std::int64_t>(d.manifest.images.size());
  r.questions = static_cast<std::int64_t>(d.questions.size());
  r.violations = check_geometry(d.manifest, dataset_dir, jobs);
  auto qv = check_questions(d);
  r.violations.insert(r.violations.end(), qv.begin(), qv.end());
  r.census = key_census(d.questions);
  return r;
}

}  // namespace scrapbook::check
