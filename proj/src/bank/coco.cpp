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

#include "bank/coco.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "core/manifest.hpp"
#include "core/parallel.hpp"
#include "core/vocab.hpp"

namespace scrapbook {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool inside_polygon(const std::vector<double>& xy, double x, double y) {
  bool in = false;
  const std::size_t n = xy.size() / 2;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const double xi = xy[2 * i], yi = xy[2 * i + 1];
    const double xj = xy[2 * j], yj = xy[2 * j + 1];
    if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi) in = !in;
  }
  return in;
}

// Tight box of the foreground; empty Rect when there is none.
Rect mask_bounds(const Mask& m) {
  int x0 = m.width, y0 = m.height, x1 = -1, y1 = -1;
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      if (!m.get(x, y)) continue;
      x0 = std::min(x0, x);
      y0 = std::min(y0, y);
      x1 = std::max(x1, x);
      y1 = std::max(y1, y);
    }
  }
  if (x1 < 0) return Rect{};
  return Rect{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

Mask decode_segmentation(const json& seg, int width, int height) {
  if (seg.is_array()) {
    return decode_polygons(seg.get<std::vector<std::vector<double>>>(), width, height);
  }
  const auto size = seg.at("size").get<std::vector<int>>();
  if (size.size() != 2 || size[0] != height || size[1] != width) {
    throw io_error("RLE size does not match its image");
  }
  const auto& counts = seg.at("counts");
  if (counts.is_string()) return decode_rle(rle_counts_from_string(counts.get<std::string>()), width, height);
  return decode_rle(counts.get<std::vector<std::uint32_t>>(), width, height);
}

struct Candidate {
  std::int64_t ann_id;
  std::string object_class;
  const json* segmentation;
};

struct SourceImage {
  std::string image_id;
  std::string file_name;
  int width = 0;
  int height = 0;
  std::vector<Candidate> candidates;
};

std::vector<BankEntry> extract(const SourceImage& src, const fs::path& images_dir) {
  std::vector<BankEntry> out;
  std::optional<Image> pixels;
  for (const Candidate& c : src.candidates) {
    const Mask full = decode_segmentation(*c.segmentation, src.width, src.height);
    const Rect box = mask_bounds(full);
    if (box.empty() || box.w < kMinCutoutSide || box.h < kMinCutoutSide) continue;
    if (box.x <= 1 || box.y <= 1 || box.right() >= src.width - 1 || box.bottom() >= src.height - 1) continue;
    if (!pixels) {
      pixels = read_image(images_dir / src.file_name);
      if (pixels->width != src.width || pixels->height != src.height) {
        throw io_error("image '" + src.file_name + "' does not match its annotated size");
      }
    }
    BankEntry e;
    e.bank_id = src.image_id + "-" + std::to_string(c.ann_id);
    e.object_class = c.object_class;
    e.source_image_id = src.image_id;
    e.original_bbox = box;
    e.cutout = Cutout{Image(box.w, box.h, 4), Mask(box.w, box.h)};
    for (int y = 0; y < box.h; ++y) {
      for (int x = 0; x < box.w; ++x) {
        if (!full.get(box.x + x, box.y + y)) continue;
        e.cutout.mask.set(x, y);
        const std::uint8_t* s = pixels->at(box.x + x, box.y + y);
        std::uint8_t* d = e.cutout.rgba.at(x, y);
        d[0] = s[0];
        d[1] = s[1];
        d[2] = s[2];
        d[3] = 255;
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

Mask decode_polygons(const std::vector<std::vector<double>>& polys, int width, int height) {
  Mask m(width, height);
  for (const auto& poly : polys) {
    if (poly.size() < 6 || poly.size() % 2 != 0) throw io_error("malformed segmentation polygon");
    double minx = poly[0], maxx = poly[0], miny = poly[1], maxy = poly[1];
    for (std::size_t i = 0; i < poly.size(); i += 2) {
      minx = std::min(minx, poly[i]);
      maxx = std::max(maxx, poly[i]);
      miny = std::min(miny, poly[i + 1]);
      maxy = std::max(maxy, poly[i + 1]);
    }
    const int x0 = std::max(0, static_cast<int>(minx) - 1);
    const int y0 = std::max(0, static_cast<int>(miny) - 1);
    const int x1 = std::min(width - 1, static_cast<int>(maxx) + 1);
    const int y1 = std::min(height - 1, static_cast<int>(maxy) + 1);
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        if (inside_polygon(poly, x + 0.5, y + 0.5)) m.set(x, y);
      }
    }
  }
  return m;
}

Mask decode_rle(const std::vector<std::uint32_t>& counts, int width, int height) {
  Mask m(width, height);
  const std::size_t total = std::size_t(width) * height;
  std::size_t pos = 0;
  bool on = false;
  for (std::uint32_t run : counts) {
    if (pos + run > total) throw io_error("RLE runs exceed the image size");
    if (on) {
      // Runs are column-major.
      for (std::size_t i = pos; i < pos + run; ++i) m.set(static_cast<int>(i / height), static_cast<int>(i % height));
    }
    pos += run;
    on = !on;
  }
  if (pos != total) throw io_error("RLE runs do not cover the image");
  return m;
}

std::vector<std::uint32_t> rle_counts_from_string(const std::string& s) {
  std::vector<std::int64_t> cnts;
  std::size_t p = 0;
  while (p < s.size()) {
    std::int64_t x = 0;
    int k = 0;
    bool more = true;
    while (more) {
      if (p >= s.size()) throw io_error("truncated compressed RLE");
      const std::int64_t c = static_cast<std::int64_t>(s[p]) - 48;
      x |= (c & 0x1f) << (5 * k);
      more = (c & 0x20) != 0;
      ++p;
      ++k;
      if (!more && (c & 0x10)) x |= -(std::int64_t{1} << (5 * k));
    }
    if (cnts.size() > 2) x += cnts[cnts.size() - 2];
    cnts.push_back(x);
  }
  std::vector<std::uint32_t> out;
  out.reserve(cnts.size());
  for (std::int64_t c : cnts) {
    if (c < 0) throw io_error("negative run in compressed RLE");
    out.push_back(static_cast<std::uint32_t>(c));
  }
  return out;
}

std::vector<BankEntry> build_coco_bank(const CocoBuildOptions& opts) {
  json doc;
  try {
    doc = json::parse(read_text_file(opts.annotations));
  } catch (const json::exception& e) {
    throw io_error("cannot parse annotations " + opts.annotations.string() + ": " + e.what());
  }

  std::set<std::string> wanted;
  for (const auto& c : opts.classes) {
    if (!is_coco_class(c)) throw usage_error("'" + c + "' is not a curated class");
    wanted.insert(c);
  }
  if (wanted.empty()) wanted.insert(vocabulary().coco_classes.begin(), vocabulary().coco_classes.end());

  std::vector<SourceImage> sources;
  try {
    std::map<std::int64_t, std::string> categories;
    for (const auto& c : doc.at("categories")) {
      const auto name = c.at("name").get<std::string>();
      if (wanted.count(name)) categories[c.at("id").get<std::int64_t>()] = name;
    }
    std::map<std::int64_t, std::size_t> image_index;
    for (const auto& im : doc.at("images")) {
      const auto id = im.at("id").get<std::int64_t>();
      image_index[id] = sources.size();
      sources.push_back({std::to_string(id), im.at("file_name").get<std::string>(), im.at("width").get<int>(),
                         im.at("height").get<int>(), {}});
    }
    for (const auto& a : doc.at("annotations")) {
      if (a.value("iscrowd", 0) != 0) continue;
      auto cat = categories.find(a.at("category_id").get<std::int64_t>());
      if (cat == categories.end()) continue;
      auto img = image_index.find(a.at("image_id").get<std::int64_t>());
      if (img == image_index.end()) throw io_error("annotation refers to an unknown image");
      sources[img->second].candidates.push_back({a.at("id").get<std::int64_t>(), cat->second, &a.at("segmentation")});
    }
  } catch (const json::exception& e) {
    throw io_error("malformed annotations: " + std::string(e.what()));
  }
  std::erase_if(sources, [](const SourceImage& s) { return s.candidates.empty(); });

  std::vector<std::vector<BankEntry>> slots(sources.size());
  parallel_for(sources.size(), opts.jobs, [&](std::size_t i) { slots[i] = extract(sources[i], opts.images_dir); });

  std::vector<BankEntry> entries;
  for (auto& s : slots) {
    for (auto& e : s) entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(),
            [](const BankEntry& a, const BankEntry& b) { return a.bank_id < b.bank_id; });

  if (!opts.classes.empty()) {
    for (const auto& c : wanted) {
      const bool found = std::any_of(entries.begin(), entries.end(),
                                     [&](const BankEntry& e) { return e.object_class == c; });
      if (!found) throw validation_error("no usable instance of class '" + c + "'");
    }
  }
  if (entries.empty()) throw validation_error("no usable instance in " + opts.annotations.string());
  return entries;
}

void write_bank(const fs::path& dir, const std::vector<BankEntry>& entries) {
  fs::create_directories(dir / "cutouts");
  fs::create_directories(dir / "masks");
  json index = json::array();
  for (const auto& e : entries) {
    write_png(dir / "cutouts" / (e.bank_id + ".png"), e.cutout.rgba);
    write_mask_png(dir / "masks" / (e.bank_id + ".png"), e.cutout.mask);
    index.push_back({{"bank_id", e.bank_id},
                     {"class", e.object_class},
                     {"source_image_id", e.source_image_id},
                     {"original_bbox", to_json(e.original_bbox)}});
  }
  json doc = {{"format_version", "1"}, {"entries", index}};
  write_text_file(dir / "bank_index.json", doc.dump(2) + "\n");
}

ObjectBank ObjectBank::load(const fs::path& dir) {
  ObjectBank bank;
  bank.dir_ = dir;
  try {
    const json doc = json::parse(read_text_file(dir / "bank_index.json"));
    for (const auto& j : doc.at("entries")) {
      BankEntry e;
      e.bank_id = j.at("bank_id").get<std::string>();
      e.object_class = j.at("class").get<std::string>();
      e.source_image_id = j.at("source_image_id").get<std::string>();
      e.original_bbox = rect_from_json(j.at("original_bbox"));
      if (!is_coco_class(e.object_class)) throw io_error("bank entry of unknown class '" + e.object_class + "'");
      bank.by_id_[e.bank_id] = bank.entries_.size();
      bank.entries_.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw io_error("malformed bank index in " + dir.string() + ": " + e.what());
  }
  return bank;
}

ClassDomain ObjectBank::class_domain() const {
  ClassDomain d;
  for (const auto& e : entries_) d.bank_ids[e.object_class].push_back(e.bank_id);
  for (auto& [cls, ids] : d.bank_ids) {
    std::sort(ids.begin(), ids.end());
    d.classes.push_back(cls);
  }
  return d;
}

const BankEntry& ObjectBank::entry(const std::string& bank_id) const {
  auto it = by_id_.find(bank_id);
  if (it == by_id_.end()) throw io_error("object bank has no entry '" + bank_id + "'");
  return entries_[it->second];
}

Cutout ObjectBank::cutout(const std::string& bank_id) const {
  const BankEntry& e = entry(bank_id);
  Cutout c;
  c.mask = read_mask_png(dir_ / "masks" / (bank_id + ".png"));
  const Image img = read_image(dir_ / "cutouts" / (bank_id + ".png"));
  if (img.width != c.mask.width || img.height != c.mask.height || img.width != e.original_bbox.w ||
      img.height != e.original_bbox.h) {
    throw io_error("bank entry '" + bank_id + "' has inconsistent raster sizes");
  }
  c.rgba = Image(img.width, img.height, 4);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const std::uint8_t* s = img.at(x, y);
      std::uint8_t* d = c.rgba.at(x, y);
      d[0] = s[0];
      d[1] = s[1];
      d[2] = s[2];
      d[3] = c.mask.get(x, y) ? 255 : 0;
    }
  }
  return c;
}

}  // namespace scrapbook
