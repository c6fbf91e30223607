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

#ifndef SCRAPBOOK_BANK_COCO_HPP_
#define SCRAPBOOK_BANK_COCO_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "bank/shapes.hpp"
#include "selection/selection.hpp"

namespace scrapbook {

inline constexpr int kMinCutoutSide = 48;

struct BankEntry {
  std::string bank_id;  // "<image id>-<annotation id>"
  std::string object_class;
  std::string source_image_id;
  Rect original_bbox;  // tight mask box in the source image
  Cutout cutout;       // empty when loaded from an index without pixels
};

struct CocoBuildOptions {
  std::filesystem::path annotations;  // COCO instances JSON
  std::filesystem::path images_dir;
  // Classes to extract. Empty means every curated class; an explicitly
  // requested class that yields no instance is an error.
  std::vector<std::string> classes;
  int jobs = 1;
};

/// Extracts every non-crowd instance of a curated class whose tight mask
/// box is at least 48 px on both sides and keeps more than one pixel away
/// from the source border. Entries come back sorted by bank id.
std::vector<BankEntry> build_coco_bank(const CocoBuildOptions& opts);

// Decoders for the three COCO segmentation encodings, producing an image
// sized mask.
Mask decode_polygons(const std::vector<std::vector<double>>& polys, int width, int height);
Mask decode_rle(const std::vector<std::uint32_t>& counts, int width, int height);
std::vector<std::uint32_t> rle_counts_from_string(const std::string& s);

// Bank cache: cutouts/<id>.png (RGBA), masks/<id>.png (1-bit), bank_index.json.
void write_bank(const std::filesystem::path& dir, const std::vector<BankEntry>& entries);

class ObjectBank {
 public:
  static ObjectBank load(const std::filesystem::path& dir);

  const std::vector<BankEntry>& entries() const { return entries_; }
  ClassDomain class_domain() const;
  // Reads the cutout of an entry from disk. Throws for unknown ids.
  Cutout cutout(const std::string& bank_id) const;
  const BankEntry& entry(const std::string& bank_id) const;

 private:
  std::filesystem::path dir_;
  std::vector<BankEntry> entries_;
  std::map<std::string, std::size_t> by_id_;
};

}  // namespace scrapbook

#endif  // SCRAPBOOK_BANK_COCO_HPP_
