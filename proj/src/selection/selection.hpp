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

#ifndef SCRAPBOOK_SELECTION_SELECTION_HPP_
#define SCRAPBOOK_SELECTION_SELECTION_HPP_

#include <map>
#include <string>
#include <vector>

#include "core/manifest.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"

namespace scrapbook {

/// Side of the square bounding box of a shape on rung `i` of the size
/// ladder: 70 + 40*i pixels.
int size_for_index(int i);

// Classes available to COCO-mode selection: the bank's classes in
// alphabetical order and the cutouts available for each.
struct ClassDomain {
  std::vector<std::string> classes;
  std::map<std::string, std::vector<std::string>> bank_ids;
};

/// Builds the S object sets. Deterministic selection slides a window over
/// the canonical orderings one position per set; random selection draws
/// from a stream seeded by (seed, set index). `coco` is required in COCO
/// mode and ignored for shapes.
std::vector<ObjectSet> select_sets(const GenerationConfig& cfg, const ClassDomain* coco = nullptr);

struct Arrangement {
  std::string arrangement_id;
  ObjectSpec main;
  ObjectSpec reference;
  std::vector<ObjectSpec> remainder;

  // main, reference, remainder... in placement order.
  std::vector<ObjectSpec> ordered() const;
};

/// A arrangements of the set with pairwise-distinct (main, reference)
/// ordered pairs. Throws a usage Error when A > N*(N-1).
std::vector<Arrangement> enumerate_arrangements(const ObjectSet& set, int count, Rng& rng);

}  // namespace scrapbook

#endif  // SCRAPBOOK_SELECTION_SELECTION_HPP_
