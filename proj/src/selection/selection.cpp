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

#include "selection/selection.hpp"

#include "core/vocab.hpp"

namespace scrapbook {

namespace {

constexpr std::uint64_t kSelectStream = 0x5e1ec7;

std::vector<int> pick_indices(CharMode mode, bool sliding, int domain, int n, int set_index, Rng& rng) {
  std::vector<int> out(static_cast<std::size_t>(n));
  switch (mode) {
    case CharMode::unique:
      if (n > domain) {
        throw usage_error("unique mode needs N <= " + std::to_string(domain) + " (N=" + std::to_string(n) + ")");
      }
      if (sliding) {
        for (int i = 0; i < n; ++i) out[i] = (set_index + i) % domain;
      } else {
        const auto idx = rng.sample_indices(static_cast<std::size_t>(domain), static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) out[i] = static_cast<int>(idx[i]);
      }
      break;
    case CharMode::same: {
      const int v = sliding ? set_index % domain : static_cast<int>(rng.below(static_cast<std::uint64_t>(domain)));
      for (int i = 0; i < n; ++i) out[i] = v;
      break;
    }
    case CharMode::random:
      for (int i = 0; i < n; ++i) out[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(domain)));
      break;
  }
  return out;
}

}  // namespace

int size_for_index(int i) {
  if (i < 0) throw usage_error("size index must be non-negative");
  return 70 + 40 * i;
}

std::vector<ObjectSet> select_sets(const GenerationConfig& cfg, const ClassDomain* coco) {
  const bool sliding = cfg.selection_mode == SelectionMode::deterministic;
  const int n = cfg.objects_per_set;
  const bool shapes = cfg.object_mode == ObjectMode::shapes;
  if (!shapes && (coco == nullptr || coco->classes.empty())) {
    throw usage_error("coco mode needs a non-empty object bank");
  }
  const int class_domain = shapes ? kShapeCount : static_cast<int>(coco->classes.size());

  std::vector<ObjectSet> sets;
  for (int k = 0; k < cfg.sets; ++k) {
    Rng rng(derive_seed(cfg.seed, {kSelectStream, static_cast<std::uint64_t>(k)}));
    ObjectSet set{"s" + std::to_string(k), {}};
    const auto classes = pick_indices(cfg.class_char_mode, sliding, class_domain, n, k, rng);
    set.specs.resize(static_cast<std::size_t>(n));
    if (shapes) {
      const auto colors = pick_indices(cfg.color_char_mode, sliding, kColorCount, n, k, rng);
      const auto sizes = pick_indices(cfg.size_char_mode, sliding, cfg.size_levels, n, k, rng);
      for (int i = 0; i < n; ++i) {
        set.specs[i].object_class = std::string(to_string(static_cast<Shape>(classes[i])));
        set.specs[i].color = static_cast<Color>(colors[i]);
        set.specs[i].size_index = sizes[i];
      }
    } else {
      for (int i = 0; i < n; ++i) {
        const std::string& cls = coco->classes[static_cast<std::size_t>(classes[i])];
        const auto& ids = coco->bank_ids.at(cls);
        if (ids.empty()) throw usage_error("object bank has no cutout for class '" + cls + "'");
        const std::size_t pick = sliding ? static_cast<std::size_t>(k) % ids.size() : rng.below(ids.size());
        set.specs[i].object_class = cls;
        set.specs[i].bank_id = ids[pick];
      }
    }
    sets.push_back(std::move(set));
  }
  return sets;
}

std::vector<ObjectSpec> Arrangement::ordered() const {
  std::vector<ObjectSpec> out{main, reference};
  out.insert(out.end(), remainder.begin(), remainder.end());
  return out;
}

std::vector<Arrangement> enumerate_arrangements(const ObjectSet& set, int count, Rng& rng) {
  const std::size_t n = set.specs.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) pairs.emplace_back(i, j);
    }
  }
  if (count < 0 || static_cast<std::size_t>(count) > pairs.size()) {
    throw usage_error("A <= N*(N-1)=" + std::to_string(pairs.size()) + " (A=" + std::to_string(count) + ")");
  }
  std::vector<Arrangement> out;
  for (std::size_t pick : rng.sample_indices(pairs.size(), static_cast<std::size_t>(count))) {
    const auto [mi, ri] = pairs[pick];
    Arrangement a;
    a.arrangement_id = set.set_id + "-a" + std::to_string(out.size());
    a.main = set.specs[mi];
    a.reference = set.specs[ri];
    for (std::size_t i = 0; i < n; ++i) {
      if (i != mi && i != ri) a.remainder.push_back(set.specs[i]);
    }
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace scrapbook
