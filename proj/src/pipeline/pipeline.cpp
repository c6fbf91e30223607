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

#include "pipeline/pipeline.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <set>

#include "bank/background.hpp"
#include "bank/coco.hpp"
#include "composer/composer.hpp"
#include "core/config.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "core/vocab.hpp"
#include "levels/levels.hpp"
#include "questions/generator.hpp"
#include "selection/selection.hpp"

namespace scrapbook {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uint64_t kBackgroundStream = 0xb6;
constexpr std::uint64_t kArrangementStream = 0xa7;
constexpr std::uint64_t kPairStream = 0x9a;
constexpr std::uint64_t kUnitStream = 0x71;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

struct Unit {
  std::string id;
  int set, background, arrangement, pair;
  RelativePosition rel;
  std::pair<AbsolutePosition, AbsolutePosition> regions;
  std::string background_id;
  const Arrangement* arr;
  std::uint64_t seed;
};

struct Built {
  Dataset dataset;
  std::vector<std::vector<ObjectSpec>> arrangement_of_image;
};

void require_valid(const GenerationConfig& cfg) {
  const auto problems = validate_config(cfg);
  if (problems.empty()) return;
  std::string msg = "invalid config:";
  for (const auto& p : problems) msg += "\n  " + p;
  throw usage_error(msg);
}

Built build(const GenerationConfig& cfg, const GenerateOptions& opts, RunLog& log,
            std::unique_ptr<ObjectBank>& bank) {
  require_valid(cfg);
  log.seed = cfg.seed;
  const auto t0 = Clock::now();

  std::optional<ClassDomain> domain;
  if (cfg.object_mode == ObjectMode::coco) {
    bank = std::make_unique<ObjectBank>(ObjectBank::load(cfg.bank_dir));
    domain = bank->class_domain();
  }
  std::vector<std::string> photos;
  if (cfg.background_mode == BackgroundMode::photo) photos = eligible_photos(cfg.background_dir);

  Built out;
  Manifest& m = out.dataset.manifest;
  m.config = cfg;
  m.sets = select_sets(cfg, domain ? &*domain : nullptr);

  std::vector<std::vector<Arrangement>> arrangements;
  std::vector<std::string> background_ids;
  std::vector<Unit> units;
  for (int k = 0; k < cfg.sets; ++k) {
    const ObjectSet& set = m.sets[k];
    std::set<Color> colors;
    for (const auto& s : set.specs) {
      if (s.color) colors.insert(*s.color);
    }
    for (int b = 0; b < cfg.backgrounds; ++b) {
      const auto ku = static_cast<std::uint64_t>(k), bu = static_cast<std::uint64_t>(b);
      Rng bg_rng(derive_seed(cfg.seed, {kBackgroundStream, ku, bu}));
      background_ids.push_back(pick_background(cfg, colors, k, b, photos, bg_rng));
      Rng arr_rng(derive_seed(cfg.seed, {kArrangementStream, ku, bu}));
      auto arrs = enumerate_arrangements(set, cfg.arrangements, arr_rng);
      for (std::size_t a = 0; a < arrs.size(); ++a) {
        arrs[a].arrangement_id = set.set_id + "-b" + std::to_string(b) + "-a" + std::to_string(a);
        m.arrangements.push_back({arrs[a].arrangement_id, set.set_id, arrs[a].ordered()});
      }
      arrangements.push_back(std::move(arrs));
    }
  }
  std::size_t slot = 0;
  for (int k = 0; k < cfg.sets; ++k) {
    for (int b = 0; b < cfg.backgrounds; ++b, ++slot) {
      const auto& arrs = arrangements[slot];
      const std::string& background_id = background_ids[slot];
      for (std::size_t a = 0; a < arrs.size(); ++a) {
        Rng pair_rng(derive_seed(cfg.seed, {kPairStream, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(b),
                                            static_cast<std::uint64_t>(a)}));
        const auto picks = pair_rng.sample_indices(kAbsolutePositionCount * kAbsolutePositionCount,
                                                   static_cast<std::size_t>(cfg.region_pairs));
        for (std::size_t p = 0; p < picks.size(); ++p) {
          const std::pair<AbsolutePosition, AbsolutePosition> regions{
              static_cast<AbsolutePosition>(picks[p] / kAbsolutePositionCount),
              static_cast<AbsolutePosition>(picks[p] % kAbsolutePositionCount)};
          for (RelativePosition r : all_values<RelativePosition>()) {
            Unit u;
            u.id = arrs[a].arrangement_id + "-p" + std::to_string(p) + "-" + std::string(to_string(r));
            u.set = k;
            u.background = b;
            u.arrangement = static_cast<int>(a);
            u.pair = static_cast<int>(p);
            u.rel = r;
            u.regions = regions;
            u.background_id = background_id;
            u.arr = &arrs[a];
            u.seed = derive_seed(cfg.seed, {kUnitStream, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(b),
                                            static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(p),
                                            static_cast<std::uint64_t>(r)});
            units.push_back(std::move(u));
          }
        }
      }
    }
  }

  const ComposeParams params{cfg.canvas_width, cfg.canvas_height, cfg.max_attempts};
  CutoutProvider cutouts(bank.get());
  std::vector<ChainOutcome> chains(units.size());
  parallel_for(units.size(), opts.jobs, [&](std::size_t i) {
    const Unit& u = units[i];
    Rng rng(u.seed);
    chains[i] = compose_chain(*u.arr, u.background_id, u.regions, u.rel, cfg.objects_per_image, params, cutouts, rng,
                              u.id);
  });
  log.attempted_units = static_cast<std::int64_t>(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (chains[i].images.empty()) {
      ++log.skipped_units;
      log.skipped.push_back(units[i].id);
      continue;
    }
    ++log.generated_units;
    log.dropped_distractors += chains[i].dropped;
    for (auto& img : chains[i].images) {
      m.images.push_back(std::move(img));
      out.arrangement_of_image.push_back(units[i].arr->ordered());
    }
  }
  log.images = static_cast<std::int64_t>(m.images.size());
  log.compose_ms = ms_since(t0);

  const auto t1 = Clock::now();
  std::vector<std::vector<QuestionRecord>> per_image(m.images.size());
  parallel_for(m.images.size(), opts.jobs, [&](std::size_t i) {
    per_image[i] = generate_for_image(m.images[i], out.arrangement_of_image[i], cfg);
  });
  auto& qs = out.dataset.questions;
  for (auto& v : per_image) {
    for (auto& q : v) qs.push_back(std::move(q));
  }
  sort_questions(qs);
  log.questions = static_cast<std::int64_t>(qs.size());
  log.questions_ms = ms_since(t1);
  return out;
}

}  // namespace

json RunLog::to_json() const {
  return {{"seed", seed},
          {"units", {{"attempted", attempted_units}, {"generated", generated_units}, {"skipped_infeasible", skipped_units}}},
          {"dropped_distractors", dropped_distractors},
          {"images", images},
          {"questions", questions},
          {"skipped", skipped},
          {"timings_ms", {{"compose", compose_ms}, {"questions", questions_ms}, {"write", write_ms}}}};
}

Dataset build_dataset(const GenerationConfig& cfg, const GenerateOptions& opts, RunLog* log) {
  RunLog local;
  std::unique_ptr<ObjectBank> bank;
  Built b = build(cfg, opts, log ? *log : local, bank);
  return std::move(b.dataset);
}

RunLog generate_dataset(const GenerationConfig& cfg, const fs::path& out_dir, const GenerateOptions& opts) {
  RunLog log;
  std::unique_ptr<ObjectBank> bank;
  Built built = build(cfg, opts, log, bank);
  const auto t0 = Clock::now();

  std::error_code ec;
  for (const char* sub : {"images", "masks", "questions"}) {
    fs::remove_all(out_dir / sub, ec);
    fs::create_directories(out_dir / sub, ec);
    if (ec) throw io_error("cannot create " + (out_dir / sub).string() + ": " + ec.message());
  }

  const auto& images = built.dataset.manifest.images;
  CutoutProvider cutouts(bank.get());
  BackgroundCache backgrounds(cfg.background_dir, cfg.canvas_width, cfg.canvas_height);
  parallel_for(images.size(), opts.jobs, [&](std::size_t i) {
    const SceneImage& img = images[i];
    write_png(out_dir / "images" / (img.image_id + ".png"), render(img, backgrounds.get(img.background_id), cutouts));
    // Each mask is written once, by the image that introduces the object.
    const auto& last = img.placements.back();
    const auto cut = cutouts.get(last.object);
    write_mask_png(out_dir / last.mask_ref, placement_mask(last, *cut, cfg.canvas_width, cfg.canvas_height));
  });

  write_question_files(out_dir, built.dataset.questions);
  write_text_file(out_dir / "manifest.json", canonical_manifest(built.dataset));
  write_text_file(out_dir / "enablement.json",
                  enablement_to_json(coverage_enablement(built.dataset.questions)).dump(2) + "\n");
  log.write_ms = ms_since(t0);
  write_text_file(out_dir / "runlog.json", log.to_json().dump(2) + "\n");
  return log;
}

}  // namespace scrapbook
