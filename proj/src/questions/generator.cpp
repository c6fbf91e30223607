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

#include "questions/generator.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <set>
#include <tuple>

#include "composer/composer.hpp"
#include "core/rng.hpp"
#include "core/vocab.hpp"
#include "levels/levels.hpp"
#include "questions/answer.hpp"

namespace scrapbook {

namespace {

constexpr std::uint64_t kQuestionStream = 0x9e57;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct Desc {
  std::optional<Color> color;
  std::optional<std::string> object;

  std::vector<std::string> tags() const {
    std::vector<std::string> t;
    if (color) t.push_back(color_tag(*color));
    if (object) t.push_back(object_tag(*object));
    return t;
  }
  std::string phrase() const {
    if (color && object) return std::string(to_string(*color)) + " " + *object;
    if (object) return *object;
    if (color) return std::string(to_string(*color)) + " object";
    return "object";
  }
  std::string plural_phrase() const {
    if (color && object) return std::string(to_string(*color)) + " " + plural(*object);
    if (object) return plural(*object);
    if (color) return std::string(to_string(*color)) + " objects";
    return "objects";
  }
  friend auto operator<=>(const Desc&, const Desc&) = default;
};

std::vector<Desc> descriptors(const ObjectSpec& s, bool shapes) {
  if (!shapes) return {Desc{std::nullopt, s.object_class}};
  return {Desc{s.color, std::nullopt}, Desc{std::nullopt, s.object_class}, Desc{s.color, s.object_class}};
}

std::vector<Desc> single_descriptors(const ObjectSpec& s, bool shapes) {
  if (!shapes) return {Desc{std::nullopt, s.object_class}};
  return {Desc{s.color, std::nullopt}, Desc{std::nullopt, s.object_class}};
}

struct Intent {
  QType qtype;
  Group group;
  int subgroup;
  std::string kind;
  Desc subject;
  std::optional<AbsolutePosition> abs;
  std::optional<RelativePosition> rel;
  std::optional<Desc> ref;
  std::optional<Desc> claim;
  std::string_view ask;

  std::vector<std::string> concepts() const {
    std::vector<std::string> c = subject.tags();
    if (claim) {
      for (auto& t : claim->tags()) c.push_back(t);
    }
    if (abs) c.push_back(abs_tag(*abs));
    if (rel) c.push_back(rel_tag(*rel));
    if (ref) {
      for (auto& t : ref->tags()) c.push_back(ref_tag(t));
    }
    if (!ask.empty()) c.emplace_back(ask);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  }
};

void check_coherence(const Intent& in, const AnswerKey& key, const std::string& where) {
  bool ok = false;
  using K = AnswerKey::Kind;
  if (in.qtype == QType::recognition) {
    ok = in.subgroup == 1 && key.kind == K::text;
  } else if (in.subgroup == 4) {
    ok = in.group == Group::relative_position && key.is_unk();
  } else if (in.qtype == QType::counting) {
    ok = key.kind == K::number && (in.subgroup == 1 ? *key.number >= 1 : *key.number == 0);
  } else {
    ok = key.kind == (in.subgroup == 1 ? K::yes : K::no);
  }
  if (!ok) {
    throw internal_error("answer key " + canonical_answer(key) + " contradicts " + std::string(to_string(in.qtype)) +
                         " " + std::string(to_string(in.group)) + " subgroup " + std::to_string(in.subgroup) +
                         " at " + where);
  }
}

class Inventory {
 public:
  Inventory(const SceneImage& img, const std::vector<ObjectSpec>& arrangement, const GenerationConfig& cfg)
      : img_(img), cfg_(cfg), shapes_(cfg.object_mode == ObjectMode::shapes) {
    view_ = scene_view(img, cfg.canvas_width, cfg.canvas_height);
    for (const auto& o : view_.objects) {
      regions_.push_back(region_at(o.bbox.x + o.bbox.w / 2.0, o.bbox.y + o.bbox.h / 2.0, cfg.canvas_width,
                                   cfg.canvas_height));
    }
    std::vector<ObjectSpec> placed;
    for (const auto& o : view_.objects) placed.push_back(o.spec);
    for (const auto& a : arrangement) {
      auto it = std::find(placed.begin(), placed.end(), a);
      if (it != placed.end()) {
        placed.erase(it);
      } else {
        absent_.push_back(a);
      }
    }
  }

  std::vector<Intent> build() {
    positive_ = unique_descs_of_scene();
    negative_ = negative_descs();
    for (const auto& a : absent_) {
      for (const auto& s : single_descriptors(a, shapes_)) {
        if (count(s) == 0) add_unique(absent_singles_, s);
      }
    }
    std::set<AbsolutePosition> rs(regions_.begin(), regions_.end());
    rs.insert(img_.abs_pos_pair.first);
    rs.insert(img_.abs_pos_pair.second);
    region_pool_.assign(rs.begin(), rs.end());

    no_position();
    absolute();
    if (view_.objects.size() >= 2) relative();
    return std::move(intents_);
  }

  const SceneView& view() const { return view_; }

 private:
  int count(const Desc& d, std::optional<AbsolutePosition> abs = std::nullopt,
            std::optional<RelativePosition> rel = std::nullopt, std::optional<Desc> ref = std::nullopt) const {
    Intent probe{QType::counting, Group::no_position, 1, "", d, abs, rel, ref, std::nullopt, {}};
    const AnswerKey k = answer_key(view_, QType::counting, probe.concepts());
    return k.is_unk() ? -1 : *k.number;
  }

  static void add_unique(std::vector<Desc>& v, const Desc& d) {
    if (std::find(v.begin(), v.end(), d) == v.end()) v.push_back(d);
  }

  std::vector<Desc> unique_descs_of_scene() const {
    std::vector<Desc> out;
    for (const auto& o : view_.objects) {
      for (const auto& d : descriptors(o.spec, shapes_)) add_unique(out, d);
    }
    return out;
  }

  // Descriptors of absent arrangement objects and mismatched color/shape
  // combinations, all matching nothing in the scene.
  std::vector<Desc> negative_descs() const {
    std::vector<Desc> out;
    for (const auto& a : absent_) {
      for (const auto& d : descriptors(a, shapes_)) {
        if (count(d) == 0) add_unique(out, d);
      }
    }
    if (shapes_) {
      for (const auto& a : view_.objects) {
        for (const auto& b : view_.objects) {
          const Desc d{a.spec.color, b.spec.object_class};
          if (count(d) == 0) add_unique(out, d);
        }
      }
    }
    return out;
  }

  void add(Intent in) {
    auto key = std::make_tuple(in.qtype, in.group, in.subgroup, in.concepts());
    if (seen_.insert(std::move(key)).second) intents_.push_back(std::move(in));
  }

  void add_pc(Group g, int sub, const Desc& d, std::optional<AbsolutePosition> abs = std::nullopt,
              std::optional<RelativePosition> rel = std::nullopt, std::optional<Desc> ref = std::nullopt) {
    add({QType::presence, g, sub, "plain", d, abs, rel, ref, std::nullopt, {}});
    add({QType::counting, g, sub, "plain", d, abs, rel, ref, std::nullopt, {}});
  }

  // Values of the attribute that `claim_color` selects, taken from the
  // scene objects other than `skip` and from the absent objects.
  std::vector<Desc> other_values(bool claim_color, std::optional<std::size_t> skip, bool from_scene) const {
    std::vector<Desc> out;
    auto value_of = [&](const ObjectSpec& s) {
      return claim_color ? Desc{s.color, std::nullopt} : Desc{std::nullopt, s.object_class};
    };
    if (from_scene) {
      for (std::size_t i = 0; i < view_.objects.size(); ++i) {
        if (skip && i == *skip) continue;
        add_unique(out, value_of(view_.objects[i].spec));
      }
      if (skip) std::erase(out, value_of(view_.objects[*skip].spec));
    } else {
      for (const auto& a : absent_) {
        const Desc v = value_of(a);
        if (count(v) == 0) add_unique(out, v);
      }
    }
    return out;
  }

  // Claim questions about the single object `o` picked out by subject +
  // position: _1 its own value, _2 values elsewhere in the scene, _3 values
  // only among absent objects.
  void attribute_claims(Group g, std::size_t o, std::optional<AbsolutePosition> abs,
                        std::optional<RelativePosition> rel, std::optional<Desc> ref) {
    const ObjectSpec& spec = view_.objects[o].spec;
    std::vector<bool> attrs = shapes_ ? std::vector<bool>{true, false} : std::vector<bool>{false};
    for (bool claim_color : attrs) {
      const Desc truth = claim_color ? Desc{spec.color, std::nullopt} : Desc{std::nullopt, spec.object_class};
      const std::string kind = "attribute";
      add({QType::confirmation, g, 1, kind, Desc{}, abs, rel, ref, truth, {}});
      for (const auto& v : other_values(claim_color, o, true)) {
        add({QType::confirmation, g, 2, kind, Desc{}, abs, rel, ref, v, {}});
      }
      for (const auto& v : other_values(claim_color, std::nullopt, false)) {
        add({QType::confirmation, g, 3, kind, Desc{}, abs, rel, ref, v, {}});
      }
    }
    if (shapes_) {
      add({QType::recognition, g, 1, "color", Desc{}, abs, rel, ref, std::nullopt, kAskColor});
      add({QType::recognition, g, 1, "shape", Desc{}, abs, rel, ref, std::nullopt, kAskObject});
    } else {
      add({QType::recognition, g, 1, "class", Desc{}, abs, rel, ref, std::nullopt, kAskObject});
    }
  }

  void no_position() {
    for (const auto& d : positive_) add_pc(Group::no_position, 1, d);
    for (const auto& d : negative_) add_pc(Group::no_position, 2, d);
    if (!shapes_) return;
    for (std::size_t i = 0; i < view_.objects.size(); ++i) {
      const ObjectSpec& o = view_.objects[i].spec;
      for (const auto& s : single_descriptors(o, true)) {
        if (count(s) != 1) continue;
        const bool claim_color = s.object.has_value();
        const Desc truth = claim_color ? Desc{o.color, std::nullopt} : Desc{std::nullopt, o.object_class};
        add({QType::confirmation, Group::no_position, 1, "attribute", s, {}, {}, {}, truth, {}});
        std::vector<Desc> wrong = other_values(claim_color, i, true);
        for (const auto& v : other_values(claim_color, std::nullopt, false)) add_unique(wrong, v);
        for (const auto& v : wrong) {
          add({QType::confirmation, Group::no_position, 2, "attribute", s, {}, {}, {}, v, {}});
        }
        add({QType::recognition, Group::no_position, 1, claim_color ? "color" : "shape", s, {}, {}, {}, std::nullopt,
             claim_color ? kAskColor : kAskObject});
      }
    }
  }

  void absolute() {
    const Group g = Group::absolute_position;
    for (std::size_t i = 0; i < view_.objects.size(); ++i) {
      for (const auto& d : descriptors(view_.objects[i].spec, shapes_)) add_pc(g, 1, d, regions_[i]);
    }
    for (const auto& d : positive_) {
      for (auto r : region_pool_) {
        if (count(d, r) == 0) add_pc(g, 2, d, r);
      }
    }
    for (const auto& d : negative_) {
      for (auto r : region_pool_) {
        add_pc(g, 3, d, r);
        add({QType::confirmation, g, 3, "position", d, r, {}, {}, std::nullopt, {}});
      }
    }
    for (std::size_t i = 0; i < view_.objects.size(); ++i) {
      for (const auto& d : descriptors(view_.objects[i].spec, shapes_)) {
        if (count(d) != 1) continue;
        add({QType::confirmation, g, 1, "position", d, regions_[i], {}, {}, std::nullopt, {}});
        for (auto r : region_pool_) {
          if (r != regions_[i]) add({QType::confirmation, g, 2, "position", d, r, {}, {}, std::nullopt, {}});
        }
        add({QType::recognition, g, 1, "abs", d, {}, {}, {}, std::nullopt, kAskAbs});
      }
    }
    for (auto r : region_pool_) {
      const auto n = std::count(regions_.begin(), regions_.end(), r);
      if (n != 1) continue;
      const auto o = static_cast<std::size_t>(std::find(regions_.begin(), regions_.end(), r) - regions_.begin());
      attribute_claims(g, o, r, std::nullopt, std::nullopt);
    }
  }

  void relative() {
    const Group g = Group::relative_position;
    const std::size_t n = view_.objects.size();
    for (std::size_t q = 0; q < n; ++q) {
      for (const auto& ref : single_descriptors(view_.objects[q].spec, shapes_)) {
        if (count(ref) != 1) continue;
        std::vector<std::optional<RelativePosition>> dir(n);
        std::set<RelativePosition> present, wrong{img_.rel_pos};
        for (std::size_t o = 0; o < n; ++o) {
          if (o == q) continue;
          dir[o] = try_classify_relative(view_.objects[o].bbox, view_.objects[q].bbox);
          if (dir[o]) {
            present.insert(*dir[o]);
            wrong.insert(*dir[o]);
            wrong.insert(opposite(*dir[o]));
          }
        }
        std::vector<Desc> others;
        for (std::size_t o = 0; o < n; ++o) {
          if (o == q || !dir[o]) continue;
          for (const auto& d : descriptors(view_.objects[o].spec, shapes_)) {
            add_unique(others, d);
            add_pc(g, 1, d, std::nullopt, dir[o], ref);
            if (count(d) == 1) {
              add({QType::confirmation, g, 1, "position", d, {}, dir[o], ref, std::nullopt, {}});
              for (auto w : wrong) {
                if (w != *dir[o]) add({QType::confirmation, g, 2, "position", d, {}, w, ref, std::nullopt, {}});
              }
              add({QType::recognition, g, 1, "rel", d, {}, {}, ref, std::nullopt, kAskRel});
            }
          }
        }
        for (const auto& d : others) {
          for (auto w : wrong) {
            if (count(d, std::nullopt, w, ref) == 0) add_pc(g, 2, d, std::nullopt, w, ref);
          }
        }
        for (const auto& d : negative_) {
          for (auto w : present) {
            add_pc(g, 3, d, std::nullopt, w, ref);
            add({QType::confirmation, g, 3, "position", d, {}, w, ref, std::nullopt, {}});
          }
        }
        for (auto w : present) {
          std::optional<std::size_t> only;
          int hits = 0;
          for (std::size_t o = 0; o < n; ++o) {
            if (dir[o] == w) {
              only = o;
              ++hits;
            }
          }
          if (hits == 1) attribute_claims(g, *only, std::nullopt, w, ref);
        }
      }
    }
    // Reference absent from the scene: incoherent, keyed <unk>.
    const std::size_t main = img_.main_index.value_or(0);
    for (const auto& ref : absent_singles_) {
      for (const auto& d : descriptors(view_.objects[main].spec, shapes_)) {
        add_pc(g, 4, d, std::nullopt, img_.rel_pos, ref);
        if (count(d) == 1) add({QType::confirmation, g, 4, "position", d, {}, img_.rel_pos, ref, std::nullopt, {}});
      }
    }
  }

  const SceneImage& img_;
  const GenerationConfig& cfg_;
  bool shapes_;
  SceneView view_;
  std::vector<AbsolutePosition> regions_;
  std::vector<ObjectSpec> absent_;
  std::vector<Desc> positive_, negative_, absent_singles_;
  std::vector<AbsolutePosition> region_pool_;
  std::vector<Intent> intents_;
  std::set<std::tuple<QType, Group, int, std::vector<std::string>>> seen_;
};

Bindings bindings_for(const Intent& in) {
  Bindings b;
  b.values["obj"] = in.subject.phrase();
  b.values["objs"] = in.subject.plural_phrase();
  b.values["subj"] = in.subject.phrase();
  if (in.ref) b.values["ref"] = in.ref->phrase();
  if (in.abs) b.values["abs"] = answer_text(*in.abs);
  if (in.rel) b.aliases["rel_pos"] = "rel_pos:" + std::string(to_string(*in.rel));
  if (in.claim) {
    const bool color = in.claim->color.has_value();
    b.aliases["claim"] = color ? "claim_color" : "claim_object";
    b.values["value"] = color ? std::string(to_string(*in.claim->color)) : *in.claim->object;
  }
  return b;
}

std::string join_alternatives(const std::vector<std::string>& alts) {
  std::string out;
  for (std::size_t i = 0; i < alts.size(); ++i) {
    if (i > 0) out += alts.size() == 2 ? " " : ", ";
    if (i + 1 == alts.size() && alts.size() > 1) out += "or ";
    out += alts[i];
  }
  return out;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

AnswerDomain answer_domain(QType qtype, const std::vector<std::string>& concepts, ObjectMode mode) {
  switch (qtype) {
    case QType::presence:
    case QType::confirmation: return AnswerDomain::yes_no;
    case QType::counting: return AnswerDomain::count;
    case QType::recognition: break;
  }
  for (const auto& t : concepts) {
    if (t == kAskColor) return AnswerDomain::color;
    if (t == kAskObject) return mode == ObjectMode::shapes ? AnswerDomain::shape : AnswerDomain::object_class;
    if (t == kAskAbs) return AnswerDomain::abs_position;
    if (t == kAskRel) return AnswerDomain::rel_position;
  }
  throw internal_error("recognition question without an ask: concept");
}

std::vector<std::string> enumerated_alternatives(AnswerDomain domain, int max_count) {
  std::vector<std::string> alts;
  if (domain == AnswerDomain::count) {
    for (int i = 0; i <= max_count; ++i) alts.push_back(std::to_string(i));
  } else {
    alts = domain_phrases(domain);
  }
  alts.push_back(vocabulary().not_applicable);
  return alts;
}

std::vector<QuestionRecord> apply_forms(const QuestionRecord& base, int max_count,
                                        const TemplateLibrary& lib) {
  std::vector<QuestionRecord> out;
  for (Form f : kAllForms) {
    QuestionRecord q = base;
    q.form = f;
    switch (f) {
      case Form::original: break;
      case Form::condition: q.text += " " + lib.condition.at(base.domain); break;
      case Form::direction: q.text += " " + lib.direction; break;
      case Form::enumerated: {
        std::string add = lib.enumerated;
        const auto at = add.find("{alternatives}");
        add.replace(at, 14, join_alternatives(enumerated_alternatives(base.domain, max_count)));
        q.text += " " + add;
        break;
      }
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<QuestionRecord> generate_for_image(const SceneImage& scene,
                                               const std::vector<ObjectSpec>& arrangement_objects,
                                               const GenerationConfig& cfg, const TemplateLibrary& lib) {
  Inventory inv(scene, arrangement_objects, cfg);
  const auto intents = inv.build();
  const int max_count = static_cast<int>(scene.placements.size());
  const std::uint64_t image_hash = fnv1a(scene.image_id);

  std::vector<QuestionRecord> out;
  for (const Intent& in : intents) {
    const auto concepts = in.concepts();
    std::string param = std::string(to_string(in.qtype)) + "|" + std::string(to_string(in.group)) + "|" +
                        std::to_string(in.subgroup);
    for (const auto& c : concepts) param += "|" + c;
    const AnswerKey key = answer_key(inv.view(), in.qtype, concepts);
    check_coherence(in, key, scene.image_id + " [" + param + "]");

    const auto templates = lib.find(in.qtype, in.group, in.kind);
    if (templates.empty()) {
      throw internal_error("no template for " + std::string(to_string(in.qtype)) + "/" +
                           std::string(to_string(in.group)) + "/" + in.kind);
    }
    Rng rng(derive_seed(cfg.seed, {kQuestionStream, image_hash, fnv1a(param)}));
    const auto paraphrases = expand_template(templates, bindings_for(in), lib.dictionary, rng, cfg.questions_per_type);

    QuestionRecord base;
    base.image_id = scene.image_id;
    base.qtype = in.qtype;
    base.group = in.group;
    base.subgroup = in.subgroup;
    base.concepts = concepts;
    base.level = classify_level(in.qtype, in.group, concepts);
    base.expected = key;
    base.domain = answer_domain(in.qtype, concepts, cfg.object_mode);
    base.parameter_set_id = scene.image_id + ":" + hex16(fnv1a(param));
    for (std::size_t p = 0; p < paraphrases.size(); ++p) {
      base.question_id = base.parameter_set_id + ":" + std::to_string(p);
      base.template_id = paraphrases[p].template_id;
      base.text = paraphrases[p].text;
      for (auto& q : apply_forms(base, max_count, lib)) out.push_back(std::move(q));
    }
  }
  return out;
}

}  // namespace scrapbook
