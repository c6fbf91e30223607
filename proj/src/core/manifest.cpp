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

#include "core/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "core/config.hpp"
#include "core/vocab.hpp"

namespace scrapbook {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <class E>
E enum_field(const json& j, const char* key) {
  return parse<E>(j.at(key).get<std::string>());
}

}  // namespace

json to_json(const ObjectSpec& s) {
  json j = {{"class", s.object_class}};
  if (s.color) j["color"] = to_string(*s.color);
  if (s.size_index) j["size_index"] = *s.size_index;
  if (s.bank_id) j["bank_id"] = *s.bank_id;
  return j;
}

ObjectSpec object_spec_from_json(const json& j) {
  ObjectSpec s;
  s.object_class = j.at("class").get<std::string>();
  if (j.contains("color")) s.color = enum_field<Color>(j, "color");
  if (j.contains("size_index")) s.size_index = j.at("size_index").get<int>();
  if (j.contains("bank_id")) s.bank_id = j.at("bank_id").get<std::string>();
  return s;
}

json to_json(const Rect& r) { return json::array({r.x, r.y, r.w, r.h}); }

Rect rect_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw io_error("bbox must be [x, y, w, h]");
  return Rect{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
}

json to_json(const SceneImage& img) {
  json placements = json::array();
  for (const auto& p : img.placements) {
    placements.push_back({{"object", to_json(p.object)}, {"bbox", to_json(p.bbox)}, {"mask", p.mask_ref}});
  }
  json j = {
      {"image_id", img.image_id},
      {"parent_id", img.parent_id ? json(*img.parent_id) : json(nullptr)},
      {"background_id", img.background_id},
      {"arrangement_id", img.arrangement_id},
      {"placements", std::move(placements)},
      {"main_index", img.main_index ? json(*img.main_index) : json(nullptr)},
      {"reference_index", img.reference_index ? json(*img.reference_index) : json(nullptr)},
      {"abs_pos_pair", {to_string(img.abs_pos_pair.first), to_string(img.abs_pos_pair.second)}},
      {"rel_pos", to_string(img.rel_pos)},
  };
  return j;
}

SceneImage scene_from_json(const json& j) {
  SceneImage img;
  img.image_id = j.at("image_id").get<std::string>();
  if (!j.at("parent_id").is_null()) img.parent_id = j.at("parent_id").get<std::string>();
  img.background_id = j.at("background_id").get<std::string>();
  img.arrangement_id = j.at("arrangement_id").get<std::string>();
  for (const auto& p : j.at("placements")) {
    img.placements.push_back(Placement{object_spec_from_json(p.at("object")), rect_from_json(p.at("bbox")),
                                       p.at("mask").get<std::string>()});
  }
  if (!j.at("main_index").is_null()) img.main_index = j.at("main_index").get<int>();
  if (!j.at("reference_index").is_null()) img.reference_index = j.at("reference_index").get<int>();
  const auto& pair = j.at("abs_pos_pair");
  img.abs_pos_pair = {parse<AbsolutePosition>(pair.at(0).get<std::string>()),
                      parse<AbsolutePosition>(pair.at(1).get<std::string>())};
  img.rel_pos = enum_field<RelativePosition>(j, "rel_pos");
  return img;
}

json to_json(const AnswerKey& k) {
  json j = {{"kind", to_string(k.kind)}, {"answer", canonical_answer(k)}};
  if (k.number) j["number"] = *k.number;
  if (k.text) j["text"] = *k.text;
  return j;
}

AnswerKey answer_key_from_json(const json& j) {
  AnswerKey k;
  k.kind = enum_field<AnswerKey::Kind>(j, "kind");
  if (j.contains("number")) k.number = j.at("number").get<int>();
  if (j.contains("text")) k.text = j.at("text").get<std::string>();
  if (k.kind == AnswerKey::Kind::number && (!k.number || *k.number < 0)) {
    throw io_error("number answer key needs a non-negative number");
  }
  if (k.kind == AnswerKey::Kind::text && !k.text) throw io_error("text answer key needs text");
  return k;
}

json to_json(const QuestionRecord& q) {
  return {
      {"question_id", q.question_id},
      {"image_id", q.image_id},
      {"qtype", to_string(q.qtype)},
      {"group", to_string(q.group)},
      {"subgroup", q.subgroup},
      {"form", to_string(q.form)},
      {"text", q.text},
      {"concepts", q.concepts},
      {"level", q.level},
      {"expected", to_json(q.expected)},
      {"domain", to_string(q.domain)},
      {"template_id", q.template_id},
      {"parameter_set_id", q.parameter_set_id},
  };
}

QuestionRecord question_from_json(const json& j) {
  QuestionRecord q;
  q.question_id = j.at("question_id").get<std::string>();
  q.image_id = j.at("image_id").get<std::string>();
  q.qtype = enum_field<QType>(j, "qtype");
  q.group = enum_field<Group>(j, "group");
  q.subgroup = j.at("subgroup").get<int>();
  q.form = enum_field<Form>(j, "form");
  q.text = j.at("text").get<std::string>();
  q.concepts = j.at("concepts").get<std::vector<std::string>>();
  q.level = j.at("level").get<int>();
  q.expected = answer_key_from_json(j.at("expected"));
  q.domain = enum_field<AnswerDomain>(j, "domain");
  q.template_id = j.at("template_id").get<std::string>();
  q.parameter_set_id = j.at("parameter_set_id").get<std::string>();
  return q;
}

json to_json(const ResponseRecord& r) {
  return {{"question_id", r.question_id}, {"form", to_string(r.form)}, {"raw_text", r.raw_text}};
}

ResponseRecord response_from_json(const json& j) {
  if (!j.is_object()) throw io_error("response record must be an object");
  ResponseRecord r;
  r.question_id = j.at("question_id").get<std::string>();
  r.form = parse<Form>(j.at("form").get<std::string>());
  r.raw_text = j.at("raw_text").get<std::string>();
  return r;
}

json manifest_to_json(const Manifest& m) {
  json sets = json::array();
  for (const auto& s : m.sets) {
    json specs = json::array();
    for (const auto& spec : s.specs) specs.push_back(to_json(spec));
    sets.push_back({{"set_id", s.set_id}, {"objects", std::move(specs)}});
  }
  json arrangements = json::array();
  for (const auto& a : m.arrangements) {
    json objs = json::array();
    for (const auto& spec : a.objects) objs.push_back(to_json(spec));
    arrangements.push_back({{"arrangement_id", a.arrangement_id}, {"set_id", a.set_id}, {"objects", std::move(objs)}});
  }
  json images = json::array();
  for (const auto& img : m.images) images.push_back(to_json(img));
  return {
      {"format_version", m.format_version},
      {"config", config_to_json(m.config)},
      {"seed", m.config.seed},
      {"sets", std::move(sets)},
      {"arrangements", std::move(arrangements)},
      {"images", std::move(images)},
      {"question_files", m.question_files},
  };
}

Manifest manifest_from_json(const json& j) {
  Manifest m;
  m.format_version = j.at("format_version").get<std::string>();
  m.config = config_from_json(j.at("config"));
  for (const auto& s : j.at("sets")) {
    ObjectSet set{s.at("set_id").get<std::string>(), {}};
    for (const auto& spec : s.at("objects")) set.specs.push_back(object_spec_from_json(spec));
    m.sets.push_back(std::move(set));
  }
  for (const auto& a : j.at("arrangements")) {
    ArrangementRecord rec{a.at("arrangement_id").get<std::string>(), a.at("set_id").get<std::string>(), {}};
    for (const auto& spec : a.at("objects")) rec.objects.push_back(object_spec_from_json(spec));
    m.arrangements.push_back(std::move(rec));
  }
  for (const auto& img : j.at("images")) m.images.push_back(scene_from_json(img));
  m.question_files = j.at("question_files").get<std::map<std::string, std::int64_t>>();
  return m;
}

std::string question_file_name(QType t, Group g, int subgroup) {
  return std::string(to_string(t)) + "_" + std::string(to_string(g)) + "_" + std::to_string(subgroup) + ".jsonl";
}

void sort_questions(std::vector<QuestionRecord>& qs) {
  std::sort(qs.begin(), qs.end(), [](const QuestionRecord& a, const QuestionRecord& b) {
    if (a.question_id != b.question_id) return a.question_id < b.question_id;
    return a.form < b.form;
  });
}

std::string canonical_manifest(const Dataset& d) {
  Manifest m = d.manifest;
  std::sort(m.images.begin(), m.images.end(),
            [](const SceneImage& a, const SceneImage& b) { return a.image_id < b.image_id; });
  m.question_files.clear();
  for (const auto& q : d.questions) ++m.question_files[question_file_name(q.qtype, q.group, q.subgroup)];
  return manifest_to_json(m).dump(2) + "\n";
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write " + path.string());
  out << content;
  if (!out) throw io_error("write failed: " + path.string());
}

void write_question_files(const fs::path& dataset_dir, const std::vector<QuestionRecord>& sorted_questions) {
  std::map<std::string, std::string> files;
  for (const auto& q : sorted_questions) {
    auto& buf = files[question_file_name(q.qtype, q.group, q.subgroup)];
    buf += to_json(q).dump();
    buf += '\n';
  }
  const fs::path dir = dataset_dir / "questions";
  fs::create_directories(dir);
  for (const auto& [name, content] : files) write_text_file(dir / name, content);
}

namespace {

template <class Fn>
void for_each_jsonl(const fs::path& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot read " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      fn(json::parse(line));
    } catch (const json::exception& e) {
      throw io_error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      throw io_error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

}  // namespace

Dataset load_dataset(const fs::path& dataset_dir) {
  Dataset d;
  try {
    d.manifest = manifest_from_json(json::parse(read_text_file(dataset_dir / "manifest.json")));
  } catch (const json::exception& e) {
    throw io_error("malformed manifest.json: " + std::string(e.what()));
  }
  for (const auto& [name, count] : d.manifest.question_files) {
    const auto before = d.questions.size();
    for_each_jsonl(dataset_dir / "questions" / name,
                   [&](const json& j) { d.questions.push_back(question_from_json(j)); });
    if (static_cast<std::int64_t>(d.questions.size() - before) != count) {
      throw io_error("question file " + name + " does not hold the " + std::to_string(count) +
                     " records the manifest lists");
    }
  }
  sort_questions(d.questions);
  return d;
}

std::vector<ResponseRecord> load_responses(const fs::path& path) {
  std::vector<ResponseRecord> out;
  std::set<std::pair<std::string, Form>> seen;
  for_each_jsonl(path, [&](const json& j) {
    auto r = response_from_json(j);
    if (!seen.emplace(r.question_id, r.form).second) {
      throw io_error("duplicate response for (" + r.question_id + ", " + std::string(to_string(r.form)) + ")");
    }
    out.push_back(std::move(r));
  });
  return out;
}

void write_responses(const fs::path& path, const std::vector<ResponseRecord>& rs) {
  std::string buf;
  for (const auto& r : rs) {
    buf += to_json(r).dump();
    buf += '\n';
  }
  write_text_file(path, buf);
}

}  // namespace scrapbook
