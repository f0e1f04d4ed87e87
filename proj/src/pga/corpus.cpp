// Copyright 2026 The PGA Authors
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

#include "pga/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "pga/util.hpp"

namespace pga {

namespace {

std::string at(const std::string& path, int lineno) {
  return path + ":" + std::to_string(lineno);
}

// Sorts entities by (start, end, type name) and rewrites relation endpoint
// indices to match. Type name breaks ties so the order is reproducible.
void normalize_entity_order(Sample& s) {
  const std::size_t n = s.entities.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ea = s.entities[a];
    const auto& eb = s.entities[b];
    return std::tie(ea.start, ea.end, entity_type_name(ea.type)) <
           std::tie(eb.start, eb.end, entity_type_name(eb.type));
  });
  std::vector<std::size_t> inverse(n);
  for (std::size_t pos = 0; pos < n; ++pos) inverse[order[pos]] = pos;
  std::vector<EntityMention> sorted;
  sorted.reserve(n);
  for (std::size_t pos = 0; pos < n; ++pos) sorted.push_back(s.entities[order[pos]]);
  s.entities = std::move(sorted);
  for (auto& r : s.relations) {
    r.subject = static_cast<int>(inverse[r.subject]);
    r.object = static_cast<int>(inverse[r.object]);
  }
}

int find_entity_by_span(const Sample& s, int start, int end, const std::string& where) {
  for (std::size_t i = 0; i < s.entities.size(); ++i) {
    if (s.entities[i].start == start && s.entities[i].end == end) return static_cast<int>(i);
  }
  throw Error(ErrorClass::parse, where + ": relation references span [" + std::to_string(start) +
                                     "," + std::to_string(end) + ") with no entity annotation");
}

// Splits "<doc_key>#<digits>" into its parts; returns false when the id is
// not of that shape.
bool split_doc_id(const std::string& id, std::string* key, int* index) {
  auto pos = id.rfind('#');
  if (pos == std::string::npos || pos == 0 || pos + 1 == id.size()) return false;
  for (std::size_t i = pos + 1; i < id.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
  }
  *key = id.substr(0, pos);
  *index = std::stoi(id.substr(pos + 1));
  return true;
}

bool has_counter_id(const Sample& s) {
  // pga_p_000001 / pga_g_000001
  const std::string& id = s.id;
  if (id.size() != 12 || id.rfind("pga_", 0) != 0) return false;
  if (id[4] != 'p' && id[4] != 'g') return false;
  if (id[5] != '_') return false;
  for (int i = 6; i < 12; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
  }
  return true;
}

// Doc key used on export: originals keep their id, pseudo samples without a
// counter-style id get one assigned from the running counters.
std::vector<std::string> export_doc_keys(const std::vector<Sample>& samples) {
  std::vector<std::string> keys;
  keys.reserve(samples.size());
  int next_p = 1;
  int next_g = 1;
  for (const auto& s : samples) {
    if (s.pseudo && !has_counter_id(s)) {
      char buf[24];
      if (s.pseudo->method == AugmentMethod::paraphrase) {
        std::snprintf(buf, sizeof(buf), "pga_p_%06d", next_p++);
      } else {
        std::snprintf(buf, sizeof(buf), "pga_g_%06d", next_g++);
      }
      keys.emplace_back(buf);
    } else {
      keys.push_back(s.id);
    }
  }
  return keys;
}

json document_to_json(const std::string& doc_key, const std::vector<const Sample*>& sentences) {
  json sent = json::array();
  json ner = json::array();
  json rels = json::array();
  int base = 0;
  for (const Sample* s : sentences) {
    json toks = json::array();
    for (const auto& t : s->tokens) toks.push_back(t);
    sent.push_back(std::move(toks));
    json sn = json::array();
    for (const auto& e : s->entities) {
      sn.push_back(json::array({base + e.start, base + e.end - 1, entity_type_name(e.type)}));
    }
    ner.push_back(std::move(sn));
    json sr = json::array();
    for (const auto& r : s->relations) {
      const auto& sub = s->entities[r.subject];
      const auto& obj = s->entities[r.object];
      sr.push_back(json::array({base + sub.start, base + sub.end - 1, base + obj.start,
                                base + obj.end - 1, relation_type_name(r.type)}));
    }
    rels.push_back(std::move(sr));
    base += static_cast<int>(s->tokens.size());
  }
  json doc;
  doc["doc_key"] = doc_key;
  doc["sentences"] = std::move(sent);
  doc["ner"] = std::move(ner);
  doc["relations"] = std::move(rels);
  return doc;
}

void export_scierc_like(const std::vector<Sample>& samples, const std::string& path,
                        bool group_documents) {
  const auto keys = export_doc_keys(samples);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorClass::io, "cannot open '" + path + "' for writing");
  std::set<std::string> used_keys;
  auto emit = [&](const std::string& key, const std::vector<const Sample*>& sentences) {
    if (!used_keys.insert(key).second) {
      throw Error(ErrorClass::validation, "duplicate doc key '" + key + "' on export");
    }
    out << document_to_json(key, sentences).dump() << '\n';
  };
  std::size_t i = 0;
  while (i < samples.size()) {
    std::string key;
    int index = 0;
    if (group_documents && !samples[i].pseudo && split_doc_id(keys[i], &key, &index)) {
      // Consecutive run of sentences from the same source document.
      std::vector<const Sample*> run{&samples[i]};
      std::size_t j = i + 1;
      std::string k2;
      while (j < samples.size() && !samples[j].pseudo && split_doc_id(keys[j], &k2, &index) &&
             k2 == key) {
        run.push_back(&samples[j]);
        ++j;
      }
      emit(key, run);
      i = j;
    } else {
      emit(keys[i], {&samples[i]});
      ++i;
    }
  }
  if (!out) throw Error(ErrorClass::io, "write to '" + path + "' failed");
}

void export_spert(const std::vector<Sample>& samples, const std::string& path) {
  const auto keys = export_doc_keys(samples);
  json arr = json::array();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    json rec;
    json toks = json::array();
    for (const auto& t : s.tokens) toks.push_back(t);
    rec["tokens"] = std::move(toks);
    json ents = json::array();
    for (const auto& e : s.entities) {
      ents.push_back({{"type", entity_type_name(e.type)}, {"start", e.start}, {"end", e.end}});
    }
    rec["entities"] = std::move(ents);
    json rels = json::array();
    for (const auto& r : s.relations) {
      rels.push_back(
          {{"type", relation_type_name(r.type)}, {"head", r.subject}, {"tail", r.object}});
    }
    rec["relations"] = std::move(rels);
    rec["orig_id"] = keys[i];
    arr.push_back(std::move(rec));
  }
  write_file(path, arr.dump() + "\n");
}

}  // namespace

DocumentSet load_scierc(const std::string& path, Split split) {
  DocumentSet ds;
  ds.split = split;
  std::set<std::string> keys;
  for_each_json_line(path, [&](const json& rec, int lineno) {
    const std::string where = at(path, lineno);
    if (!rec.is_object() || !rec.contains("doc_key") || !rec.contains("sentences")) {
      throw Error(ErrorClass::parse, where + ": record lacks doc_key/sentences");
    }
    Document doc;
    try {
      doc.doc_key = rec.at("doc_key").get<std::string>();
      if (!keys.insert(doc.doc_key).second) {
        throw Error(ErrorClass::parse, where + ": duplicate doc key '" + doc.doc_key + "'");
      }
      const auto& sentences = rec.at("sentences");
      const auto& ner = rec.contains("ner") ? rec.at("ner") : json::array();
      const auto& rels = rec.contains("relations") ? rec.at("relations") : json::array();
      if ((!ner.empty() && ner.size() != sentences.size()) ||
          (!rels.empty() && rels.size() != sentences.size())) {
        throw Error(ErrorClass::parse, where + ": ner/relations length differs from sentences");
      }
      int base = 0;
      for (std::size_t si = 0; si < sentences.size(); ++si) {
        Sample s;
        s.id = doc.doc_key + "#" + std::to_string(si);
        for (const auto& t : sentences[si]) s.tokens.push_back(t.get<std::string>());
        const int len = static_cast<int>(s.tokens.size());
        if (si < ner.size()) {
          for (const auto& ent : ner[si]) {
            if (!ent.is_array() || ent.size() != 3) {
              throw Error(ErrorClass::parse, where + ": entity record is not a [start, end, type] triple");
            }
            EntityMention m;
            m.start = ent[0].get<int>() - base;
            m.end = ent[1].get<int>() - base + 1;  // inclusive -> exclusive
            m.type = entity_type_from_name(ent[2].get<std::string>());
            if (m.start < 0 || m.start >= m.end || m.end > len) {
              throw Error(ErrorClass::parse,
                          where + ": entity span out of range in sentence " + std::to_string(si));
            }
            m.surface = join_tokens(s.tokens, m.start, m.end);
            s.entities.push_back(std::move(m));
          }
        }
        normalize_entity_order(s);
        if (si < rels.size()) {
          for (const auto& rel : rels[si]) {
            if (!rel.is_array() || rel.size() != 5) {
              throw Error(ErrorClass::parse, where + ": relation record is not a 5-tuple");
            }
            RelationMention r;
            r.subject = find_entity_by_span(s, rel[0].get<int>() - base,
                                            rel[1].get<int>() - base + 1, where);
            r.object = find_entity_by_span(s, rel[2].get<int>() - base,
                                           rel[3].get<int>() - base + 1, where);
            r.type = relation_type_from_name(rel[4].get<std::string>());
            s.relations.push_back(r);
          }
        }
        s.validate(where + " sentence " + std::to_string(si));
        base += len;
        doc.sentences.push_back(std::move(s));
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw Error(ErrorClass::parse, where + ": malformed record: " + e.what());
    }
    ds.documents.push_back(std::move(doc));
  });
  return ds;
}

std::vector<Sample> flatten(const DocumentSet& ds) {
  std::vector<Sample> out;
  for (const auto& doc : ds.documents) {
    for (const auto& s : doc.sentences) out.push_back(s);
  }
  return out;
}

SampleSet load_spert(const std::string& path, Split split) {
  json arr;
  try {
    arr = json::parse(read_file(path));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorClass::parse, path + ": malformed JSON: " + std::string(e.what()));
  }
  if (!arr.is_array()) throw Error(ErrorClass::parse, path + ": expected a top-level array");
  SampleSet set;
  set.split = split;
  int idx = 0;
  for (const auto& rec : arr) {
    const std::string where = path + " record " + std::to_string(idx);
    Sample s;
    try {
      s.id = rec.contains("orig_id") ? rec.at("orig_id").get<std::string>()
                                     : "spert_" + std::to_string(idx);
      for (const auto& t : rec.at("tokens")) s.tokens.push_back(t.get<std::string>());
      for (const auto& ent : rec.at("entities")) {
        EntityMention m;
        m.start = ent.at("start").get<int>();
        m.end = ent.at("end").get<int>();
        m.type = entity_type_from_name(ent.at("type").get<std::string>());
        if (m.start < 0 || m.start >= m.end || m.end > static_cast<int>(s.tokens.size())) {
          throw Error(ErrorClass::parse, where + ": entity span out of range");
        }
        m.surface = join_tokens(s.tokens, m.start, m.end);
        s.entities.push_back(std::move(m));
      }
      const int ne = static_cast<int>(s.entities.size());
      for (const auto& rel : rec.at("relations")) {
        RelationMention r;
        r.subject = rel.at("head").get<int>();
        r.object = rel.at("tail").get<int>();
        r.type = relation_type_from_name(rel.at("type").get<std::string>());
        if (r.subject < 0 || r.subject >= ne || r.object < 0 || r.object >= ne) {
          throw Error(ErrorClass::parse, where + ": relation head/tail index out of range");
        }
        s.relations.push_back(r);
      }
      normalize_entity_order(s);
      s.validate(where);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw Error(ErrorClass::parse, where + ": malformed record: " + e.what());
    }
    set.items.push_back(std::move(s));
    ++idx;
  }
  return set;
}

json sample_to_json(const Sample& s) {
  json rec;
  rec["id"] = s.id;
  json toks = json::array();
  for (const auto& t : s.tokens) toks.push_back(t);
  rec["tokens"] = std::move(toks);
  json ents = json::array();
  for (const auto& e : s.entities) {
    ents.push_back(json::array({e.start, e.end, entity_type_name(e.type)}));
  }
  rec["entities"] = std::move(ents);
  json rels = json::array();
  for (const auto& r : s.relations) {
    rels.push_back(json::array({r.subject, r.object, relation_type_name(r.type)}));
  }
  rec["relations"] = std::move(rels);
  if (s.pseudo) {
    rec["method"] = augment_method_name(s.pseudo->method);
    rec["origin_id"] = s.pseudo->origin_id;
    rec["attempts"] = s.pseudo->attempts;
  }
  return rec;
}

Sample sample_from_json(const json& rec, const std::string& where) {
  Sample s;
  try {
    s.id = rec.at("id").get<std::string>();
    for (const auto& t : rec.at("tokens")) s.tokens.push_back(t.get<std::string>());
    for (const auto& ent : rec.at("entities")) {
      if (!ent.is_array() || ent.size() != 3) {
        throw Error(ErrorClass::parse, where + ": entity record is not a [start, end, type] triple");
      }
      EntityMention m;
      m.start = ent[0].get<int>();
      m.end = ent[1].get<int>();
      m.type = entity_type_from_name(ent[2].get<std::string>());
      if (m.start < 0 || m.start >= m.end || m.end > static_cast<int>(s.tokens.size())) {
        throw Error(ErrorClass::parse, where + ": entity span out of range");
      }
      m.surface = join_tokens(s.tokens, m.start, m.end);
      s.entities.push_back(std::move(m));
    }
    const int ne = static_cast<int>(s.entities.size());
    for (const auto& rel : rec.at("relations")) {
      if (!rel.is_array() || rel.size() != 3) {
        throw Error(ErrorClass::parse, where + ": relation record is not a [subject, object, type] triple");
      }
      RelationMention r;
      r.subject = rel[0].get<int>();
      r.object = rel[1].get<int>();
      r.type = relation_type_from_name(rel[2].get<std::string>());
      if (r.subject < 0 || r.subject >= ne || r.object < 0 || r.object >= ne) {
        throw Error(ErrorClass::parse, where + ": relation endpoint index out of range");
      }
      s.relations.push_back(r);
    }
    if (rec.contains("method")) {
      PseudoMeta meta;
      meta.method = augment_method_from_name(rec.at("method").get<std::string>());
      meta.origin_id = rec.value("origin_id", std::string());
      meta.attempts = rec.value("attempts", 1);
      s.pseudo = meta;
    }
    normalize_entity_order(s);
    s.validate(where);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorClass::parse, where + ": malformed record: " + e.what());
  }
  return s;
}

SampleSet load_pga(const std::string& path, Split split) {
  SampleSet set;
  set.split = split;
  for_each_json_line(path, [&](const json& rec, int lineno) {
    set.items.push_back(sample_from_json(rec, at(path, lineno)));
  });
  return set;
}

SampleSet load_samples(const std::string& path, const std::string& format, Split split) {
  std::string fmt = format;
  if (fmt == "auto" || fmt.empty()) {
    const std::string content = read_file(path);
    std::size_t i = 0;
    while (i < content.size() && std::isspace(static_cast<unsigned char>(content[i]))) ++i;
    if (i >= content.size()) {
      fmt = "scierc";  // empty file: any line format gives the empty set
    } else if (content[i] == '[') {
      fmt = "spert";
    } else {
      // Peek at the first record's keys.
      auto eol = content.find('\n', i);
      std::string first = content.substr(i, eol == std::string::npos ? eol : eol - i);
      json rec;
      try {
        rec = json::parse(first);
      } catch (const std::exception& e) {
        throw Error(ErrorClass::parse, path + ":1: malformed record: " + std::string(e.what()));
      }
      if (rec.contains("doc_key")) {
        fmt = "scierc";
      } else if (rec.contains("id") && rec.contains("tokens")) {
        fmt = "pga";
      } else {
        throw Error(ErrorClass::parse, path + ": cannot determine format from first record");
      }
    }
  }
  if (fmt == "scierc" || fmt == "marker") {
    SampleSet set;
    set.split = split;
    set.items = flatten(load_scierc(path, split));
    return set;
  }
  if (fmt == "spert") return load_spert(path, split);
  if (fmt == "pga") return load_pga(path, split);
  throw Error(ErrorClass::config, "unknown corpus format '" + fmt + "'");
}

DatasetStats compute_stats(const std::vector<Sample>& samples) {
  DatasetStats st;
  std::set<EntityType> etypes;
  std::set<RelationType> rtypes;
  st.sample_count = samples.size();
  for (const auto& s : samples) {
    st.entity_count += s.entities.size();
    st.relation_count += s.relations.size();
    for (const auto& e : s.entities) etypes.insert(e.type);
    for (const auto& r : s.relations) rtypes.insert(r.type);
  }
  st.entity_type_count = etypes.size();
  st.relation_type_count = rtypes.size();
  return st;
}

void export_samples(const std::vector<Sample>& samples, const std::string& format,
                    const std::string& path) {
  if (format == "scierc") {
    export_scierc_like(samples, path, /*group_documents=*/true);
  } else if (format == "marker") {
    export_scierc_like(samples, path, /*group_documents=*/false);
  } else if (format == "spert") {
    export_spert(samples, path);
  } else {
    throw Error(ErrorClass::config, "unknown export format '" + format + "'");
  }
}

void save_pga(const std::vector<Sample>& samples, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorClass::io, "cannot open '" + path + "' for writing");
  for (const auto& s : samples) out << sample_to_json(s).dump() << '\n';
  if (!out) throw Error(ErrorClass::io, "write to '" + path + "' failed");
}

}  // namespace pga
