#pragma once

// JSON documents for spaces, separation relations and maps.
//
// Subsets are written as the comma-joined names of their elements in element
// order ("" is the empty set). The parser accepts only that canonical
// spelling, so every subset has exactly one textual form.
//
//   space:    {"elements": ["a","b"], "closure": {"": "", "a": "a", "b": "b", "a,b": "a,b"}}
//   relation: {"elements": ["a","b"], "pairs": [["", ""], ["", "a"], ["a", "b"]]}
//   map:      {"domain": <space or path>, "codomain": <space or path>, "assignment": {"a": "x"}}

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "closure/core.hpp"
#include "closure/maps.hpp"
#include "closure/separation.hpp"
#include "json.hpp"

namespace closure::io {

using Json = nlohmann::ordered_json;

inline std::string format_subset(const GroundSet& ground, SubsetMask m) {
  std::string out;
  for_each_element(m, [&](std::size_t i) {
    if (!out.empty()) out += ',';
    out += ground.label(i);
  });
  return out;
}

inline SubsetMask parse_subset(const GroundSet& ground, std::string_view text) {
  SubsetMask out;
  if (text.empty()) return out;
  std::optional<std::size_t> previous;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    const auto name = text.substr(start, end - start);
    const auto index = ground.index_of(name);
    if (name.empty()) throw Error(ErrorKind::SyntaxError, "empty element name in subset '" + std::string(text) + "'");
    if (!index) throw Error(ErrorKind::UnknownElement, "unknown element '" + std::string(name) + "'");
    if (previous && *index <= *previous) {
      throw Error(ErrorKind::SyntaxError,
                  "subset '" + std::string(text) + "' is not listed in element order without repeats");
    }
    out = out.with(*index);
    previous = index;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

namespace detail {

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, e.what());
  }
}

inline const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object()) throw Error(ErrorKind::SyntaxError, "document must be a JSON object");
  auto it = doc.find(name);
  if (it == doc.end()) throw Error(ErrorKind::SyntaxError, std::string("missing field '") + name + "'");
  return *it;
}

inline const std::string& as_string(const Json& value, std::string_view what) {
  if (!value.is_string()) throw Error(ErrorKind::SyntaxError, std::string(what) + " must be a string");
  return value.get_ref<const std::string&>();
}

inline GroundPtr ground_from(const Json& doc) {
  const auto& elements = field(doc, "elements");
  if (!elements.is_array()) throw Error(ErrorKind::SyntaxError, "'elements' must be an array");
  std::vector<std::string> labels;
  for (const auto& e : elements) {
    const auto& label = as_string(e, "element name");
    if (label.empty() || label.find(',') != std::string::npos) {
      throw Error(ErrorKind::SyntaxError, "element names must be non-empty and free of commas");
    }
    labels.push_back(label);
  }
  return std::make_shared<const GroundSet>(GroundSet(std::move(labels)));
}

inline Json elements_json(const GroundSet& ground) {
  Json out = Json::array();
  for (const auto& label : ground.labels()) out.push_back(label);
  return out;
}

}  // namespace detail

/// Canonical text: two-space indentation, keys in fixed order, closure keys
/// ascending by subset index, trailing newline.
inline std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Spaces

inline Json space_to_json(const Space& s) {
  Json closure = Json::object();
  const auto t = s.table();
  for (std::size_t m = 0; m < t.size(); ++m) {
    closure[format_subset(s.ground(), SubsetMask(static_cast<SubsetMask::bits_type>(m)))] =
        format_subset(s.ground(), t[m]);
  }
  Json doc = Json::object();
  doc["elements"] = detail::elements_json(s.ground());
  doc["closure"] = std::move(closure);
  return doc;
}

inline Space space_from_json(const Json& doc) {
  auto ground = detail::ground_from(doc);
  const auto& closure = detail::field(doc, "closure");
  if (!closure.is_object()) throw Error(ErrorKind::SyntaxError, "'closure' must be an object");
  std::vector<SubsetMask> table(ground->subset_count());
  std::vector<bool> seen(table.size(), false);
  for (auto it = closure.begin(); it != closure.end(); ++it) {
    const auto key = parse_subset(*ground, it.key());
    table[key.index()] = parse_subset(*ground, detail::as_string(it.value(), "closure value"));
    seen[key.index()] = true;
  }
  for (std::size_t m = 0; m < seen.size(); ++m) {
    if (!seen[m]) {
      throw Error(ErrorKind::MissingSubsetKey,
                  "closure has no entry for \"" +
                      format_subset(*ground, SubsetMask(static_cast<SubsetMask::bits_type>(m))) + "\"");
    }
  }
  return Space(std::move(ground), std::move(table));
}

inline std::string serialize_space(const Space& s) { return dump(space_to_json(s)); }
inline Space parse_space(std::string_view text) { return space_from_json(detail::parse_json(text)); }

// ---------------------------------------------------------------------------
// Relations

inline Json relation_to_json(const SeparationRelation& rel) {
  Json pairs = Json::array();
  for (const auto& p : rel.pairs()) {
    pairs.push_back(Json::array({format_subset(rel.ground(), p.first), format_subset(rel.ground(), p.second)}));
  }
  Json doc = Json::object();
  doc["elements"] = detail::elements_json(rel.ground());
  doc["pairs"] = std::move(pairs);
  return doc;
}

inline SeparationRelation relation_from_json(const Json& doc) {
  auto ground = detail::ground_from(doc);
  const auto& pairs = detail::field(doc, "pairs");
  if (!pairs.is_array()) throw Error(ErrorKind::SyntaxError, "'pairs' must be an array");
  SeparationRelation rel(ground);
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::SyntaxError, "each pair must be a two-element array");
    const auto a = parse_subset(*ground, detail::as_string(p[0], "pair member"));
    const auto b = parse_subset(*ground, detail::as_string(p[1], "pair member"));
    if (!rel.insert(a, b)) {
      throw Error(ErrorKind::DuplicatePair, "pair {" + format_subset(*ground, a) + "} | {" +
                                                format_subset(*ground, b) + "} appears twice");
    }
  }
  return rel;
}

inline std::string serialize_relation(const SeparationRelation& rel) { return dump(relation_to_json(rel)); }
inline SeparationRelation parse_relation(std::string_view text) {
  return relation_from_json(detail::parse_json(text));
}

// ---------------------------------------------------------------------------
// Files

/// Reads a whole file, or standard input for "-".
inline std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text(const std::string& path, std::string_view text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  out << text;
}

// ---------------------------------------------------------------------------
// Maps

inline Json map_to_json(const SpaceMap& f) {
  Json assignment = Json::object();
  const auto& dom = f.domain().ground();
  const auto& cod = f.codomain().ground();
  for (std::size_t i = 0; i < f.assignment().size(); ++i) assignment[dom.label(i)] = cod.label(f.assignment()[i]);
  Json doc = Json::object();
  doc["domain"] = space_to_json(f.domain());
  doc["codomain"] = space_to_json(f.codomain());
  doc["assignment"] = std::move(assignment);
  return doc;
}

/// String-valued domain/codomain fields name space files, resolved against
/// base_dir when relative.
inline SpaceMap map_from_json(const Json& doc, const std::filesystem::path& base_dir = {}) {
  auto load = [&](const char* name) {
    const auto& v = detail::field(doc, name);
    if (v.is_string()) {
      std::filesystem::path p(v.get<std::string>());
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      return parse_space(read_text(p.string()));
    }
    return space_from_json(v);
  };
  Space domain = load("domain");
  Space codomain = load("codomain");
  const auto& assignment = detail::field(doc, "assignment");
  if (!assignment.is_object()) throw Error(ErrorKind::SyntaxError, "'assignment' must be an object");

  std::vector<std::optional<std::size_t>> targets(domain.size());
  for (auto it = assignment.begin(); it != assignment.end(); ++it) {
    const auto from = domain.ground().index_of(it.key());
    if (!from) throw Error(ErrorKind::UnknownElement, "assignment names unknown domain element '" + it.key() + "'");
    const auto& target = detail::as_string(it.value(), "assignment target");
    const auto to = codomain.ground().index_of(target);
    if (!to) throw Error(ErrorKind::UnknownElement, "assignment targets unknown codomain element '" + target + "'");
    targets[*from] = *to;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!targets[i]) {
      throw Error(ErrorKind::PartialAssignment,
                  "assignment leaves domain element '" + domain.ground().label(i) + "' unmapped");
    }
    out.push_back(*targets[i]);
  }
  return SpaceMap(std::move(domain), std::move(codomain), std::move(out));
}

inline std::string serialize_map(const SpaceMap& f) { return dump(map_to_json(f)); }
inline SpaceMap parse_map(std::string_view text, const std::filesystem::path& base_dir = {}) {
  return map_from_json(detail::parse_json(text), base_dir);
}

}  // namespace closure::io
