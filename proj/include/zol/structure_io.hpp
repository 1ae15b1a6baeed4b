#pragma once

// Structure interchange format:
//   { "vocabulary": [{"name":"E","arity":2}], "size": 5,
//     "relations": {"E": [[0,1],[1,2],[2,3],[3,4]]} }
// Unknown keys are rejected; tuples are checked against arity and size.

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "zol/structure.hpp"

namespace zol {

using Json = nlohmann::ordered_json;

inline Json to_json(const Vocabulary& v) {
  Json arr = Json::array();
  for (const Symbol& s : v.symbols()) arr.push_back({{"name", s.name}, {"arity", s.arity}});
  return arr;
}

inline Json to_json(const Structure& s) {
  Json rels = Json::object();
  for (std::size_t r = 0; r < s.vocabulary().size(); ++r) {
    Json tuples = Json::array();
    for (const Tuple& t : s.tuples(r)) tuples.push_back(t);
    rels[s.vocabulary()[r].name] = std::move(tuples);
  }
  return Json{{"vocabulary", to_json(s.vocabulary())}, {"size", s.size()}, {"relations", std::move(rels)}};
}

namespace detail {

inline void reject_unknown_keys(const Json& j, const std::set<std::string>& allowed, const char* what) {
  if (!j.is_object()) throw FormatError(std::string(what) + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw FormatError(std::string("unknown key '") + key + "' in " + what);
  }
}

inline const Json& require(const Json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing key '") + key + "' in " + what);
  return *it;
}

inline std::size_t as_count(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw FormatError(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

}  // namespace detail

inline Vocabulary vocabulary_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("vocabulary must be an array");
  std::vector<Symbol> symbols;
  for (const Json& entry : j) {
    detail::reject_unknown_keys(entry, {"name", "arity"}, "vocabulary entry");
    const Json& name = detail::require(entry, "name", "vocabulary entry");
    if (!name.is_string()) throw FormatError("symbol name must be a string");
    symbols.push_back({name.get<std::string>(), detail::as_count(detail::require(entry, "arity", "vocabulary entry"), "arity")});
  }
  try {
    return Vocabulary(std::move(symbols));
  } catch (const ArgumentError& e) {
    throw FormatError(e.what());
  }
}

namespace detail {

inline Structure structure_body_from_json(const Json& j) {
  Vocabulary vocab = vocabulary_from_json(require(j, "vocabulary", "structure"));
  std::size_t size = as_count(require(j, "size", "structure"), "size");
  const Json& rels = require(j, "relations", "structure");
  if (!rels.is_object()) throw FormatError("relations must be an object");
  std::vector<std::vector<Tuple>> tuples(vocab.size());
  for (const auto& [name, list] : rels.items()) {
    auto idx = vocab.find(name);
    if (!idx) throw FormatError("relation '" + name + "' is not in the vocabulary");
    if (!list.is_array()) throw FormatError("relation '" + name + "' must be an array of tuples");
    for (const Json& t : list) {
      if (!t.is_array()) throw FormatError("tuple under '" + name + "' must be an array");
      Tuple tuple;
      for (const Json& e : t) tuple.push_back(static_cast<Element>(as_count(e, "tuple entry")));
      tuples[*idx].push_back(std::move(tuple));
    }
  }
  try {
    return Structure(std::move(vocab), size, std::move(tuples));
  } catch (const ArgumentError& e) {
    throw FormatError(e.what());
  }
}

}  // namespace detail

inline Structure structure_from_json(const Json& j) {
  detail::reject_unknown_keys(j, {"vocabulary", "size", "relations"}, "structure");
  return detail::structure_body_from_json(j);
}

inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(origin + ": " + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Structure load_structure(const std::string& path) {
  return structure_from_json(parse_json_text(read_text_file(path), path));
}

}  // namespace zol
