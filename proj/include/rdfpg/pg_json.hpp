#pragma once

// PG-JSON: a property graph as
//   {"vertices":[{"id":..,"properties":[{"key":..,"value":V}]}],
//    "edges":[{"id":..,"src":..,"tgt":..,"label":..,"properties":[..]}]}
// where V = {"type":"string"|"integer"|"double"|"boolean","value":..}.
// Integers beyond 2^53 in magnitude are carried as strings, infinite doubles
// as "INF" / "-INF".

#include "json.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <utility>

#include "rdfpg/error.hpp"
#include "rdfpg/mappings.hpp"
#include "rdfpg/pg_model.hpp"

namespace rdfpg {

class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

namespace detail {

using Json = nlohmann::ordered_json;

inline const BigInt& json_safe_integer_bound() {
  static const BigInt bound = BigInt(1) << 53;
  return bound;
}

inline Json value_to_json(const PropertyValue& v) {
  using K = PropertyValue::Kind;
  Json out = Json::object();
  switch (v.kind()) {
    case K::Text:
      out["type"] = "string";
      out["value"] = v.text();
      break;
    case K::Integer:
      out["type"] = "integer";
      if (abs(v.integer()) <= json_safe_integer_bound()) {
        out["value"] = v.integer().convert_to<long long>();
      } else {
        out["value"] = v.integer().str();
      }
      break;
    case K::Double:
      out["type"] = "double";
      if (std::isinf(v.real())) {
        out["value"] = v.real() > 0 ? "INF" : "-INF";
      } else {
        out["value"] = v.real();
      }
      break;
    case K::Boolean:
      out["type"] = "boolean";
      out["value"] = v.boolean();
      break;
  }
  return out;
}

inline Json properties_to_json(const PropertySet& props) {
  Json out = Json::array();
  for (const Property& p : props) {
    Json entry = Json::object();
    entry["key"] = p.key;
    entry["value"] = value_to_json(p.value);
    out.push_back(std::move(entry));
  }
  return out;
}

class PgJsonReader {
 public:
  PropertyGraph read(const Json& doc) {
    require_object(doc, "$", {"vertices", "edges"});
    PropertyGraphBuilder builder;
    const Json& vertices = member(doc, "$", "vertices");
    require_array(vertices, "$.vertices");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      std::string path = "$.vertices[" + std::to_string(i) + "]";
      const Json& v = vertices[i];
      require_object(v, path, {"id", "properties"});
      builder.add_vertex(text(member(v, path, "id"), path + ".id"), properties(v, path));
    }
    const Json& edges = member(doc, "$", "edges");
    require_array(edges, "$.edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      std::string path = "$.edges[" + std::to_string(i) + "]";
      const Json& e = edges[i];
      require_object(e, path, {"id", "src", "tgt", "label", "properties"});
      builder.add_edge(text(member(e, path, "id"), path + ".id"), text(member(e, path, "src"), path + ".src"),
                       text(member(e, path, "tgt"), path + ".tgt"), text(member(e, path, "label"), path + ".label"),
                       properties(e, path));
    }
    return builder.build();
  }

 private:
  static void require_object(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    for (const auto& [key, _] : j.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) throw SchemaError(path, "unexpected member \"" + key + "\"");
    }
  }

  static void require_array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array");
  }

  static const Json& member(const Json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path, std::string("missing member \"") + key + "\"");
    return *it;
  }

  static std::string text(const Json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string");
    return j.get<std::string>();
  }

  static PropertySet properties(const Json& element, const std::string& path) {
    PropertySet out;
    auto it = element.find("properties");
    if (it == element.end()) return out;
    std::string list_path = path + ".properties";
    require_array(*it, list_path);
    for (std::size_t i = 0; i < it->size(); ++i) {
      std::string p = list_path + "[" + std::to_string(i) + "]";
      const Json& entry = (*it)[i];
      require_object(entry, p, {"key", "value"});
      out.insert(Property{text(member(entry, p, "key"), p + ".key"), value(member(entry, p, "value"), p + ".value")});
    }
    return out;
  }

  static PropertyValue value(const Json& j, const std::string& path) {
    require_object(j, path, {"type", "value"});
    std::string type = text(member(j, path, "type"), path + ".type");
    const Json& v = member(j, path, "value");
    std::string vpath = path + ".value";
    if (type == "string") return PropertyValue::of_text(text(v, vpath));
    if (type == "boolean") {
      if (!v.is_boolean()) throw SchemaError(vpath, "expected true or false");
      return PropertyValue::of_bool(v.get<bool>());
    }
    if (type == "integer") {
      if (v.is_number_integer()) {
        return v.is_number_unsigned() ? PropertyValue::of_integer(BigInt(v.get<unsigned long long>()))
                                      : PropertyValue::of_integer(v.get<long long>());
      }
      if (v.is_string()) {
        if (auto n = lexical::parse_integer(v.get<std::string>())) return PropertyValue::of_integer(std::move(*n));
      }
      throw SchemaError(vpath, "expected an integer or a string of digits");
    }
    if (type == "double") {
      if (v.is_number()) return PropertyValue::of_double(v.get<double>());
      if (v == "INF") return PropertyValue::of_double(std::numeric_limits<double>::infinity());
      if (v == "-INF") return PropertyValue::of_double(-std::numeric_limits<double>::infinity());
      throw SchemaError(vpath, "expected a number, \"INF\" or \"-INF\"");
    }
    throw SchemaError(path + ".type", "unknown value type \"" + type + "\"");
  }
};

}  // namespace detail

/// Compact JSON; vertices, edges and properties in sorted order.
inline std::string serialize_pg_json(const PropertyGraph& g) {
  using detail::Json;
  Json vertices = Json::array();
  for (const VertexId& v : g.vertices()) {
    Json entry = Json::object();
    entry["id"] = v;
    entry["properties"] = detail::properties_to_json(g.properties(v));
    vertices.push_back(std::move(entry));
  }
  Json edges = Json::array();
  for (const EdgeId& e : g.edges()) {
    Json entry = Json::object();
    entry["id"] = e;
    entry["src"] = g.src(e);
    entry["tgt"] = g.tgt(e);
    entry["label"] = g.label(e);
    entry["properties"] = detail::properties_to_json(g.properties(e));
    edges.push_back(std::move(entry));
  }
  Json doc = Json::object();
  doc["vertices"] = std::move(vertices);
  doc["edges"] = std::move(edges);
  return doc.dump();
}

/// Throws SchemaError for malformed documents and GraphBuildError for
/// structurally invalid graphs (dangling edges, duplicate ids, ...).
inline PropertyGraph parse_pg_json(std::string_view text) {
  detail::Json doc;
  try {
    doc = detail::Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("$", std::string("invalid JSON: ") + e.what());
  }
  return detail::PgJsonReader().read(doc);
}

}  // namespace rdfpg
