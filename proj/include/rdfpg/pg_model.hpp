#pragma once

// Property Graphs: vertices, labelled directed edges, and sets of key/value
// properties on both. Property sets hold pairs, so an element may carry two
// properties with the same key; is_property_unique() reports that.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "rdfpg/error.hpp"

namespace rdfpg {

using BigInt = boost::multiprecision::cpp_int;

/// A property value: text, arbitrary-precision integer, double or boolean.
/// The kind is part of identity, so integer 1 and double 1.0 differ.
class PropertyValue {
 public:
  enum class Kind { Text, Integer, Double, Boolean };

  static PropertyValue of_text(std::string s) { return PropertyValue(Storage(std::in_place_index<0>, std::move(s))); }
  static PropertyValue of_integer(BigInt n) { return PropertyValue(Storage(std::in_place_index<1>, std::move(n))); }
  static PropertyValue of_integer(long long n) { return of_integer(BigInt(n)); }
  static PropertyValue of_double(double d) {
    if (std::isnan(d)) throw InvalidTerm("NaN is not a property value");
    return PropertyValue(Storage(std::in_place_index<2>, d));
  }
  static PropertyValue of_bool(bool b) { return PropertyValue(Storage(std::in_place_index<3>, b)); }

  Kind kind() const { return static_cast<Kind>(value_.index()); }
  const std::string& text() const { return std::get<0>(value_); }
  const BigInt& integer() const { return std::get<1>(value_); }
  double real() const { return std::get<2>(value_); }
  bool boolean() const { return std::get<3>(value_); }

  friend std::strong_ordering operator<=>(const PropertyValue& a, const PropertyValue& b) {
    if (a.value_.index() != b.value_.index()) return a.value_.index() <=> b.value_.index();
    switch (a.kind()) {
      case Kind::Text:
        return a.text() <=> b.text();
      case Kind::Integer:
        return a.integer() < b.integer()   ? std::strong_ordering::less
               : b.integer() < a.integer() ? std::strong_ordering::greater
                                           : std::strong_ordering::equal;
      case Kind::Double:
        return total_order(a.real(), b.real());
      case Kind::Boolean:
        return a.boolean() <=> b.boolean();
    }
    return std::strong_ordering::equal;
  }
  friend bool operator==(const PropertyValue& a, const PropertyValue& b) { return (a <=> b) == 0; }

 private:
  using Storage = std::variant<std::string, BigInt, double, bool>;
  explicit PropertyValue(Storage v) : value_(std::move(v)) {}

  // -0.0 sorts before +0.0 so that both stay distinct values.
  static std::strong_ordering total_order(double x, double y) {
    if (x < y) return std::strong_ordering::less;
    if (y < x) return std::strong_ordering::greater;
    return std::signbit(y) <=> std::signbit(x);
  }

  Storage value_;
};

struct Property {
  std::string key;
  PropertyValue value;

  friend std::strong_ordering operator<=>(const Property& a, const Property& b) {
    if (auto c = a.key <=> b.key; c != 0) return c;
    return a.value <=> b.value;
  }
  friend bool operator==(const Property& a, const Property& b) = default;
};

using VertexId = std::string;
using EdgeId = std::string;
using PropertySet = std::set<Property>;

/// Why build_property_graph() rejected its input.
class GraphBuildError : public Error {
 public:
  enum class Kind { DanglingEdge, MissingEdgeLabel, IdCollision, DuplicateId, UnknownElement, EmptyId };

  GraphBuildError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class PropertyGraph {
 public:
  PropertyGraph() = default;

  const std::set<VertexId>& vertices() const { return vertices_; }
  const std::set<EdgeId>& edges() const { return edges_; }
  const VertexId& src(const EdgeId& e) const { return src_.at(e); }
  const VertexId& tgt(const EdgeId& e) const { return tgt_.at(e); }
  const std::string& label(const EdgeId& e) const { return lbl_.at(e); }

  /// Properties of a vertex or edge (empty for elements without any).
  const PropertySet& properties(const std::string& element) const {
    static const PropertySet kEmpty;
    auto it = props_.find(element);
    return it == props_.end() ? kEmpty : it->second;
  }

  bool has_vertex(const VertexId& v) const { return vertices_.contains(v); }
  bool has_edge(const EdgeId& e) const { return edges_.contains(e); }

  const std::map<EdgeId, VertexId>& src_map() const { return src_; }
  const std::map<EdgeId, VertexId>& tgt_map() const { return tgt_; }
  const std::map<EdgeId, std::string>& label_map() const { return lbl_; }
  const std::map<std::string, PropertySet>& property_map() const { return props_; }

  bool operator==(const PropertyGraph&) const = default;

 private:
  friend PropertyGraph build_property_graph(std::set<VertexId>, std::set<EdgeId>, std::map<EdgeId, VertexId>,
                                            std::map<EdgeId, VertexId>, std::map<EdgeId, std::string>,
                                            std::map<std::string, PropertySet>);

  std::set<VertexId> vertices_;
  std::set<EdgeId> edges_;
  std::map<EdgeId, VertexId> src_;
  std::map<EdgeId, VertexId> tgt_;
  std::map<EdgeId, std::string> lbl_;
  std::map<std::string, PropertySet> props_;  // only non-empty sets are stored
};

/// Validates and assembles a property graph from its six components.
inline PropertyGraph build_property_graph(std::set<VertexId> vertices, std::set<EdgeId> edges,
                                          std::map<EdgeId, VertexId> src, std::map<EdgeId, VertexId> tgt,
                                          std::map<EdgeId, std::string> lbl,
                                          std::map<std::string, PropertySet> props = {}) {
  using K = GraphBuildError::Kind;
  for (const auto& v : vertices) {
    if (v.empty()) throw GraphBuildError(K::EmptyId, "vertex id must not be empty");
  }
  for (const auto& e : edges) {
    if (e.empty()) throw GraphBuildError(K::EmptyId, "edge id must not be empty");
    if (vertices.contains(e)) throw GraphBuildError(K::IdCollision, "id '" + e + "' names both a vertex and an edge");
    for (const auto* ends : {&src, &tgt}) {
      auto it = ends->find(e);
      const char* role = ends == &src ? "source" : "target";
      if (it == ends->end()) throw GraphBuildError(K::DanglingEdge, "edge '" + e + "' has no " + role);
      if (!vertices.contains(it->second))
        throw GraphBuildError(K::DanglingEdge,
                              "edge '" + e + "' has unknown " + role + " vertex '" + it->second + "'");
    }
    if (!lbl.contains(e)) throw GraphBuildError(K::MissingEdgeLabel, "edge '" + e + "' has no label");
  }
  for (const auto* m : {&src, &tgt}) {
    for (const auto& [e, v] : *m) {
      if (!edges.contains(e)) throw GraphBuildError(K::UnknownElement, "endpoint given for unknown edge '" + e + "'");
    }
  }
  for (const auto& [e, l] : lbl) {
    if (!edges.contains(e)) throw GraphBuildError(K::UnknownElement, "label given for unknown edge '" + e + "'");
  }
  for (auto it = props.begin(); it != props.end();) {
    if (!vertices.contains(it->first) && !edges.contains(it->first))
      throw GraphBuildError(K::UnknownElement, "properties given for unknown element '" + it->first + "'");
    it = it->second.empty() ? props.erase(it) : std::next(it);
  }

  PropertyGraph g;
  g.vertices_ = std::move(vertices);
  g.edges_ = std::move(edges);
  g.src_ = std::move(src);
  g.tgt_ = std::move(tgt);
  g.lbl_ = std::move(lbl);
  g.props_ = std::move(props);
  return g;
}

/// Incremental construction; rejects ids added twice.
class PropertyGraphBuilder {
 public:
  PropertyGraphBuilder& add_vertex(VertexId id, PropertySet props = {}) {
    if (!vertices_.insert(id).second)
      throw GraphBuildError(GraphBuildError::Kind::DuplicateId, "duplicate vertex id '" + id + "'");
    if (!props.empty()) props_[std::move(id)] = std::move(props);
    return *this;
  }

  PropertyGraphBuilder& add_edge(EdgeId id, VertexId src, VertexId tgt, std::string label, PropertySet props = {}) {
    if (!edges_.insert(id).second)
      throw GraphBuildError(GraphBuildError::Kind::DuplicateId, "duplicate edge id '" + id + "'");
    src_[id] = std::move(src);
    tgt_[id] = std::move(tgt);
    lbl_[id] = std::move(label);
    if (!props.empty()) props_[std::move(id)] = std::move(props);
    return *this;
  }

  PropertyGraph build() const { return build_property_graph(vertices_, edges_, src_, tgt_, lbl_, props_); }

 private:
  std::set<VertexId> vertices_;
  std::set<EdgeId> edges_;
  std::map<EdgeId, VertexId> src_, tgt_;
  std::map<EdgeId, std::string> lbl_;
  std::map<std::string, PropertySet> props_;
};

struct PropertyUniquenessViolation {
  std::string element;
  std::string key;
  bool operator==(const PropertyUniquenessViolation&) const = default;
};

struct PropertyUniquenessReport {
  std::vector<PropertyUniquenessViolation> violations;
  bool unique() const { return violations.empty(); }
};

/// No vertex or edge carries two distinct properties with the same key.
inline PropertyUniquenessReport is_property_unique(const PropertyGraph& g) {
  PropertyUniquenessReport report;
  for (const auto& [element, props] : g.property_map()) {
    // Sets are ordered by key first, so equal keys are adjacent.
    const std::string* prev = nullptr;
    bool reported = false;
    for (const Property& p : props) {
      if (prev && *prev == p.key) {
        if (!reported) report.violations.push_back({element, p.key});
        reported = true;
      } else {
        reported = false;
      }
      prev = &p.key;
    }
  }
  return report;
}

struct EdgeUniquenessReport {
  std::vector<std::pair<EdgeId, EdgeId>> violations;
  bool unique() const { return violations.empty(); }
};

/// No two distinct edges share source, target and label.
inline EdgeUniquenessReport is_edge_unique(const PropertyGraph& g) {
  std::map<std::tuple<VertexId, VertexId, std::string>, std::vector<EdgeId>> groups;
  for (const EdgeId& e : g.edges()) groups[{g.src(e), g.tgt(e), g.label(e)}].push_back(e);
  EdgeUniquenessReport report;
  for (const auto& [key, es] : groups) {
    for (std::size_t i = 0; i < es.size(); ++i) {
      for (std::size_t j = i + 1; j < es.size(); ++j) report.violations.emplace_back(es[i], es[j]);
    }
  }
  return report;
}

}  // namespace rdfpg
