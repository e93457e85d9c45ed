#pragma once

// RDF-star ↔ Property Graph transformations:
//   to_rdf_like_pg   lossless; every ordinary triple becomes an edge
//   to_simple_pg     lossy; attribute triples become vertex properties
//   pg_to_rdf_star   edges and vertex properties become triples, edge
//                    properties become metadata triples
// plus the convertibility checkers that guard them and from_rdf_like_pg,
// which reconstructs the RDF-star graph from an RDF-like property graph.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rdfpg/error.hpp"
#include "rdfpg/mappings.hpp"
#include "rdfpg/pg_model.hpp"
#include "rdfpg/rdf_model.hpp"

namespace rdfpg {

// Property keys and kind values used on RDF-like vertices. None of them is an
// absolute IRI, so they never collide with edge property keys.
namespace keys {
inline const std::string kKind = "kind";
inline const std::string kIri = "IRI";
inline const std::string kLiteral = "literal";
inline const std::string kDatatype = "datatype";
inline const std::string kLanguage = "language";

inline const std::string kKindIri = "IRI";
inline const std::string kKindBlank = "blank node";
inline const std::string kKindLiteral = "literal";
}  // namespace keys

// ---------------------------------------------------------------------------
// Convertibility

enum class Condition {
  NestedMetadata = 1,   // an embedded subject is itself a metadata triple
  EmbeddedObject = 2,   // a triple appears in object position
  NonLiteralMetadata = 3,  // a metadata triple's object is not a literal
  LiteralWithoutValue = 4,  // a literal has no property value
  Strong = 5,           // metadata about an attribute triple
};

inline std::string condition_id(Condition c) {
  return c == Condition::Strong ? "strong" : std::to_string(static_cast<int>(c));
}

struct Violation {
  Triple triple;
  Condition condition;
  std::string reason;
};

struct ConvertibilityReport {
  std::vector<Violation> violations;
  bool convertible() const { return violations.empty(); }
};

/// The value stored on the literal vertex of `l`: vm⁻¹(l), or the lexical form
/// of a language-tagged literal (whose tag goes into a separate property).
inline std::optional<PropertyValue> literal_vertex_value(const Literal& l, LiteralMode mode = LiteralMode::Lenient) {
  if (l.language()) return PropertyValue::of_text(l.lexical());
  return vm_inverse(l, mode);
}

namespace detail {

inline std::string describe(const Literal& l) {
  std::string s = "\"" + l.lexical() + "\"";
  return l.language() ? s + "@" + *l.language() : s + "^^<" + l.datatype().str() + ">";
}

// Condition 4. Literals in object position of an ordinary triple become
// literal vertices; all other literals become property values.
inline void check_literals(const Triple& top, const Triple& t, LiteralMode mode, std::set<Literal>& reported,
                           ConvertibilityReport& report) {
  if (const auto* l = std::get_if<Literal>(&t.object())) {
    bool vertex = !is_metadata_triple(t);
    bool ok = vertex ? literal_vertex_value(*l, mode).has_value() : vm_inverse(*l, mode).has_value();
    if (!ok && reported.insert(*l).second) {
      report.violations.push_back({top, Condition::LiteralWithoutValue,
                                   "literal " + describe(*l) + " has no property value"});
    }
  }
  for (const Term* pos : {&t.subject(), &t.object()}) {
    if (const Triple* inner = as_triple(*pos)) check_literals(top, *inner, mode, reported, report);
  }
}

inline void check_triple(const Triple& t, LiteralMode mode, ConvertibilityReport& report) {
  const Triple* s = as_triple(t.subject());
  if (s && is_metadata_triple(*s))
    report.violations.push_back({t, Condition::NestedMetadata, "embedded subject is itself a metadata triple"});
  if (is_triple(t.object()))
    report.violations.push_back({t, Condition::EmbeddedObject, "object is an embedded triple"});
  if (s && !is_literal(t.object()))
    report.violations.push_back({t, Condition::NonLiteralMetadata, "object of a metadata triple is not a literal"});
  std::set<Literal> reported;
  check_literals(t, t, mode, reported, report);
}

inline void collect_embedded_attribute_triples(const Triple& t, std::vector<const Triple*>& out) {
  for (const Term* pos : {&t.subject(), &t.object()}) {
    if (const Triple* inner = as_triple(*pos)) {
      if (is_literal(inner->object())) out.push_back(inner);
      collect_embedded_attribute_triples(*inner, out);
    }
  }
}

}  // namespace detail

/// Whether `g` can be turned into an RDF-like property graph.
inline ConvertibilityReport check_pg_convertible(const Graph& g, LiteralMode mode = LiteralMode::Lenient) {
  ConvertibilityReport report;
  for (const Triple& t : g) detail::check_triple(t, mode, report);
  return report;
}

/// Whether `g` can be turned into a simple property graph: convertible, no
/// metadata about attribute triples, and every attribute value in dom(vm⁻¹).
inline ConvertibilityReport check_strongly_pg_convertible(const Graph& g, LiteralMode mode = LiteralMode::Lenient) {
  ConvertibilityReport report;
  for (const Triple& t : g) {
    detail::check_triple(t, mode, report);
    if (const auto* l = std::get_if<Literal>(&t.object()); l && !is_metadata_triple(t) && l->language()) {
      report.violations.push_back({t, Condition::LiteralWithoutValue,
                                   "language-tagged literal " + detail::describe(*l) +
                                       " cannot become a vertex property value"});
    }
    std::vector<const Triple*> attributes;
    detail::collect_embedded_attribute_triples(t, attributes);
    if (!attributes.empty())
      report.violations.push_back({t, Condition::Strong, "metadata about an attribute triple (literal object)"});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Term sets

/// Non-triple terms in subject or object position of ord(g).
inline std::set<Term> so_terms_plus(const Graph& g) {
  std::set<Term> out;
  for (const Triple& t : ord(g)) {
    out.insert(t.subject());
    out.insert(t.object());
  }
  return out;
}

/// Ordinary attribute triples (literal object).
inline std::set<Triple> ord_attributes(const Graph& g) {
  std::set<Triple> out;
  for (const Triple& t : ord(g)) {
    if (is_literal(t.object())) out.insert(t);
  }
  return out;
}

/// Ordinary relationship triples (IRI or blank node object).
inline std::set<Triple> ord_relationships(const Graph& g) {
  std::set<Triple> out;
  for (const Triple& t : ord(g)) {
    if (is_iri(t.object()) || is_blank(t.object())) out.insert(t);
  }
  return out;
}

/// IRIs and blank nodes in subject or object position of ord(g).
inline std::set<Term> so_plus(const Graph& g) {
  std::set<Term> out;
  for (const Term& x : so_terms_plus(g)) {
    if (!is_literal(x)) out.insert(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Errors

class NotConvertible : public Error {
 public:
  explicit NotConvertible(ConvertibilityReport report, const char* what = "graph is not PG-convertible")
      : Error(what), report_(std::move(report)) {}
  const ConvertibilityReport& report() const { return report_; }

 private:
  ConvertibilityReport report_;
};

class NotStronglyConvertible : public NotConvertible {
 public:
  explicit NotStronglyConvertible(ConvertibilityReport report)
      : NotConvertible(std::move(report), "graph is not strongly PG-convertible") {}
};

class NotPropertyUnique : public Error {
 public:
  explicit NotPropertyUnique(PropertyUniquenessReport report)
      : Error("property graph is not property-unique"), report_(std::move(report)) {}
  const PropertyUniquenessReport& report() const { return report_; }

 private:
  PropertyUniquenessReport report_;
};

class NotEdgeUnique : public Error {
 public:
  explicit NotEdgeUnique(EdgeUniquenessReport report)
      : Error("property graph is not edge-unique"), report_(std::move(report)) {}
  const EdgeUniquenessReport& report() const { return report_; }

 private:
  EdgeUniquenessReport report_;
};

class MalformedRdfLikePg : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// RDF-star → Property Graph

struct RdfLikePgResult {
  PropertyGraph graph;
  std::map<Term, VertexId> vertex_of;
  std::map<VertexId, Term> term_of;
  std::map<Triple, EdgeId> edge_of;
  std::map<EdgeId, Triple> triple_of;
};

struct SimplePgResult {
  PropertyGraph graph;
  std::map<Term, VertexId> vertex_of;
  std::map<VertexId, Term> term_of;
  std::map<Triple, EdgeId> edge_of;
  std::map<EdgeId, Triple> triple_of;
};

namespace detail {

// Edge properties contributed by metadata triples, keyed by their subject.
inline std::map<Triple, PropertySet> metadata_properties(const Graph& g, LiteralMode mode) {
  std::map<Triple, PropertySet> out;
  for (const Triple& m : meta(g)) {
    const Triple* subject = as_triple(m.subject());
    const auto& object = std::get<Literal>(m.object());
    out[*subject].insert(Property{im(m.predicate()), *vm_inverse(object, mode)});
  }
  return out;
}

template <typename Result>
void number_vertices(const std::set<Term>& terms, Result& r) {
  std::size_t n = 0;
  for (const Term& x : terms) {
    VertexId id = "v" + std::to_string(++n);
    r.vertex_of.emplace(x, id);
    r.term_of.emplace(id, x);
  }
}

template <typename Result>
void number_edges(const std::set<Triple>& triples, Result& r) {
  std::size_t n = 0;
  for (const Triple& t : triples) {
    EdgeId id = "e" + std::to_string(++n);
    r.edge_of.emplace(t, id);
    r.triple_of.emplace(id, t);
  }
}

}  // namespace detail

/// The RDF-like property graph representation. Vertices are v1, v2, ... in
/// term order; edges e1, e2, ... in triple order.
inline RdfLikePgResult to_rdf_like_pg(const Graph& g, LiteralMode mode = LiteralMode::Lenient) {
  if (auto report = check_pg_convertible(g, mode); !report.convertible()) throw NotConvertible(std::move(report));

  RdfLikePgResult r;
  std::set<Triple> ordinary = ord(g);
  detail::number_vertices(so_terms_plus(g), r);
  detail::number_edges(ordinary, r);

  PropertyGraphBuilder builder;
  for (const auto& [term, id] : r.vertex_of) {
    PropertySet props;
    if (const auto* i = std::get_if<Iri>(&term)) {
      props = {{keys::kKind, PropertyValue::of_text(keys::kKindIri)}, {keys::kIri, PropertyValue::of_text(im(*i))}};
    } else if (is_blank(term)) {
      props = {{keys::kKind, PropertyValue::of_text(keys::kKindBlank)}};
    } else {
      const auto& l = std::get<Literal>(term);
      props = {{keys::kKind, PropertyValue::of_text(keys::kKindLiteral)},
               {keys::kLiteral, *literal_vertex_value(l, mode)},
               {keys::kDatatype, PropertyValue::of_text(im(l.datatype()))}};
      if (l.language()) props.insert({keys::kLanguage, PropertyValue::of_text(*l.language())});
    }
    builder.add_vertex(id, std::move(props));
  }

  auto edge_props = detail::metadata_properties(g, mode);
  for (const auto& [t, id] : r.edge_of) {
    auto it = edge_props.find(t);
    builder.add_edge(id, r.vertex_of.at(t.subject()), r.vertex_of.at(t.object()), im(t.predicate()),
                     it == edge_props.end() ? PropertySet{} : it->second);
  }
  r.graph = builder.build();
  return r;
}

/// The simple property graph representation.
inline SimplePgResult to_simple_pg(const Graph& g, LiteralMode mode = LiteralMode::Lenient) {
  if (auto report = check_strongly_pg_convertible(g, mode); !report.convertible())
    throw NotStronglyConvertible(std::move(report));

  SimplePgResult r;
  detail::number_vertices(so_plus(g), r);
  detail::number_edges(ord_relationships(g), r);

  std::map<Term, PropertySet> vertex_props;
  for (const auto& [term, id] : r.vertex_of) {
    if (const auto* i = std::get_if<Iri>(&term)) vertex_props[term].insert({keys::kIri, PropertyValue::of_text(im(*i))});
  }
  for (const Triple& t : ord_attributes(g)) {
    vertex_props[t.subject()].insert(
        Property{im(t.predicate()), *vm_inverse(std::get<Literal>(t.object()), mode)});
  }

  PropertyGraphBuilder builder;
  for (const auto& [term, id] : r.vertex_of) builder.add_vertex(id, vertex_props[term]);
  auto edge_props = detail::metadata_properties(g, mode);
  for (const auto& [t, id] : r.edge_of) {
    auto it = edge_props.find(t);
    builder.add_edge(id, r.vertex_of.at(t.subject()), r.vertex_of.at(t.object()), im(t.predicate()),
                     it == edge_props.end() ? PropertySet{} : it->second);
  }
  r.graph = builder.build();
  return r;
}

// ---------------------------------------------------------------------------
// RDF-like Property Graph → RDF-star

/// Rebuilds the literal of a literal vertex from its recorded value, datatype
/// and language. Without a datatype the literal is vm(value).
inline Literal reconstruct_literal(const PropertyValue& value, const std::optional<Iri>& datatype,
                                   const std::optional<std::string>& language) {
  using K = PropertyValue::Kind;
  if (language) {
    if (value.kind() != K::Text) throw MalformedRdfLikePg("language-tagged literal vertex needs a text value");
    if (datatype && datatype->str() != vocab::kRdfLangString)
      throw MalformedRdfLikePg("language-tagged literal vertex must have datatype rdf:langString");
    if (!is_valid_language_tag(*language)) throw MalformedRdfLikePg("malformed language tag '" + *language + "'");
    return Literal::lang_string(value.text(), *language);
  }
  Literal canonical = vm(value);
  if (!datatype || *datatype == canonical.datatype()) return canonical;
  if (datatype->str() == vocab::kRdfLangString)
    throw MalformedRdfLikePg("rdf:langString literal vertex without a language");
  if (value.kind() == K::Double && datatype->str() == vocab::kXsdDecimal) {
    if (auto lex = lexical::canonical_decimal(value.real())) return Literal(*lex, *datatype);
    throw MalformedRdfLikePg("infinite value recorded as xsd:decimal");
  }
  if (value.kind() == K::Text) return Literal(value.text(), *datatype);
  throw MalformedRdfLikePg("literal value is inconsistent with datatype <" + datatype->str() + ">");
}

namespace detail {

inline const PropertyValue* single(const std::map<std::string, std::vector<const PropertyValue*>>& by_key,
                                   const std::string& key, const VertexId& v, bool required) {
  auto it = by_key.find(key);
  if (it == by_key.end()) {
    if (required) throw MalformedRdfLikePg("vertex '" + v + "' lacks a \"" + key + "\" property");
    return nullptr;
  }
  if (it->second.size() != 1) throw MalformedRdfLikePg("vertex '" + v + "' has several \"" + key + "\" properties");
  return it->second.front();
}

inline const std::string& text_of(const PropertyValue* value, const std::string& key, const VertexId& v) {
  if (value->kind() != PropertyValue::Kind::Text)
    throw MalformedRdfLikePg("property \"" + key + "\" of vertex '" + v + "' must be text");
  return value->text();
}

inline Term vertex_term(const PropertyGraph& pg, const VertexId& v, std::size_t& blank_count) {
  std::map<std::string, std::vector<const PropertyValue*>> by_key;
  for (const Property& p : pg.properties(v)) by_key[p.key].push_back(&p.value);

  const std::string& kind = text_of(single(by_key, keys::kKind, v, true), keys::kKind, v);
  auto only = [&](std::initializer_list<const std::string*> allowed) {
    for (const auto& [key, values] : by_key) {
      bool ok = false;
      for (const std::string* a : allowed) ok = ok || *a == key;
      if (!ok) throw MalformedRdfLikePg("unexpected property \"" + key + "\" on " + kind + " vertex '" + v + "'");
    }
  };

  if (kind == keys::kKindIri) {
    only({&keys::kKind, &keys::kIri});
    const std::string& text = text_of(single(by_key, keys::kIri, v, true), keys::kIri, v);
    auto iri = im_inverse(text);
    if (!iri) throw MalformedRdfLikePg("vertex '" + v + "' carries an invalid IRI '" + text + "'");
    return *iri;
  }
  if (kind == keys::kKindBlank) {
    only({&keys::kKind});
    return BlankNode("b" + std::to_string(++blank_count));
  }
  if (kind == keys::kKindLiteral) {
    only({&keys::kKind, &keys::kLiteral, &keys::kDatatype, &keys::kLanguage});
    const PropertyValue& value = *single(by_key, keys::kLiteral, v, true);
    std::optional<Iri> datatype;
    if (const auto* dt = single(by_key, keys::kDatatype, v, false)) {
      datatype = im_inverse(text_of(dt, keys::kDatatype, v));
      if (!datatype) throw MalformedRdfLikePg("vertex '" + v + "' carries an invalid datatype IRI");
    }
    std::optional<std::string> language;
    if (const auto* lang = single(by_key, keys::kLanguage, v, false)) language = text_of(lang, keys::kLanguage, v);
    return reconstruct_literal(value, datatype, language);
  }
  throw MalformedRdfLikePg("vertex '" + v + "' has unknown kind '" + kind + "'");
}

}  // namespace detail

/// Inverse of to_rdf_like_pg(). Edges without properties become top-level
/// triples; each edge property becomes a metadata triple about the edge's
/// triple, which is then not asserted on its own (the result is minimal).
/// Blank-node vertices get fresh labels b1, b2, ... in vertex id order.
inline Graph from_rdf_like_pg(const PropertyGraph& pg) {
  std::map<VertexId, Term> term_of;
  std::map<Term, VertexId> vertex_of;
  std::size_t blank_count = 0;
  for (const VertexId& v : pg.vertices()) {
    Term term = detail::vertex_term(pg, v, blank_count);
    if (auto [it, inserted] = vertex_of.emplace(term, v); !inserted)
      throw MalformedRdfLikePg("vertices '" + it->second + "' and '" + v + "' denote the same term");
    term_of.emplace(v, std::move(term));
  }

  std::set<Triple> out;
  std::map<Triple, EdgeId> edge_of;
  for (const EdgeId& e : pg.edges()) {
    const Term& s = term_of.at(pg.src(e));
    if (is_literal(s)) throw MalformedRdfLikePg("edge '" + e + "' starts at a literal vertex");
    auto p = im_inverse(pg.label(e));
    if (!p) throw MalformedRdfLikePg("label of edge '" + e + "' is not an IRI: '" + pg.label(e) + "'");
    Triple t(s, *p, term_of.at(pg.tgt(e)));
    if (auto [it, inserted] = edge_of.emplace(t, e); !inserted)
      throw MalformedRdfLikePg("edges '" + it->second + "' and '" + e + "' denote the same triple");

    const PropertySet& props = pg.properties(e);
    if (props.empty()) {
      out.insert(t);
      continue;
    }
    for (const Property& prop : props) {
      auto key = im_inverse(prop.key);
      if (!key) throw MalformedRdfLikePg("property key '" + prop.key + "' of edge '" + e + "' is not an IRI");
      out.insert(Triple(EmbeddedTriple(t), *key, vm(prop.value)));
    }
  }
  return Graph(std::move(out));
}

namespace detail {

inline Triple normalize_ordinary(const Triple& t, LiteralMode mode) {
  const auto* l = std::get_if<Literal>(&t.object());
  if (!l) return t;
  Literal rebuilt = reconstruct_literal(*literal_vertex_value(*l, mode), l->datatype(), l->language());
  return Triple(t.subject(), t.predicate(), rebuilt);
}

}  // namespace detail

/// The graph that the RDF-like round trip reproduces for a minimal,
/// PG-convertible `g`: literal vertices keep their datatype but get its
/// canonical lexical form; property values come back as vm(vm⁻¹(l)).
/// Identity for graphs whose literals are already in those forms.
inline Graph rdf_like_round_trip_form(const Graph& g, LiteralMode mode = LiteralMode::Lenient) {
  std::set<Triple> out;
  for (const Triple& t : g) {
    if (const Triple* s = as_triple(t.subject())) {
      Literal value = vm(*vm_inverse(std::get<Literal>(t.object()), mode));
      out.insert(Triple(EmbeddedTriple(detail::normalize_ordinary(*s, mode)), t.predicate(), value));
    } else {
      out.insert(detail::normalize_ordinary(t, mode));
    }
  }
  return Graph(std::move(out));
}

// ---------------------------------------------------------------------------
// Property Graph → RDF-star

/// The (id, lm, km)-specific RDF-star representation of `pg`.
inline Graph pg_to_rdf_star(const PropertyGraph& pg, const VertexIdentityStrategy& strategy,
                            const TemplateIriMapping& edge_labels, const TemplateIriMapping& property_keys) {
  if (auto report = is_property_unique(pg); !report.unique()) throw NotPropertyUnique(std::move(report));
  if (auto report = is_edge_unique(pg); !report.unique()) throw NotEdgeUnique(std::move(report));

  std::map<VertexId, Term> id = assign_vertex_identities(strategy, pg);
  std::set<Triple> out;
  for (const VertexId& v : pg.vertices()) {
    for (const Property& p : pg.properties(v)) out.insert(Triple(id.at(v), property_keys.apply(p.key), vm(p.value)));
  }
  for (const EdgeId& e : pg.edges()) {
    Triple edge(id.at(pg.src(e)), edge_labels.apply(pg.label(e)), id.at(pg.tgt(e)));
    const PropertySet& props = pg.properties(e);
    if (props.empty()) out.insert(edge);
    for (const Property& p : props) out.insert(Triple(EmbeddedTriple(edge), property_keys.apply(p.key), vm(p.value)));
  }
  return Graph(std::move(out));
}

inline Graph pg_to_rdf_star(const PropertyGraph& pg, const MappingConfig& config = {}) {
  config.validate();
  return pg_to_rdf_star(pg, config.vertex_ids, config.edge_labels, config.property_keys);
}

}  // namespace rdfpg
