#pragma once

// RDF-star terms, triples and graphs.
//
// All values are immutable. Terms are totally ordered (IRI < blank node <
// literal < embedded triple, lexicographic within a kind, embedded triples
// position-wise), which gives graphs a deterministic iteration order.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <ranges>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "rdfpg/error.hpp"

namespace rdfpg {

namespace vocab {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

inline const std::string kRdfType = std::string(kRdf) + "type";
inline const std::string kRdfStatement = std::string(kRdf) + "Statement";
inline const std::string kRdfSubject = std::string(kRdf) + "subject";
inline const std::string kRdfPredicate = std::string(kRdf) + "predicate";
inline const std::string kRdfObject = std::string(kRdf) + "object";
inline const std::string kRdfLangString = std::string(kRdf) + "langString";

inline const std::string kXsdString = std::string(kXsd) + "string";
inline const std::string kXsdInteger = std::string(kXsd) + "integer";
inline const std::string kXsdDecimal = std::string(kXsd) + "decimal";
inline const std::string kXsdDouble = std::string(kXsd) + "double";
inline const std::string kXsdBoolean = std::string(kXsd) + "boolean";
}  // namespace vocab

namespace detail {

inline bool is_ascii_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_ascii_alnum(char c) { return is_ascii_alpha(c) || is_ascii_digit(c); }

// Characters that cannot appear inside a Turtle IRIREF.
inline bool is_forbidden_iri_char(char c) {
  auto u = static_cast<unsigned char>(c);
  if (u <= 0x20) return true;
  switch (c) {
    case '<': case '>': case '"': case '{': case '}':
    case '|': case '^': case '`': case '\\':
      return true;
    default:
      return false;
  }
}

}  // namespace detail

/// An absolute IRI. Validation is shallow: a scheme followed by `:` and no
/// whitespace or characters that Turtle forbids inside `<...>`.
class Iri {
 public:
  explicit Iri(std::string value) : value_(std::move(value)) {
    if (!is_valid(value_)) throw InvalidTerm("invalid IRI: '" + value_ + "'");
  }

  static bool is_valid(std::string_view s) {
    auto colon = s.find(':');
    if (colon == std::string_view::npos || colon == 0) return false;
    if (!detail::is_ascii_alpha(s[0])) return false;
    for (std::size_t i = 1; i < colon; ++i) {
      char c = s[i];
      if (!(detail::is_ascii_alnum(c) || c == '+' || c == '-' || c == '.')) return false;
    }
    return std::none_of(s.begin(), s.end(), detail::is_forbidden_iri_char);
  }

  const std::string& str() const { return value_; }

  auto operator<=>(const Iri&) const = default;

 private:
  std::string value_;
};

/// A blank node, identified by a label that is only meaningful within one graph.
class BlankNode {
 public:
  explicit BlankNode(std::string label) : label_(std::move(label)) {
    if (!is_valid(label_)) throw InvalidTerm("invalid blank node label: '" + label_ + "'");
  }

  static bool is_valid(std::string_view s) {
    return !s.empty() && detail::is_ascii_alpha(s[0]) &&
           std::all_of(s.begin(), s.end(), detail::is_ascii_alnum);
  }

  const std::string& label() const { return label_; }

  auto operator<=>(const BlankNode&) const = default;

 private:
  std::string label_;
};

/// Well-formedness of a language tag: `[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*`.
inline bool is_valid_language_tag(std::string_view tag) {
  std::size_t i = 0;
  bool first = true;
  while (true) {
    std::size_t start = i;
    while (i < tag.size() && tag[i] != '-') {
      if (first ? !detail::is_ascii_alpha(tag[i]) : !detail::is_ascii_alnum(tag[i])) return false;
      ++i;
    }
    std::size_t len = i - start;
    if (len == 0 || len > 8) return false;
    if (i == tag.size()) return true;
    ++i;  // '-'
    first = false;
  }
}

/// An RDF literal: lexical form, datatype IRI and an optional language tag.
/// A language tag is present exactly when the datatype is rdf:langString.
class Literal {
 public:
  Literal(std::string lexical, Iri datatype)
      : lexical_(std::move(lexical)), datatype_(std::move(datatype)) {
    if (datatype_.str() == vocab::kRdfLangString)
      throw InvalidTerm("rdf:langString literal requires a language tag");
  }

  static Literal typed(std::string lexical, std::string_view datatype) {
    return Literal(std::move(lexical), Iri(std::string(datatype)));
  }

  static Literal string(std::string lexical) { return typed(std::move(lexical), vocab::kXsdString); }

  static Literal lang_string(std::string lexical, std::string language) {
    if (!is_valid_language_tag(language))
      throw InvalidTerm("malformed language tag: '" + language + "'");
    return Literal(std::move(lexical), std::move(language));
  }

  const std::string& lexical() const { return lexical_; }
  const Iri& datatype() const { return datatype_; }
  const std::optional<std::string>& language() const { return language_; }

  auto operator<=>(const Literal&) const = default;

 private:
  Literal(std::string lexical, std::string language)
      : lexical_(std::move(lexical)),
        datatype_(std::string(vocab::kRdfLangString)),
        language_(std::move(language)) {}

  std::string lexical_;
  Iri datatype_;
  std::optional<std::string> language_;
};

class Triple;

/// A triple used as a term. Shares the (immutable) triple; compares by value.
class EmbeddedTriple {
 public:
  EmbeddedTriple(Triple triple);  // NOLINT(google-explicit-constructor)

  const Triple& triple() const { return *triple_; }

  friend std::strong_ordering operator<=>(const EmbeddedTriple& a, const EmbeddedTriple& b);
  friend bool operator==(const EmbeddedTriple& a, const EmbeddedTriple& b);

 private:
  std::shared_ptr<const Triple> triple_;
};

/// Any RDF-star term. Subjects are restricted to IRI, blank node or triple.
using Term = std::variant<Iri, BlankNode, Literal, EmbeddedTriple>;

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline bool is_blank(const Term& t) { return std::holds_alternative<BlankNode>(t); }
inline bool is_literal(const Term& t) { return std::holds_alternative<Literal>(t); }
inline bool is_triple(const Term& t) { return std::holds_alternative<EmbeddedTriple>(t); }

/// Returns the embedded triple of `t`, or nullptr when `t` is an RDF term.
inline const Triple* as_triple(const Term& t) {
  const auto* e = std::get_if<EmbeddedTriple>(&t);
  return e ? &e->triple() : nullptr;
}

class Triple {
 public:
  Triple(Term subject, Iri predicate, Term object)
      : subject_(std::move(subject)), predicate_(std::move(predicate)), object_(std::move(object)) {
    if (is_literal(subject_)) throw InvalidTerm("a literal cannot be the subject of a triple");
  }

  const Term& subject() const { return subject_; }
  const Iri& predicate() const { return predicate_; }
  const Term& object() const { return object_; }

  friend std::strong_ordering operator<=>(const Triple& a, const Triple& b) {
    if (auto c = a.subject_ <=> b.subject_; c != 0) return c;
    if (auto c = a.predicate_ <=> b.predicate_; c != 0) return c;
    return a.object_ <=> b.object_;
  }
  friend bool operator==(const Triple& a, const Triple& b) {
    return a.predicate_ == b.predicate_ && a.subject_ == b.subject_ && a.object_ == b.object_;
  }

 private:
  Term subject_;
  Iri predicate_;
  Term object_;
};

inline EmbeddedTriple::EmbeddedTriple(Triple triple)
    : triple_(std::make_shared<const Triple>(std::move(triple))) {}

inline std::strong_ordering operator<=>(const EmbeddedTriple& a, const EmbeddedTriple& b) {
  if (a.triple_ == b.triple_) return std::strong_ordering::equal;
  return *a.triple_ <=> *b.triple_;
}

inline bool operator==(const EmbeddedTriple& a, const EmbeddedTriple& b) {
  return a.triple_ == b.triple_ || *a.triple_ == *b.triple_;
}

/// A finite set of RDF-star triples under structural equality.
class Graph {
 public:
  using const_iterator = std::set<Triple>::const_iterator;

  Graph() = default;
  Graph(std::initializer_list<Triple> triples) : triples_(triples) {}
  explicit Graph(std::set<Triple> triples) : triples_(std::move(triples)) {}

  template <std::ranges::input_range R>
    requires std::convertible_to<std::ranges::range_reference_t<R>, const Triple&>
  explicit Graph(R&& triples) : triples_(std::ranges::begin(triples), std::ranges::end(triples)) {}

  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  bool contains(const Triple& t) const { return triples_.contains(t); }
  const_iterator begin() const { return triples_.begin(); }
  const_iterator end() const { return triples_.end(); }
  const std::set<Triple>& triples() const { return triples_; }

  bool operator==(const Graph&) const = default;

 private:
  std::set<Triple> triples_;
};

// ---------------------------------------------------------------------------
// Classification

/// Smallest k such that `t` is k-nested.
inline std::size_t nesting_depth(const Triple& t) {
  std::size_t depth = 0;
  for (const Term* pos : {&t.subject(), &t.object()}) {
    if (const Triple* inner = as_triple(*pos)) depth = std::max(depth, 1 + nesting_depth(*inner));
  }
  return depth;
}

inline bool is_metadata_triple(const Triple& t) {
  return is_triple(t.subject()) || is_triple(t.object());
}

namespace detail {

inline void collect_terms(const Triple& t, std::set<Term>& out) {
  out.insert(t.subject());
  out.insert(Term(t.predicate()));
  out.insert(t.object());
  for (const Term* pos : {&t.subject(), &t.object()}) {
    if (const Triple* inner = as_triple(*pos)) collect_terms(*inner, out);
  }
}

inline void collect_embedded(const Triple& t, std::set<Triple>& out) {
  for (const Term* pos : {&t.subject(), &t.object()}) {
    if (const Triple* inner = as_triple(*pos)) {
      out.insert(*inner);
      collect_embedded(*inner, out);
    }
  }
}

}  // namespace detail

/// All RDF terms and triples mentioned (recursively) in `t`.
inline std::set<Term> terms_plus(const Triple& t) {
  std::set<Term> out;
  detail::collect_terms(t, out);
  return out;
}

inline std::set<Term> terms_plus(const Graph& g) {
  std::set<Term> out;
  for (const Triple& t : g) detail::collect_terms(t, out);
  return out;
}

/// Triples embedded (recursively) in the triples of `g`.
inline std::set<Triple> trefs(const Graph& g) {
  std::set<Triple> out;
  for (const Triple& t : g) detail::collect_embedded(t, out);
  return out;
}

/// Metadata triples of `g`.
inline std::set<Triple> meta(const Graph& g) {
  std::set<Triple> out;
  for (const Triple& t : g) {
    if (is_metadata_triple(t)) out.insert(t);
  }
  return out;
}

/// Ordinary triples of `g`: (G ∪ trefs(G)) \ meta(G).
inline std::set<Triple> ord(const Graph& g) {
  std::set<Triple> all = trefs(g);
  all.insert(g.begin(), g.end());
  std::set<Triple> out;
  for (const Triple& t : all) {
    if (!is_metadata_triple(t) || !g.contains(t)) out.insert(t);
  }
  // Metadata triples embedded in other triples are not in meta(G) and stay.
  return out;
}

/// Triples of `g` that also occur embedded in another triple of `g`.
inline std::set<Triple> find_redundant(const Graph& g) {
  std::set<Triple> out;
  for (const Triple& t : trefs(g)) {
    if (g.contains(t)) out.insert(t);
  }
  return out;
}

inline bool is_minimal(const Graph& g) { return find_redundant(g).empty(); }

/// Removes every redundant triple. One pass suffices: dropping a top-level
/// triple never changes which triples are embedded elsewhere.
inline Graph minimize(const Graph& g) {
  std::set<Triple> redundant = find_redundant(g);
  std::set<Triple> kept;
  for (const Triple& t : g) {
    if (!redundant.contains(t)) kept.insert(t);
  }
  return Graph(std::move(kept));
}

/// Blank nodes mentioned anywhere in `g`, including inside embedded triples.
inline std::set<BlankNode> blank_nodes(const Graph& g) {
  std::set<BlankNode> out;
  for (const Term& term : terms_plus(g)) {
    if (const auto* b = std::get_if<BlankNode>(&term)) out.insert(*b);
  }
  return out;
}

}  // namespace rdfpg
