#pragma once

// Shared fixtures for the test binaries: the alice/bob and kubrick/welles
// graphs built by hand, an id-independent rendering of property graphs, and
// seeded random generators.

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <tuple>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rdfpg/rdfpg.hpp"

namespace fixtures {

using namespace rdfpg;

inline const std::string kEx = "http://example.org/";
inline const std::string kFoaf = "http://xmlns.com/foaf/0.1/";

inline Iri ex(const std::string& local) { return Iri(kEx + local); }
inline Iri foaf(const std::string& local) { return Iri(kFoaf + local); }
inline Literal str(const std::string& s) { return Literal::string(s); }
inline Literal integer(const std::string& s) { return Literal::typed(s, vocab::kXsdInteger); }
inline Literal decimal(const std::string& s) { return Literal::typed(s, vocab::kXsdDecimal); }
inline Literal dbl(const std::string& s) { return Literal::typed(s, vocab::kXsdDouble); }
inline Triple embedded_subject(const Triple& t, const Iri& p, Term o) { return Triple(EmbeddedTriple(t), p, std::move(o)); }

inline Triple alice_knows_bob() { return Triple(ex("alice"), foaf("knows"), ex("bob")); }
inline Triple bob_age() { return Triple(ex("bob"), foaf("age"), integer("23")); }

/// Four triples: two ordinary name triples and two certainty annotations.
inline Graph alice_bob() {
  return Graph{
      embedded_subject(alice_knows_bob(), ex("certainty"), decimal("0.5")),
      Triple(ex("alice"), foaf("name"), str("Alice")),
      Triple(ex("bob"), foaf("name"), str("Bob")),
      embedded_subject(bob_age(), ex("certainty"), decimal("0.9")),
  };
}

/// alice_bob() without the annotation on the age triple.
inline Graph alice_bob_strong() {
  return Graph{
      embedded_subject(alice_knows_bob(), ex("certainty"), decimal("0.5")),
      Triple(ex("alice"), foaf("name"), str("Alice")),
      Triple(ex("bob"), foaf("name"), str("Bob")),
  };
}

/// Two directors, a "mentioned" edge without properties and an
/// "influencedBy" edge with certainty 0.8.
inline PropertyGraph kubrick_welles() {
  PropertyGraphBuilder b;
  b.add_vertex("Kubrick", {{"name", PropertyValue::of_text("Stanley Kubrick")},
                           {"birthyear", PropertyValue::of_integer(1928)}});
  b.add_vertex("Welles", {{"name", PropertyValue::of_text("Orson Welles")}});
  b.add_edge("e1", "Welles", "Kubrick", "mentioned");
  b.add_edge("e2", "Kubrick", "Welles", "influencedBy", {{"certainty", PropertyValue::of_double(0.8)}});
  return b.build();
}

/// The RDF-star graph expected from kubrick_welles() under the default
/// prefixes. Lexical forms frozen by hand: 1928 → "1928", 0.8 → "0.8E0".
inline Graph kubrick_welles_rdf() {
  const std::string p = "http://example.org/property/", r = "http://example.org/relationship/";
  BlankNode k("b1"), w("b2");
  return Graph{
      Triple(k, Iri(p + "name"), str("Stanley Kubrick")),
      Triple(k, Iri(p + "birthyear"), integer("1928")),
      Triple(w, Iri(p + "name"), str("Orson Welles")),
      Triple(w, Iri(r + "mentioned"), k),
      embedded_subject(Triple(k, Iri(r + "influencedBy"), w), Iri(p + "certainty"), dbl("0.8E0")),
  };
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// ---------------------------------------------------------------------------
// Id-independent rendering of a property graph

inline std::string render(const PropertyValue& v) {
  switch (v.kind()) {
    case PropertyValue::Kind::Text: return "\"" + v.text() + "\"";
    case PropertyValue::Kind::Integer: return "int:" + v.integer().str();
    case PropertyValue::Kind::Double: return "dbl:" + lexical::canonical_double(v.real());
    case PropertyValue::Kind::Boolean: return v.boolean() ? "true" : "false";
  }
  return "?";
}

inline std::string render(const PropertySet& props) {
  std::string out = "{";
  for (const Property& p : props) out += p.key + "=" + render(p.value) + ";";
  return out + "}";
}

/// Sorted lines "vertex {props}" and "edge {src} -label-> {tgt} {props}".
/// Equal for two graphs that differ only in vertex and edge ids, as long as
/// vertices have distinct property sets.
inline std::vector<std::string> shape(const PropertyGraph& g) {
  std::vector<std::string> lines;
  for (const VertexId& v : g.vertices()) lines.push_back("vertex " + render(g.properties(v)));
  for (const EdgeId& e : g.edges()) {
    lines.push_back("edge " + render(g.properties(g.src(e))) + " -" + g.label(e) + "-> " +
                    render(g.properties(g.tgt(e))) + " " + render(g.properties(e)));
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

// ---------------------------------------------------------------------------
// Random generators

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline std::string random_text(Rng& rng, std::size_t max_len = 8) {
  static const std::vector<std::string> pieces = {"a", "b", "Z", "0", "7", " ", "\"", "\\", "'", "\n", "\t", "\r",
                                                  "#", "<", ">", "@", ":", "%", "_", "é", "日本", "\x01", "\x7f"};
  std::string s;
  std::size_t n = pick(rng, max_len + 1);
  for (std::size_t i = 0; i < n; ++i) s += pieces[pick(rng, pieces.size())];
  return s;
}

inline double random_double(Rng& rng) {
  switch (pick(rng, 6)) {
    case 0: return static_cast<double>(static_cast<std::int64_t>(pick(rng, 2001)) - 1000) / 8.0;
    case 1: return std::uniform_real_distribution<double>(-1e6, 1e6)(rng);
    case 2: return std::ldexp(std::uniform_real_distribution<double>(0.5, 1.0)(rng), static_cast<int>(pick(rng, 200)) - 100);
    case 3: return coin(rng) ? 0.0 : -0.0;
    case 4: return coin(rng) ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    default: return static_cast<double>(pick(rng, 100)) / 10.0;
  }
}

inline BigInt random_integer(Rng& rng) {
  BigInt n = static_cast<long long>(pick(rng, 2001)) - 1000;
  if (coin(rng, 0.2)) n = n * (BigInt(1) << 80) + static_cast<long long>(pick(rng, 1000));
  return n;
}

inline PropertyValue random_value(Rng& rng) {
  switch (pick(rng, 4)) {
    case 0: return PropertyValue::of_text(random_text(rng));
    case 1: return PropertyValue::of_integer(random_integer(rng));
    case 2: return PropertyValue::of_double(random_double(rng));
    default: return PropertyValue::of_bool(coin(rng));
  }
}

/// Literals that to_rdf_like_pg / from_rdf_like_pg reproduce exactly as
/// vertex literals: vm images, canonical decimals and language strings.
inline Literal random_vertex_literal(Rng& rng) {
  switch (pick(rng, 3)) {
    case 0: {
      double d = static_cast<double>(static_cast<std::int64_t>(pick(rng, 20001)) - 10000) / 100.0;
      return decimal(*lexical::canonical_decimal(d));
    }
    case 1: {
      static const std::vector<std::string> tags = {"en", "de", "en-GB", "zh-Hant-TW"};
      return Literal::lang_string(random_text(rng), tags[pick(rng, tags.size())]);
    }
    default: return vm(random_value(rng));
  }
}

inline Term random_node(Rng& rng, std::size_t iris = 8, std::size_t blanks = 4) {
  std::size_t i = pick(rng, iris + blanks);
  if (i < iris) return ex("n" + std::to_string(i));
  return BlankNode("x" + std::to_string(i - iris));
}

inline Iri random_predicate(Rng& rng, std::size_t n = 5) { return ex("p" + std::to_string(pick(rng, n))); }

/// A minimal, PG-convertible graph with at most `max_triples` triples and
/// nesting depth at most 1. Metadata objects are vm images so that the
/// RDF-like round trip reproduces them exactly.
inline Graph random_convertible_graph(Rng& rng, std::size_t max_triples = 30) {
  std::set<Triple> ordinary;
  std::size_t target = 1 + pick(rng, max_triples);
  for (std::size_t tries = 0; ordinary.size() < target && tries < 4 * target; ++tries) {
    Term o = coin(rng, 0.45) ? Term(random_vertex_literal(rng)) : random_node(rng);
    ordinary.insert(Triple(random_node(rng), random_predicate(rng), std::move(o)));
  }
  std::set<Triple> out;
  for (const Triple& t : ordinary) {
    if (out.size() >= max_triples) break;
    if (!coin(rng, 0.35)) {
      out.insert(t);
      continue;
    }
    std::size_t annotations = 1 + pick(rng, 2);
    for (std::size_t i = 0; i < annotations && out.size() < max_triples; ++i)
      out.insert(Triple(EmbeddedTriple(t), random_predicate(rng, 3), vm(random_value(rng))));
  }
  return Graph(std::move(out));
}

/// A property-unique, edge-unique property graph.
inline PropertyGraph random_unique_pg(Rng& rng) {
  PropertyGraphBuilder b;
  std::size_t n = pick(rng, 8);
  auto props = [&](std::size_t max) {
    PropertySet set;
    std::vector<std::string> keys = {"name", "age", "weight", "since", "k/x", "note with space"};
    std::shuffle(keys.begin(), keys.end(), rng);
    std::size_t count = pick(rng, std::min(max, keys.size()) + 1);
    for (std::size_t i = 0; i < count; ++i) set.insert({keys[i], random_value(rng)});
    return set;
  };
  for (std::size_t i = 0; i < n; ++i) b.add_vertex("v" + std::to_string(i), props(4));
  if (n > 0) {
    static const std::vector<std::string> labels = {"knows", "likes", "has part", "é"};
    std::set<std::tuple<std::size_t, std::size_t, std::string>> seen;
    std::size_t m = pick(rng, 2 * n + 1);
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t s = pick(rng, n), t = pick(rng, n);
      const std::string& l = labels[pick(rng, labels.size())];
      if (!seen.emplace(s, t, l).second) continue;
      b.add_edge("e" + std::to_string(i), "v" + std::to_string(s), "v" + std::to_string(t), l, props(3));
    }
  }
  return b.build();
}

inline Literal random_any_literal(Rng& rng) {
  static const std::vector<std::string> datatypes = {vocab::kXsdString, vocab::kXsdInteger, vocab::kXsdDecimal,
                                                     vocab::kXsdDouble, vocab::kXsdBoolean, kEx + "custom"};
  static const std::vector<std::string> lexicals = {"1", "-07", "+3", "2.50", ".5", "1.", "1e5", "1.0E-3", "INF",
                                                    "true", "false", "0", "abc", "", "NaN"};
  switch (pick(rng, 4)) {
    case 0: return Literal::lang_string(random_text(rng), coin(rng) ? "en" : "fr-CA");
    case 1: return Literal::typed(lexicals[pick(rng, lexicals.size())], datatypes[pick(rng, datatypes.size())]);
    case 2: return Literal::typed(random_text(rng), datatypes[pick(rng, datatypes.size())]);
    default: return str(random_text(rng));
  }
}

inline Iri random_any_iri(Rng& rng) {
  static const std::vector<std::string> bases = {kEx, kFoaf, "urn:x:", "http://example.org/a#", "mailto:"};
  static const std::vector<std::string> locals = {"a", "b.c", "d-", "x.", "1", "_u", "q%20r", "s/t", "u~v",
                                                  "", "é", "k:l", "-m", "n?o=p"};
  return Iri(bases[pick(rng, bases.size())] + locals[pick(rng, locals.size())]);
}

inline Term random_any_term(Rng& rng, std::size_t depth, bool subject);

inline Triple random_any_triple(Rng& rng, std::size_t depth) {
  Term s = random_any_term(rng, depth, true);
  return Triple(std::move(s), coin(rng, 0.1) ? Iri(vocab::kRdfType) : random_any_iri(rng),
                random_any_term(rng, depth, false));
}

inline Term random_any_term(Rng& rng, std::size_t depth, bool subject) {
  std::size_t kinds = subject ? 3 : 4;
  std::size_t k = pick(rng, kinds);
  if (depth > 0 && coin(rng, 0.2)) return EmbeddedTriple(random_any_triple(rng, depth - 1));
  if (k == 0) return random_any_iri(rng);
  if (k == 1 || (subject && k == 2)) return BlankNode(std::string(1, static_cast<char>('a' + pick(rng, 3))) +
                                                        std::to_string(pick(rng, 3)));
  return random_any_literal(rng);
}

/// Arbitrary RDF-star graph: any terms, nesting up to 3.
inline Graph random_any_graph(Rng& rng, std::size_t max_triples = 20) {
  std::set<Triple> out;
  std::size_t n = pick(rng, max_triples + 1);
  for (std::size_t i = 0; i < n; ++i) out.insert(random_any_triple(rng, 3));
  return Graph(std::move(out));
}

inline PrefixTable random_prefixes(Rng& rng) {
  PrefixTable p;
  if (coin(rng)) p["ex"] = kEx;
  if (coin(rng)) p["foaf"] = kFoaf;
  if (coin(rng)) p["exa"] = "http://example.org/a#";
  if (coin(rng)) p[""] = "urn:x:";
  if (coin(rng)) p["xsd"] = std::string(vocab::kXsd);
  if (coin(rng, 0.3)) p["e"] = "http://example.";
  return p;
}

}  // namespace fixtures

// Readable gtest failure messages.
namespace rdfpg {
inline void PrintTo(const Term& t, std::ostream* os) { *os << format_term(t); }
inline void PrintTo(const Triple& t, std::ostream* os) { *os << format_triple(t); }
inline void PrintTo(const Literal& l, std::ostream* os) { *os << format_term(l); }
inline void PrintTo(const Iri& i, std::ostream* os) { *os << format_iri(i); }
inline void PrintTo(const Graph& g, std::ostream* os) { *os << "\n" << serialize_turtle_star(g); }
inline void PrintTo(const PropertyValue& v, std::ostream* os) { *os << fixtures::render(v); }
inline void PrintTo(const PropertySet& p, std::ostream* os) { *os << fixtures::render(p); }
inline void PrintTo(const PropertyGraph& g, std::ostream* os) { *os << "\n" << serialize_pg_json(g); }
}  // namespace rdfpg
