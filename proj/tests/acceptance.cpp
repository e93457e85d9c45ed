// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Criteria 1-3 drive the built CLI binary end to end.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>

#include "support.hpp"

using namespace rdfpg;
using namespace fixtures;
namespace fs = std::filesystem;

namespace {

// Pinned limits.
constexpr double kGoldenSeconds = 1.0;
constexpr double kRoundTripSeconds = 60.0;
constexpr int kRdfCorpusSize = 1000;
constexpr int kPgCorpusSize = 1000;
constexpr int kParserCorpusSize = 1000;
constexpr std::size_t kMaxTriples = 30;
constexpr std::uint64_t kRdfSeed = 20240501;
constexpr std::uint64_t kPgSeed = 20240502;
constexpr std::uint64_t kParserSeed = 20240503;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string data(const std::string& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / "rdfpg_acceptance";
  fs::create_directories(dir);
  return dir;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

struct CliRun {
  int code;
  double seconds;
  std::string out;
};

CliRun run_cli(const std::string& args, const fs::path& out_file) {
  std::string cmd = shell_quote(RDFPG_CLI_PATH) + " " + args + " -o " + shell_quote(out_file.string()) +
                    " 2>" + shell_quote((out_file.string() + ".err"));
  auto start = Clock::now();
  int status = std::system(cmd.c_str());
  double took = seconds_since(start);
  int code = status == -1 ? -1 : WEXITSTATUS(status);
  return {code, took, read_file(out_file.string())};
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

PropertySet iri_vertex(const std::string& iri) {
  return {{"kind", PropertyValue::of_text("IRI")}, {"IRI", PropertyValue::of_text(iri)}};
}

PropertySet literal_vertex(PropertyValue v, const std::string& datatype) {
  return {{"kind", PropertyValue::of_text("literal")},
          {"literal", std::move(v)},
          {"datatype", PropertyValue::of_text(datatype)}};
}

// Ids follow the term order of the vertices and the triple order of the edges.
PropertyGraph expected_rdf_like_alice_bob() {
  const std::string xsd(vocab::kXsd), certainty = "http://example.org/certainty";
  PropertyGraphBuilder b;
  b.add_vertex("v1", iri_vertex("http://example.org/alice"));
  b.add_vertex("v2", iri_vertex("http://example.org/bob"));
  b.add_vertex("v3", literal_vertex(PropertyValue::of_integer(23), xsd + "integer"));
  b.add_vertex("v4", literal_vertex(PropertyValue::of_text("Alice"), xsd + "string"));
  b.add_vertex("v5", literal_vertex(PropertyValue::of_text("Bob"), xsd + "string"));
  b.add_edge("e1", "v1", "v2", kFoaf + "knows", {{certainty, PropertyValue::of_double(0.5)}});
  b.add_edge("e2", "v1", "v4", kFoaf + "name");
  b.add_edge("e3", "v2", "v3", kFoaf + "age", {{certainty, PropertyValue::of_double(0.9)}});
  b.add_edge("e4", "v2", "v5", kFoaf + "name");
  return b.build();
}

PropertyGraph expected_simple_alice_bob() {
  PropertyGraphBuilder b;
  b.add_vertex("v1", {{"IRI", PropertyValue::of_text("http://example.org/alice")},
                      {kFoaf + "name", PropertyValue::of_text("Alice")}});
  b.add_vertex("v2", {{"IRI", PropertyValue::of_text("http://example.org/bob")},
                      {kFoaf + "name", PropertyValue::of_text("Bob")}});
  b.add_edge("e1", "v1", "v2", kFoaf + "knows",
             {{"http://example.org/certainty", PropertyValue::of_double(0.5)}});
  return b.build();
}

std::vector<Graph> rdf_corpus() {
  Rng rng(kRdfSeed);
  std::vector<Graph> out;
  for (int i = 0; i < kRdfCorpusSize; ++i) out.push_back(random_convertible_graph(rng, kMaxTriples));
  return out;
}

std::vector<PropertyGraph> pg_corpus() {
  Rng rng(kPgSeed);
  std::vector<PropertyGraph> out;
  for (int i = 0; i < kPgCorpusSize; ++i) out.push_back(random_unique_pg(rng));
  return out;
}

bool shares_metadata_key(const Graph& g) {
  std::set<std::pair<Term, Iri>> seen;
  for (const Triple& t : g) {
    if (is_metadata_triple(t) && !seen.emplace(t.subject(), t.predicate()).second) return true;
  }
  return false;
}

std::size_t expected_triple_count(const PropertyGraph& pg) {
  std::size_t n = 0;
  for (const VertexId& v : pg.vertices()) n += pg.properties(v).size();
  for (const EdgeId& e : pg.edges()) n += std::max<std::size_t>(1, pg.properties(e).size());
  return n;
}

// --- criteria -----------------------------------------------------------------

Outcome golden_rdf_like() {
  Outcome o;
  fs::path out = scratch_dir() / "alice_bob.pg.json";
  CliRun r = run_cli("rdf2pg --mode rdf-like " + shell_quote(data("alice_bob.ttls")), out);
  o.require(r.code == 0, "exit code " + std::to_string(r.code));
  if (!o.pass) return o;
  PropertyGraph g = parse_pg_json(r.out);
  o.require(g.vertices().size() == 5 && g.edges().size() == 4, "expected 5 vertices and 4 edges");
  o.require(g == expected_rdf_like_alice_bob(), "property graph differs from the golden graph");
  o.require(r.seconds < kGoldenSeconds, "took " + fmt_seconds(r.seconds));
  o.detail = o.pass ? fmt_seconds(r.seconds) : o.detail;
  return o;
}

Outcome golden_simple() {
  Outcome o;
  fs::path out = scratch_dir() / "alice_bob_strong.pg.json";
  CliRun r = run_cli("rdf2pg --mode simple " + shell_quote(data("alice_bob_strong.ttls")), out);
  o.require(r.code == 0, "exit code " + std::to_string(r.code));
  if (!o.pass) return o;
  o.require(parse_pg_json(r.out) == expected_simple_alice_bob(), "property graph differs from the golden graph");
  o.require(r.seconds < kGoldenSeconds, "took " + fmt_seconds(r.seconds));
  o.detail = o.pass ? fmt_seconds(r.seconds) : o.detail;
  return o;
}

Outcome golden_pg_to_rdf() {
  Outcome o;
  fs::path out = scratch_dir() / "kubrick_welles.ttls";
  CliRun r = run_cli("pg2rdf " + shell_quote(data("kubrick_welles.pg.json")), out);
  o.require(r.code == 0, "exit code " + std::to_string(r.code));
  if (!o.pass) return o;
  Graph g = parse_turtle_star(r.out).graph;
  o.require(g.size() == 5, "expected 5 triples, got " + std::to_string(g.size()));
  o.require(are_isomorphic(g, kubrick_welles_rdf()), "output not isomorphic to the golden graph");
  // The golden document writes the certainty as a bare decimal.
  Graph listing = canonicalize_literals(parse_turtle_star(read_file(data("kubrick_welles.ttls"))).graph);
  o.require(are_isomorphic(g, listing), "output not isomorphic to the golden document");
  o.require(r.seconds < kGoldenSeconds, "took " + fmt_seconds(r.seconds));
  o.detail = o.pass ? fmt_seconds(r.seconds) : o.detail;
  return o;
}

Outcome classifications() {
  Outcome o;
  o.require(check_pg_convertible(alice_bob()).convertible(), "alice/bob graph should be PG-convertible");
  auto strong = check_strongly_pg_convertible(alice_bob());
  o.require(!strong.convertible(), "alice/bob graph should not be strongly PG-convertible");
  o.require(strong.violations.size() == 1 &&
                strong.violations[0].triple == embedded_subject(bob_age(), ex("certainty"), decimal("0.9")),
            "violation should cite the age-certainty triple");
  o.require(check_strongly_pg_convertible(alice_bob_strong()).convertible(),
            "subgraph should be strongly PG-convertible");
  o.require(is_property_unique(kubrick_welles()).unique(), "kubrick/welles should be property-unique");
  o.require(is_edge_unique(kubrick_welles()).unique(), "kubrick/welles should be edge-unique");
  return o;
}

Outcome round_trip(const std::vector<Graph>& corpus) {
  Outcome o;
  auto start = Clock::now();
  int passed = 0;
  for (const Graph& g : corpus) {
    if (!is_minimal(g) || !check_pg_convertible(g).convertible()) {
      o.require(false, "generator produced an invalid graph");
      continue;
    }
    Graph back = from_rdf_like_pg(to_rdf_like_pg(g).graph);
    if (are_isomorphic(back, g)) {
      ++passed;
    } else {
      o.require(false, "mismatch on:\n" + serialize_turtle_star(g));
    }
  }
  double took = seconds_since(start);
  o.require(took < kRoundTripSeconds, "took " + fmt_seconds(took));
  if (o.pass) o.detail = std::to_string(passed) + "/" + std::to_string(corpus.size()) + " in " + fmt_seconds(took);
  return o;
}

Outcome cardinalities(const std::vector<Graph>& corpus, const std::vector<PropertyGraph>& pgs) {
  Outcome o;
  int strong = 0;
  for (const Graph& g : corpus) {
    PropertyGraph like = to_rdf_like_pg(g).graph;
    o.require(like.vertices().size() == so_terms_plus(g).size(), "|V| != |SOTerms+| (RDF-like)");
    o.require(like.edges().size() == ord(g).size(), "|E| != |ord| (RDF-like)");
    if (!check_strongly_pg_convertible(g).convertible()) continue;
    ++strong;
    PropertyGraph simple = to_simple_pg(g).graph;
    o.require(simple.vertices().size() == so_plus(g).size(), "|V| != |SO+| (simple)");
    o.require(simple.edges().size() == ord_relationships(g).size(), "|E| != |ordR| (simple)");
  }
  o.require(strong > 0, "no strongly convertible graph in the corpus");
  for (const PropertyGraph& pg : pgs) {
    o.require(pg_to_rdf_star(pg).size() == expected_triple_count(pg), "PG to RDF-star triple count");
  }
  if (o.pass)
    o.detail = std::to_string(corpus.size()) + " graphs (" + std::to_string(strong) + " strongly convertible), " +
               std::to_string(pgs.size()) + " property graphs";
  return o;
}

Outcome uniqueness_constructions(const std::vector<Graph>& corpus) {
  Outcome o;
  Triple t(ex("s"), ex("p"), str("x"));
  Graph meta_pair{embedded_subject(t, ex("q"), str("u")), embedded_subject(t, ex("q"), str("w"))};
  o.require(!is_property_unique(to_rdf_like_pg(meta_pair).graph).unique(),
            "two metadata triples differing in the object should break property-uniqueness");
  Graph attr_pair{Triple(ex("s"), ex("p"), str("x")), Triple(ex("s"), ex("p"), str("y"))};
  o.require(!is_property_unique(to_simple_pg(attr_pair).graph).unique(),
            "two attribute triples differing in the object should break property-uniqueness");
  int colliding = 0;
  for (const Graph& g : corpus) {
    bool collides = shares_metadata_key(g);
    colliding += collides;
    o.require(is_property_unique(to_rdf_like_pg(g).graph).unique() == !collides, "characterization fails");
  }
  o.require(colliding > 0 && colliding < static_cast<int>(corpus.size()), "corpus does not exercise both directions");
  if (o.pass) o.detail = std::to_string(colliding) + " colliding graphs";
  return o;
}

Outcome parser_round_trip() {
  Outcome o;
  Rng rng(kParserSeed);
  for (int i = 0; i < kParserCorpusSize; ++i) {
    Graph g = random_any_graph(rng);
    PrefixTable prefixes = random_prefixes(rng);
    std::string text = serialize_turtle_star(g, prefixes);
    Graph back = parse_turtle_star(text).graph;
    o.require(are_isomorphic(back, g), "parse(serialize(G)) not isomorphic to G:\n" + text);
    if (blank_nodes(g).empty()) o.require(back == g, "parse(serialize(G)) != G:\n" + text);
  }
  for (const char* name : {"alice_bob.ttls", "alice_bob_strong.ttls", "kubrick_welles.ttls", "plain.ttls",
                           "object_embedded.ttls", "empty.ttls"}) {
    TurtleDocument doc = parse_turtle_star(read_file(data(name)));
    std::string once = serialize_turtle_star(doc.graph, doc.prefixes);
    TurtleDocument again = parse_turtle_star(once);
    o.require(serialize_turtle_star(again.graph, again.prefixes) == once, std::string("not idempotent: ") + name);
  }
  o.require(parse_turtle_star(read_file(data("alice_bob.ttls"))).graph == alice_bob(),
            "alice_bob.ttls does not parse to the expected graph");
  Graph kw = parse_turtle_star(read_file(data("kubrick_welles.ttls"))).graph;
  o.require(are_isomorphic(canonicalize_literals(kw), kubrick_welles_rdf()),
            "kubrick_welles.ttls does not parse to the expected graph");
  return o;
}

Outcome unfolding(const std::vector<Graph>& corpus) {
  Outcome o;
  Graph u = unfold_to_rdf(alice_bob());
  o.require(u.size() == 12, "expected 12 triples, got " + std::to_string(u.size()));
  o.require(trefs(u).empty(), "unfolded graph still has embedded triples");
  Rng rng(kParserSeed + 1);
  for (int i = 0; i < 200; ++i) {
    Graph plain = unfold_to_rdf(random_any_graph(rng));
    o.require(unfold_to_rdf(plain) == plain, "unfold is not the identity on plain RDF");
  }
  for (const Graph& g : corpus) {
    o.require(unfold_to_rdf(g).size() == g.size() + 4 * trefs(g).size(), "|unfold(G)| != |G| + 4|trefs(G)|");
  }
  return o;
}

Outcome pg_output_minimal(const std::vector<PropertyGraph>& pgs) {
  Outcome o;
  for (const PropertyGraph& pg : pgs) o.require(is_minimal(pg_to_rdf_star(pg)), "output not minimal");
  return o;
}

}  // namespace

int main() {
  std::vector<Graph> corpus = rdf_corpus();
  std::vector<PropertyGraph> pgs = pg_corpus();

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 golden RDF-like conversion", golden_rdf_like},
      {"2 golden simple conversion", golden_simple},
      {"3 golden PG to RDF-star conversion", golden_pg_to_rdf},
      {"4 convertibility and uniqueness classifications", classifications},
      {"5 RDF-like round trip on random graphs", [&] { return round_trip(corpus); }},
      {"6 cardinality invariants", [&] { return cardinalities(corpus, pgs); }},
      {"7 property-uniqueness constructions and characterization", [&] { return uniqueness_constructions(corpus); }},
      {"8 Turtle-star parser round trip", parser_round_trip},
      {"9 reification unfolding", [&] { return unfolding(corpus); }},
      {"10 PG to RDF-star output is minimal", [&] { return pg_output_minimal(pgs); }},
  };

  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name;
    if (!o.detail.empty()) std::cout << "  (" << o.detail << ")";
    std::cout << "\n";
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
