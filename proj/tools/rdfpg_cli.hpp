#pragma once

// Command-line front end. run() is separate from main() so tests can drive
// it in-process.
//
// Exit codes: 0 success, 1 the checked property or a transform precondition
// fails, 2 unreadable or malformed input / bad usage.

#include <CLI11.hpp>

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rdfpg/rdfpg.hpp"

namespace rdfpg::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kBadInput = 2;

struct Options {
  std::string input;
  std::string output;
  std::string from;
  std::string to;
  std::string mode = "rdf-like";
  std::string level = "convertible";
  std::string key_prefix{kDefaultPropertyKeyPrefix};
  std::string label_prefix{kDefaultEdgeLabelPrefix};
  std::string vertex_ids = "bnode";
  std::string literal_mode = "lenient";
  std::string report = "text";
};

class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Format { Turtle, PgJson };

namespace detail {

inline const char* format_name(Format f) { return f == Format::Turtle ? "Turtle-star" : "PG-JSON"; }

inline std::optional<Format> format_named(const std::string& name) {
  if (name == "turtle" || name == "ttl" || name == "ttls") return Format::Turtle;
  if (name == "pg-json" || name == "json") return Format::PgJson;
  return std::nullopt;
}

inline std::optional<Format> format_of_path(const std::string& path) {
  std::string_view p = path;
  if (p.ends_with(".json")) return Format::PgJson;
  if (p.ends_with(".ttls") || p.ends_with(".ttl")) return Format::Turtle;
  return std::nullopt;
}

// The format a command needs, after checking --from/--to or the extension.
inline void require_format(const std::string& override_name, const std::string& path, Format expected,
                           const char* role) {
  std::optional<Format> actual;
  if (!override_name.empty()) {
    actual = format_named(override_name);
    if (!actual) throw UsageError("unknown format '" + override_name + "' (use turtle or pg-json)");
  } else if (!path.empty() && path != "-") {
    actual = format_of_path(path);
  }
  if (actual && *actual != expected)
    throw UsageError(std::string("this command needs ") + format_name(expected) + " " + role + ", got " +
                     format_name(*actual));
}

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

class InputError : public Error {
 public:
  using Error::Error;
};

inline std::string read_input(const Options& o, Io& io) {
  if (o.input.empty() || o.input == "-") {
    return std::string(std::istreambuf_iterator<char>(io.in), {});
  }
  std::ifstream file(o.input, std::ios::binary);
  if (!file) throw InputError("cannot read '" + o.input + "'");
  return std::string(std::istreambuf_iterator<char>(file), {});
}

inline void write_output(const Options& o, Io& io, const std::string& text) {
  if (o.output.empty() || o.output == "-") {
    io.out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw InputError("cannot write '" + o.output + "'");
  file << text;
}

inline LiteralMode literal_mode(const Options& o) {
  return o.literal_mode == "strict" ? LiteralMode::Strict : LiteralMode::Lenient;
}

struct Finding {
  std::string condition;
  Triple triple;
  std::string reason;
};

inline std::vector<Finding> findings(const ConvertibilityReport& report) {
  std::vector<Finding> out;
  for (const Violation& v : report.violations) out.push_back({condition_id(v.condition), v.triple, v.reason});
  return out;
}

inline std::string render_report(const Options& o, const std::string& subject, bool holds,
                                 const std::vector<Finding>& list, const PrefixTable& prefixes) {
  if (o.report == "json") {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    doc["property"] = subject;
    doc["holds"] = holds;
    doc["violations"] = nlohmann::ordered_json::array();
    for (const Finding& f : list) {
      doc["violations"].push_back(
          {{"condition", f.condition}, {"triple", format_triple(f.triple, prefixes)}, {"reason", f.reason}});
    }
    return doc.dump() + "\n";
  }
  std::string text = subject + ": " + (holds ? "yes" : "no") + "\n";
  for (const Finding& f : list) {
    text += "  [condition " + f.condition + "] " + format_triple(f.triple, prefixes) + " : " + f.reason + "\n";
  }
  return text;
}

inline TurtleDocument read_turtle(const Options& o, Io& io) {
  require_format(o.from, o.input, Format::Turtle, "input");
  return parse_turtle_star(read_input(o, io));
}

// --- commands ---------------------------------------------------------------

inline int cmd_check(const Options& o, Io& io) {
  TurtleDocument doc = read_turtle(o, io);
  std::vector<Finding> list;
  std::string subject;
  if (o.level == "convertible") {
    subject = "PG-convertible";
    list = findings(check_pg_convertible(doc.graph, literal_mode(o)));
  } else if (o.level == "strong") {
    subject = "strongly PG-convertible";
    list = findings(check_strongly_pg_convertible(doc.graph, literal_mode(o)));
  } else {
    subject = "minimal";
    for (const Triple& t : find_redundant(doc.graph))
      list.push_back({"minimal", t, "asserted and also embedded in another triple"});
  }
  io.out << render_report(o, subject, list.empty(), list, doc.prefixes);
  return list.empty() ? kOk : kFailed;
}

inline int cmd_rdf2pg(const Options& o, Io& io) {
  require_format(o.to, o.output, Format::PgJson, "output");
  TurtleDocument doc = read_turtle(o, io);
  PropertyGraph pg;
  try {
    pg = o.mode == "simple" ? to_simple_pg(doc.graph, literal_mode(o)).graph
                            : to_rdf_like_pg(doc.graph, literal_mode(o)).graph;
  } catch (const NotConvertible& e) {
    std::string subject = o.mode == "simple" ? "strongly PG-convertible" : "PG-convertible";
    io.err << render_report(o, subject, false, findings(e.report()), doc.prefixes);
    return kFailed;
  }
  write_output(o, io, serialize_pg_json(pg) + "\n");
  return kOk;
}

inline int cmd_pg2rdf(const Options& o, Io& io) {
  require_format(o.from, o.input, Format::PgJson, "input");
  require_format(o.to, o.output, Format::Turtle, "output");
  MappingConfig config{TemplateIriMapping(o.key_prefix), TemplateIriMapping(o.label_prefix),
                       parse_vertex_identity_strategy(o.vertex_ids), literal_mode(o)};
  config.validate();
  PropertyGraph pg = parse_pg_json(read_input(o, io));

  Graph g;
  try {
    g = pg_to_rdf_star(pg, config);
  } catch (const NotPropertyUnique& e) {
    io.err << "property graph is not property-unique:\n";
    for (const auto& v : e.report().violations)
      io.err << "  element '" << v.element << "' has several properties with key '" << v.key << "'\n";
    return kFailed;
  } catch (const NotEdgeUnique& e) {
    io.err << "property graph is not edge-unique:\n";
    for (const auto& [a, b] : e.report().violations)
      io.err << "  edges '" << a << "' and '" << b << "' share source, target and label\n";
    return kFailed;
  }

  PrefixTable prefixes{{"p", o.key_prefix}, {"r", o.label_prefix}};
  if (const auto* t = std::get_if<IriTemplate>(&config.vertex_ids)) prefixes.emplace("v", t->mapping.prefix());
  write_output(o, io, serialize_turtle_star(g, prefixes));
  return kOk;
}

inline int cmd_unfold(const Options& o, Io& io) {
  require_format(o.to, o.output, Format::Turtle, "output");
  TurtleDocument doc = read_turtle(o, io);
  Graph plain = unfold_to_rdf(doc.graph);
  PrefixTable prefixes = doc.prefixes;
  bool has_rdf = std::any_of(prefixes.begin(), prefixes.end(), [](const auto& p) { return p.second == vocab::kRdf; });
  if (!has_rdf && !prefixes.contains("rdf") && plain.size() != doc.graph.size())
    prefixes.emplace("rdf", std::string(vocab::kRdf));
  write_output(o, io, serialize_turtle_star(plain, prefixes));
  return kOk;
}

inline int cmd_roundtrip(const Options& o, Io& io) {
  TurtleDocument doc = read_turtle(o, io);
  LiteralMode lm = literal_mode(o);
  Graph g = minimize(doc.graph);
  std::size_t dropped = doc.graph.size() - g.size();

  RdfLikePgResult forward;
  try {
    forward = to_rdf_like_pg(g, lm);
  } catch (const NotConvertible& e) {
    io.err << render_report(o, "PG-convertible", false, findings(e.report()), doc.prefixes);
    return kFailed;
  }
  Graph back = from_rdf_like_pg(forward.graph);
  Graph expected = rdf_like_round_trip_form(g, lm);

  if (are_isomorphic(back, expected)) {
    io.out << "round trip: isomorphic (" << g.size() << " triples, " << forward.graph.vertices().size()
           << " vertices, " << forward.graph.edges().size() << " edges";
    if (dropped > 0) io.out << ", " << dropped << " redundant triples removed first";
    if (expected != g) io.out << ", literals compared in canonical form";
    io.out << ")\n";
    return kOk;
  }

  Graph want = canonicalize_blank_nodes(expected), got = canonicalize_blank_nodes(back);
  io.err << "round trip: graphs differ\n";
  for (const Triple& t : want) {
    if (!got.contains(t)) {
      io.err << "  missing: " << format_triple(t, doc.prefixes) << "\n";
      return kFailed;
    }
  }
  for (const Triple& t : got) {
    if (!want.contains(t)) {
      io.err << "  unexpected: " << format_triple(t, doc.prefixes) << "\n";
      return kFailed;
    }
  }
  io.err << "  (blank-node structure differs)\n";
  return kFailed;
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  detail::Io io{in, out, err};
  Options o;
  CLI::App app{"Convert between RDF-star graphs and property graphs.", "rdfpg"};
  app.require_subcommand(1);

  auto input = [&](CLI::App* cmd, const char* what) {
    cmd->add_option("input", o.input, what)->required();
    cmd->add_option("--from", o.from, "input format (turtle or pg-json); default from the extension");
  };
  auto output = [&](CLI::App* cmd) {
    cmd->add_option("-o,--output", o.output, "output file (default: standard output)");
    cmd->add_option("--to", o.to, "output format (turtle or pg-json); default from the extension");
  };
  auto literals = [&](CLI::App* cmd) {
    cmd->add_option("--literal-mode", o.literal_mode, "which literals count as property values")
        ->check(CLI::IsMember({"lenient", "strict"}));
  };
  auto report = [&](CLI::App* cmd) {
    cmd->add_option("--report", o.report, "violation report format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* check = app.add_subcommand("check", "check convertibility or minimality of a Turtle-star file");
  input(check, "Turtle-star file ('-' for standard input)");
  check->add_option("--level", o.level, "property to check")
      ->check(CLI::IsMember({"convertible", "strong", "minimal"}));
  literals(check);
  report(check);

  auto* rdf2pg = app.add_subcommand("rdf2pg", "convert Turtle-star to a PG-JSON property graph");
  input(rdf2pg, "Turtle-star file ('-' for standard input)");
  output(rdf2pg);
  rdf2pg->add_option("--mode", o.mode, "RDF-like (lossless) or simple representation")
      ->check(CLI::IsMember({"rdf-like", "simple"}));
  literals(rdf2pg);
  report(rdf2pg);

  auto* pg2rdf = app.add_subcommand("pg2rdf", "convert a PG-JSON property graph to Turtle-star");
  input(pg2rdf, "PG-JSON file ('-' for standard input)");
  output(pg2rdf);
  pg2rdf->add_option("--property-key-prefix", o.key_prefix, "IRI prefix for property keys");
  pg2rdf->add_option("--edge-label-prefix", o.label_prefix, "IRI prefix for edge labels");
  pg2rdf->add_option("--vertex-ids", o.vertex_ids, "bnode or iri:<prefix>");
  literals(pg2rdf);

  auto* unfold = app.add_subcommand("unfold", "rewrite embedded triples as standard reification");
  input(unfold, "Turtle-star file ('-' for standard input)");
  output(unfold);

  auto* roundtrip = app.add_subcommand("roundtrip", "check that the RDF-like conversion inverts");
  input(roundtrip, "Turtle-star file ('-' for standard input)");
  literals(roundtrip);
  report(roundtrip);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  std::string where = o.input.empty() || o.input == "-" ? "<stdin>" : o.input;
  try {
    if (*check) return detail::cmd_check(o, io);
    if (*rdf2pg) return detail::cmd_rdf2pg(o, io);
    if (*pg2rdf) return detail::cmd_pg2rdf(o, io);
    if (*unfold) return detail::cmd_unfold(o, io);
    return detail::cmd_roundtrip(o, io);
  } catch (const ParseError& e) {
    const auto& d = e.diagnostic();
    err << where << ":" << d.line << ":" << d.column << ": error: " << d.message << "\n";
    return kBadInput;
  } catch (const SchemaError& e) {
    err << where << ": error: " << e.what() << "\n";
    return kBadInput;
  } catch (const GraphBuildError& e) {
    err << where << ": error: " << e.what() << "\n";
    return kBadInput;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const detail::InputError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const Error& e) {
    err << where << ": error: " << e.what() << "\n";
    return kFailed;
  }
}

}  // namespace rdfpg::cli
