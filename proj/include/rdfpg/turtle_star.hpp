#pragma once

// A Turtle-star subset: @prefix, <absolute IRIs>, prefixed names, _:labels,
// `a`, quoted strings with escapes, @lang, ^^datatype, bare numbers and
// booleans, `;` and `,` lists, << s p o >> at subject or object position,
// and # comments. Anonymous nodes, collections, long strings and relative
// IRIs are rejected with a diagnostic.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rdfpg/error.hpp"
#include "rdfpg/isomorphism.hpp"
#include "rdfpg/rdf_model.hpp"

namespace rdfpg {

/// Prefix label (without the colon) → namespace IRI.
using PrefixTable = std::map<std::string, std::string>;

struct ParseDiagnostic {
  std::size_t line = 1;  // 1-based
  std::size_t column = 1;  // 1-based, in bytes
  std::string message;
};

class ParseError : public Error {
 public:
  explicit ParseError(ParseDiagnostic d)
      : Error("line " + std::to_string(d.line) + ", column " + std::to_string(d.column) + ": " + d.message),
        diagnostic_(std::move(d)) {}
  const ParseDiagnostic& diagnostic() const { return diagnostic_; }

 private:
  ParseDiagnostic diagnostic_;
};

struct TurtleDocument {
  Graph graph;
  PrefixTable prefixes;
};

namespace detail {

inline bool is_pn_chars(char c) {
  return is_ascii_alnum(c) || c == '_' || c == '-' || static_cast<unsigned char>(c) >= 0x80;
}

inline bool is_hex(char c) {
  return is_ascii_digit(c) || (c >= 'A' && c <= 'F') || (c >= 'a' && c <= 'f');
}

inline void append_utf8(std::uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class TurtleParser {
 public:
  explicit TurtleParser(std::string_view text) : text_(text) {}

  TurtleDocument parse() {
    skip_ws();
    while (!at_end()) {
      if (peek() == '@') {
        directive();
      } else {
        statement();
      }
      skip_ws();
    }
    return {Graph(std::move(triples_)), std::move(prefixes_)};
  }

 private:
  struct Mark {
    std::size_t pos, line, column;
  };

  [[noreturn]] void fail(const std::string& message) const { fail_at(mark(), message); }
  [[noreturn]] static void fail_at(const Mark& m, const std::string& message) {
    throw ParseError(ParseDiagnostic{m.line, m.column, message});
  }

  Mark mark() const { return {pos_, line_, column_}; }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }
  bool looking_at(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }
  void advance(std::size_t n) {
    while (n-- > 0) advance();
  }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  void expect(char c, const std::string& what) {
    skip_ws();
    if (peek() != c || at_end()) fail("expected " + what);
    advance();
  }

  // @prefix label: <iri> .
  void directive() {
    Mark start = mark();
    advance();
    std::string word;
    while (!at_end() && is_ascii_alpha(peek())) word += advance();
    if (word == "base") fail_at(start, "@base is not supported (relative IRIs are not allowed)");
    if (word != "prefix") fail_at(start, "unknown directive '@" + word + "'");
    skip_ws();
    std::string label = prefix_label();
    if (peek() != ':') fail("expected ':' after prefix label");
    advance();
    skip_ws();
    if (peek() != '<') fail("expected namespace IRI in angle brackets");
    prefixes_[label] = iri_ref().str();
    expect('.', "'.' after @prefix declaration");
  }

  std::string prefix_label() {
    std::string label;
    while (!at_end() && (is_pn_chars(peek()) || peek() == '.')) label += advance();
    if (!label.empty() && (!is_ascii_alpha(label.front()) && static_cast<unsigned char>(label.front()) < 0x80))
      fail("prefix label must start with a letter");
    if (!label.empty() && label.back() == '.') fail("prefix label must not end with '.'");
    return label;
  }

  void statement() {
    Term subject = subject_term();
    predicate_object_list(subject);
    skip_ws();
    if (at_end() || peek() != '.') fail("expected '.' at end of statement");
    advance();
  }

  void predicate_object_list(const Term& subject) {
    while (true) {
      skip_ws();
      Iri p = verb();
      while (true) {
        skip_ws();
        Term o = object_term();
        triples_.insert(Triple(subject, p, std::move(o)));
        skip_ws();
        if (peek() != ',') break;
        advance();
      }
      skip_ws();
      if (peek() != ';') return;
      while (peek() == ';') {
        advance();
        skip_ws();
      }
      // A trailing ';' may close the list.
      if (peek() == '.' || peek() == ']' || looking_at(">>") || at_end()) return;
    }
  }

  Term subject_term() {
    skip_ws();
    Mark start = mark();
    if (looking_at("<<")) return embedded();
    if (looking_at(">>")) fail("'>>' without matching '<<'");
    char c = peek();
    if (c == '<') return iri_ref();
    if (c == '_') return blank_node();
    if (c == '"' || c == '\'' || is_ascii_digit(c) || c == '+' || c == '-' || (c == '.' && is_ascii_digit(peek(1))))
      fail_at(start, "a literal cannot be the subject of a triple");
    if (c == '[') fail("anonymous blank nodes '[ ]' are not supported");
    if (c == '(') fail("collections '( )' are not supported");
    if (looking_at("PREFIX") || looking_at("BASE")) fail("SPARQL-style PREFIX/BASE is not supported; use @prefix");
    auto word = bare_word();
    if (word.kind == Word::Boolean) fail_at(start, "a literal cannot be the subject of a triple");
    if (word.kind == Word::A) fail_at(start, "'a' is only allowed in predicate position");
    return word.iri;
  }

  Iri verb() {
    Mark start = mark();
    char c = peek();
    if (c == '<' && !looking_at("<<")) return iri_ref();
    if (looking_at("<<")) fail("an embedded triple cannot be a predicate");
    if (looking_at(">>")) fail("'>>' without matching '<<'");
    if (at_end() || c == '.' || c == ',' || c == ';') fail("expected a predicate");
    if (c == '_' || c == '"' || c == '\'' || c == '[' || c == '(' || is_ascii_digit(c))
      fail("predicate must be an IRI");
    auto word = bare_word();
    if (word.kind == Word::A) return Iri(vocab::kRdfType);
    if (word.kind == Word::Boolean) fail_at(start, "predicate must be an IRI");
    return word.iri;
  }

  Term object_term() {
    Mark start = mark();
    if (looking_at("<<")) return embedded();
    if (looking_at(">>")) fail("'>>' without matching '<<'");
    char c = peek();
    if (at_end()) fail("expected an object");
    if (c == '<') return iri_ref();
    if (c == '_') return blank_node();
    if (c == '"' || c == '\'') return string_literal();
    if (is_ascii_digit(c) || c == '+' || c == '-' || (c == '.' && is_ascii_digit(peek(1)))) return number();
    if (c == '[') fail("anonymous blank nodes '[ ]' are not supported");
    if (c == '(') fail("collections '( )' are not supported");
    if (c == '.' || c == ',' || c == ';') fail("expected an object");
    auto word = bare_word();
    if (word.kind == Word::Boolean) return Literal::typed(word.text, vocab::kXsdBoolean);
    if (word.kind == Word::A) fail_at(start, "'a' is only allowed in predicate position");
    return word.iri;
  }

  Term embedded() {
    Mark open = mark();
    advance(2);
    Term s = subject_term();
    if (is_literal(s)) fail_at(open, "embedded triple has a literal subject");
    skip_ws();
    Iri p = verb();
    skip_ws();
    Term o = object_term();
    skip_ws();
    if (!looking_at(">>")) {
      if (at_end()) fail_at(open, "'<<' without matching '>>'");
      fail("expected '>>' to close the embedded triple opened at line " + std::to_string(open.line) + ", column " +
           std::to_string(open.column));
    }
    advance(2);
    return EmbeddedTriple(Triple(std::move(s), std::move(p), std::move(o)));
  }

  Iri iri_ref() {
    Mark start = mark();
    advance();  // '<'
    std::string value;
    while (true) {
      if (at_end() || peek() == '\n') fail_at(start, "unterminated IRI");
      char c = peek();
      if (c == '>') break;
      if (c == '\\') {
        advance();
        char kind = at_end() ? '\0' : advance();
        if (kind != 'u' && kind != 'U') fail("invalid escape in IRI");
        value += unicode_escape(kind == 'u' ? 4 : 8);
        continue;
      }
      if (detail::is_forbidden_iri_char(c)) fail(std::string("character '") + c + "' is not allowed in an IRI");
      value += advance();
    }
    advance();
    if (!Iri::is_valid(value)) {
      fail_at(start, "relative or malformed IRI <" + value + ">; only absolute IRIs are supported");
    }
    return Iri(std::move(value));
  }

  BlankNode blank_node() {
    Mark start = mark();
    if (peek(1) != ':') fail("expected '_:' to start a blank node label");
    advance(2);
    std::string label;
    while (!at_end() && (is_pn_chars(peek()) || peek() == '.')) label += advance();
    while (!label.empty() && label.back() == '.') {
      // A trailing '.' ends the statement rather than the label.
      label.pop_back();
      --pos_;
      --column_;
    }
    if (!BlankNode::is_valid(label))
      fail_at(start, "blank node label '" + label + "' must be a letter followed by letters or digits");
    return BlankNode(std::move(label));
  }

  std::string unicode_escape(int digits) {
    Mark start = mark();
    std::uint32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      if (at_end() || !is_hex(peek())) fail_at(start, "malformed unicode escape");
      char c = advance();
      cp = cp * 16 + static_cast<std::uint32_t>(is_ascii_digit(c) ? c - '0' : (c | 0x20) - 'a' + 10);
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail_at(start, "unicode escape is not a scalar value");
    std::string out;
    append_utf8(cp, out);
    return out;
  }

  Literal string_literal() {
    Mark start = mark();
    char quote = peek();
    if (peek(1) == quote && peek(2) == quote) fail("long strings (triple quotes) are not supported");
    advance();
    std::string value;
    while (true) {
      if (at_end() || peek() == '\n' || peek() == '\r') fail_at(start, "unterminated string literal");
      char c = advance();
      if (c == quote) break;
      if (c != '\\') {
        value += c;
        continue;
      }
      if (at_end()) fail_at(start, "unterminated string literal");
      char e = advance();
      switch (e) {
        case 't': value += '\t'; break;
        case 'b': value += '\b'; break;
        case 'n': value += '\n'; break;
        case 'r': value += '\r'; break;
        case 'f': value += '\f'; break;
        case '"': value += '"'; break;
        case '\'': value += '\''; break;
        case '\\': value += '\\'; break;
        case 'u': value += unicode_escape(4); break;
        case 'U': value += unicode_escape(8); break;
        default: fail(std::string("unknown escape '\\") + e + "'");
      }
    }
    if (peek() == '@') {
      Mark at = mark();
      advance();
      std::string tag;
      while (!at_end() && (is_ascii_alnum(peek()) || peek() == '-')) tag += advance();
      if (!is_valid_language_tag(tag)) fail_at(at, "malformed language tag '" + tag + "'");
      return Literal::lang_string(std::move(value), std::move(tag));
    }
    if (looking_at("^^")) {
      advance(2);
      Iri dt = peek() == '<' ? iri_ref() : prefixed_name_or_fail();
      if (dt.str() == vocab::kRdfLangString) fail("rdf:langString requires a language tag");
      return Literal(std::move(value), std::move(dt));
    }
    return Literal::string(std::move(value));
  }

  Literal number() {
    std::string lex;
    if (peek() == '+' || peek() == '-') lex += advance();
    while (is_ascii_digit(peek())) lex += advance();
    bool fraction = false, exponent = false;
    if (peek() == '.' && is_ascii_digit(peek(1))) {
      fraction = true;
      lex += advance();
      while (is_ascii_digit(peek())) lex += advance();
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (is_ascii_digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && is_ascii_digit(peek(2))))) {
      exponent = true;
      lex += advance();
      if (peek() == '+' || peek() == '-') lex += advance();
      while (is_ascii_digit(peek())) lex += advance();
    }
    std::string_view digits(lex);
    if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) digits.remove_prefix(1);
    if (digits.empty() || digits == ".") fail("malformed number");
    if (exponent) return Literal::typed(std::move(lex), vocab::kXsdDouble);
    if (fraction) return Literal::typed(std::move(lex), vocab::kXsdDecimal);
    return Literal::typed(std::move(lex), vocab::kXsdInteger);
  }

  struct Word {
    enum Kind { Name, A, Boolean } kind;
    Iri iri{std::string(vocab::kRdfType)};
    std::string text;
  };

  // A prefixed name, or one of the keywords a / true / false.
  Word bare_word() {
    Mark start = mark();
    std::string prefix;
    while (!at_end() && (is_pn_chars(peek()) || peek() == '.')) prefix += advance();
    while (!prefix.empty() && prefix.back() == '.') {
      prefix.pop_back();
      --pos_;
      --column_;
    }
    if (peek() != ':') {
      if (prefix == "a") return {Word::A, Iri(vocab::kRdfType), prefix};
      if (prefix == "true" || prefix == "false") return {Word::Boolean, Iri(vocab::kRdfType), prefix};
      if (prefix.empty()) fail_at(start, std::string("unexpected character '") + peek() + "'");
      fail_at(start, "unexpected word '" + prefix + "'");
    }
    advance();
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail_at(start, "unknown prefix '" + prefix + ":'");
    std::string local = local_name();
    std::string iri = it->second + local;
    if (!Iri::is_valid(iri)) fail_at(start, "prefixed name expands to an invalid IRI <" + iri + ">");
    return {Word::Name, Iri(std::move(iri)), prefix + ":" + local};
  }

  Iri prefixed_name_or_fail() {
    Mark start = mark();
    auto word = bare_word();
    if (word.kind != Word::Name) fail_at(start, "expected a datatype IRI");
    return word.iri;
  }

  std::string local_name() {
    std::string local;
    while (!at_end()) {
      char c = peek();
      if (is_pn_chars(c) || c == ':' || c == '.') {
        local += advance();
      } else if (c == '%') {
        if (!is_hex(peek(1)) || !is_hex(peek(2))) fail("malformed percent escape in local name");
        local += advance();
        local += advance();
        local += advance();
      } else {
        break;
      }
    }
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      --pos_;
      --column_;
    }
    return local;
  }

  std::string_view text_;
  std::size_t pos_ = 0, line_ = 1, column_ = 1;
  std::set<Triple> triples_;
  PrefixTable prefixes_;
};

// Local names the serializer may emit; each parses back to the same text.
inline bool is_safe_local_name(std::string_view s) {
  if (s.empty()) return true;
  if (s.front() == '-' || s.front() == '.' || s.back() == '.') return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (is_ascii_alnum(c) || c == '_' || c == '-' || c == '.' || c == ':') continue;
    if (c == '%' && i + 2 < s.size() && is_hex(s[i + 1]) && is_hex(s[i + 2])) {
      i += 2;
      continue;
    }
    return false;
  }
  return true;
}

inline bool matches_turtle_integer(std::string_view s) {
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), is_ascii_digit);
}

inline bool matches_turtle_decimal(std::string_view s) {
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
  auto dot = s.find('.');
  if (dot == std::string_view::npos) return false;
  auto whole = s.substr(0, dot), frac = s.substr(dot + 1);
  return !frac.empty() && std::all_of(whole.begin(), whole.end(), is_ascii_digit) &&
         std::all_of(frac.begin(), frac.end(), is_ascii_digit);
}

inline bool matches_turtle_double(std::string_view s) {
  auto e = s.find_first_of("eE");
  if (e == std::string_view::npos) return false;
  auto mantissa = s.substr(0, e), exponent = s.substr(e + 1);
  if (!matches_turtle_integer(exponent)) return false;
  // "1.E5" is valid Turtle but the parser stops at the '.', so it is quoted
  return matches_turtle_integer(mantissa) || matches_turtle_decimal(mantissa);
}

inline std::string quote_string(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20 || c == 0x7F) {
          out += "\\u00";
          out += kHex[(static_cast<unsigned char>(c) >> 4) & 0xF];
          out += kHex[static_cast<unsigned char>(c) & 0xF];
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

}  // namespace detail

inline TurtleDocument parse_turtle_star(std::string_view text) { return detail::TurtleParser(text).parse(); }

/// Prefixed name when some namespace (longest first) yields a safe local
/// name, otherwise <iri>.
inline std::string format_iri(const Iri& iri, const PrefixTable& prefixes = {}) {
  const std::string& s = iri.str();
  const std::pair<const std::string, std::string>* best = nullptr;
  for (const auto& entry : prefixes) {
    const std::string& ns = entry.second;
    if (!s.starts_with(ns) || !detail::is_safe_local_name(std::string_view(s).substr(ns.size()))) continue;
    if (!best || ns.size() > best->second.size()) best = &entry;
  }
  if (best) return best->first + ":" + s.substr(best->second.size());
  return "<" + s + ">";
}

inline std::string format_term(const Term& term, const PrefixTable& prefixes = {});

inline std::string format_triple(const Triple& t, const PrefixTable& prefixes = {}) {
  std::string p = t.predicate().str() == vocab::kRdfType ? "a" : format_iri(t.predicate(), prefixes);
  return format_term(t.subject(), prefixes) + " " + p + " " + format_term(t.object(), prefixes);
}

inline std::string format_term(const Term& term, const PrefixTable& prefixes) {
  if (const auto* i = std::get_if<Iri>(&term)) return format_iri(*i, prefixes);
  if (const auto* b = std::get_if<BlankNode>(&term)) return "_:" + b->label();
  if (const Triple* t = as_triple(term)) return "<< " + format_triple(*t, prefixes) + " >>";
  const auto& l = std::get<Literal>(term);
  const std::string& dt = l.datatype().str();
  const std::string& lex = l.lexical();
  if (l.language()) return detail::quote_string(lex) + "@" + *l.language();
  if (dt == vocab::kXsdString) return detail::quote_string(lex);
  if ((dt == vocab::kXsdInteger && detail::matches_turtle_integer(lex)) ||
      (dt == vocab::kXsdDecimal && detail::matches_turtle_decimal(lex)) ||
      (dt == vocab::kXsdDouble && detail::matches_turtle_double(lex)) ||
      (dt == vocab::kXsdBoolean && (lex == "true" || lex == "false")))
    return lex;
  return detail::quote_string(lex) + "^^" + format_iri(l.datatype(), prefixes);
}

/// Deterministic Turtle-star text: @prefix lines sorted by label, a blank
/// line, then one triple per line in triple order. Blank nodes are renamed
/// canonically (b1, b2, ...).
inline std::string serialize_turtle_star(const Graph& g, const PrefixTable& prefixes = {}) {
  std::string out;
  for (const auto& [label, ns] : prefixes) out += "@prefix " + label + ": <" + ns + "> .\n";
  if (!prefixes.empty() && !g.empty()) out += '\n';
  for (const Triple& t : canonicalize_blank_nodes(g)) out += format_triple(t, prefixes) + " .\n";
  return out;
}

// ---------------------------------------------------------------------------
// Reification

class NotPlainRdf : public Error {
 public:
  using Error::Error;
};

/// Replaces every embedded triple by a blank node r1, r2, ... (in triple
/// order, skipping labels already present) described with rdf:subject,
/// rdf:predicate and rdf:object.
inline Graph unfold_to_rdf(const Graph& g) {
  std::set<Triple> embedded = trefs(g);
  std::set<std::string> used;
  for (const BlankNode& b : blank_nodes(g)) used.insert(b.label());

  std::map<Triple, BlankNode> node_of;
  std::size_t n = 0;
  for (const Triple& t : embedded) {
    std::string label;
    do label = "r" + std::to_string(++n);
    while (used.contains(label));
    node_of.emplace(t, BlankNode(label));
  }

  auto flat = [&](const Term& x) -> Term {
    if (const Triple* t = as_triple(x)) return node_of.at(*t);
    return x;
  };
  std::set<Triple> out;
  for (const auto& [t, r] : node_of) {
    out.insert(Triple(r, Iri(vocab::kRdfType), Iri(vocab::kRdfStatement)));
    out.insert(Triple(r, Iri(vocab::kRdfSubject), flat(t.subject())));
    out.insert(Triple(r, Iri(vocab::kRdfPredicate), t.predicate()));
    out.insert(Triple(r, Iri(vocab::kRdfObject), flat(t.object())));
  }
  for (const Triple& t : g) out.insert(Triple(flat(t.subject()), t.predicate(), flat(t.object())));
  return Graph(std::move(out));
}

/// Plain RDF read as RDF-star: the identity, defined on graphs without nesting.
inline Graph embed_plain_rdf(const Graph& g) {
  for (const Triple& t : g) {
    if (nesting_depth(t) > 0) throw NotPlainRdf("graph contains embedded triples");
  }
  return g;
}

}  // namespace rdfpg
