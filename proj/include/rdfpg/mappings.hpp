#pragma once

// Value/literal, IRI/string, label/key and vertex identity mappings.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <variant>

#include "rdfpg/error.hpp"
#include "rdfpg/pg_model.hpp"
#include "rdfpg/rdf_model.hpp"

namespace rdfpg {

/// Which literals have a value. Lenient accepts every parseable lexical form
/// (and xsd:decimal); strict accepts only forms that vm() itself produces.
enum class LiteralMode { Lenient, Strict };

// ---------------------------------------------------------------------------
// Lexical forms

namespace lexical {

namespace detail {

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), rdfpg::detail::is_ascii_digit);
}

inline std::string_view strip_plus(std::string_view s) {
  return !s.empty() && s.front() == '+' ? s.substr(1) : s;
}

inline std::string shortest(double d, std::chars_format fmt) {
  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof buf, d, fmt);
  return std::string(buf, res.ptr);
}

inline std::string shortest(double d) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

inline std::optional<double> to_double(std::string_view s) {
  s = strip_plus(s);
  double d = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), d);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return d;
}

}  // namespace detail

/// `[+-]?[0-9]+`
inline bool is_integer(std::string_view s) {
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
  return detail::all_digits(s);
}

/// `[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)`
inline bool is_decimal(std::string_view s) {
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
  auto dot = s.find('.');
  if (dot == std::string_view::npos) return detail::all_digits(s);
  auto whole = s.substr(0, dot), frac = s.substr(dot + 1);
  if (whole.empty() && frac.empty()) return false;
  return (whole.empty() || detail::all_digits(whole)) && (frac.empty() || detail::all_digits(frac));
}

/// Decimal mantissa followed by an optional exponent, or (+|-)INF.
inline bool is_double(std::string_view s) {
  if (s == "INF" || s == "+INF" || s == "-INF" || s == "NaN") return true;
  auto e = s.find_first_of("eE");
  if (e == std::string_view::npos) return is_decimal(s);
  auto exp = s.substr(e + 1);
  return is_decimal(s.substr(0, e)) && is_integer(exp);
}

inline std::string canonical_integer(const BigInt& n) { return n.str(); }

/// Shortest round-tripping digits with an explicit exponent: 0.5 → "0.5E0",
/// 1928 → "1928.0E0", 1e20 → "1.0E20".
inline std::string canonical_double(double d) {
  if (std::isinf(d)) return d > 0 ? "INF" : "-INF";
  std::string s = detail::shortest(d);
  std::string mantissa = s, exponent = "0";
  if (auto e = s.find('e'); e != std::string::npos) {
    mantissa = s.substr(0, e);
    std::string_view exp = detail::strip_plus(std::string_view(s).substr(e + 1));
    int value = 0;
    std::from_chars(exp.data(), exp.data() + exp.size(), value);
    exponent = std::to_string(value);
  }
  if (mantissa.find('.') == std::string::npos) mantissa += ".0";
  return mantissa + "E" + exponent;
}

/// Shortest fixed-point form with at least one fractional digit: 0.5 → "0.5".
inline std::optional<std::string> canonical_decimal(double d) {
  if (!std::isfinite(d)) return std::nullopt;
  std::string s = detail::shortest(d, std::chars_format::fixed);
  if (s.find('.') == std::string::npos) s += ".0";
  return s;
}

inline std::optional<BigInt> parse_integer(std::string_view s) {
  if (!is_integer(s)) return std::nullopt;
  // cpp_int reads a leading 0 as octal, so drop leading zeros first
  std::string_view digits = detail::strip_plus(s);
  bool negative = digits.front() == '-';
  if (negative) digits.remove_prefix(1);
  std::size_t nz = digits.find_first_not_of('0');
  digits = nz == std::string_view::npos ? std::string_view("0") : digits.substr(nz);
  BigInt n(std::string{digits});
  return negative ? BigInt(-n) : n;
}

inline std::optional<double> parse_decimal(std::string_view s) {
  if (!is_decimal(s)) return std::nullopt;
  auto d = detail::to_double(s);
  if (!d || !std::isfinite(*d)) return std::nullopt;
  return d;
}

inline std::optional<double> parse_double(std::string_view s) {
  if (s == "INF" || s == "+INF") return std::numeric_limits<double>::infinity();
  if (s == "-INF") return -std::numeric_limits<double>::infinity();
  if (s == "NaN" || !is_double(s)) return std::nullopt;
  auto d = detail::to_double(s);
  if (!d || !std::isfinite(*d)) return std::nullopt;
  return d;
}

inline std::optional<bool> parse_boolean(std::string_view s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  return std::nullopt;
}

}  // namespace lexical

// ---------------------------------------------------------------------------
// vm: property value ↔ literal

/// The value-to-literal mapping. Never produces a language-tagged literal.
inline Literal vm(const PropertyValue& v) {
  using K = PropertyValue::Kind;
  switch (v.kind()) {
    case K::Text:
      return Literal::string(v.text());
    case K::Integer:
      return Literal::typed(lexical::canonical_integer(v.integer()), vocab::kXsdInteger);
    case K::Double:
      return Literal::typed(lexical::canonical_double(v.real()), vocab::kXsdDouble);
    case K::Boolean:
      return Literal::typed(v.boolean() ? "true" : "false", vocab::kXsdBoolean);
  }
  throw Error("unreachable property value kind");
}

namespace detail {

inline std::optional<PropertyValue> parse_literal_value(const Literal& l) {
  if (l.language()) return std::nullopt;
  const std::string& dt = l.datatype().str();
  const std::string& lex = l.lexical();
  if (dt == vocab::kXsdString) return PropertyValue::of_text(lex);
  if (dt == vocab::kXsdInteger) {
    if (auto n = lexical::parse_integer(lex)) return PropertyValue::of_integer(std::move(*n));
  } else if (dt == vocab::kXsdDouble) {
    if (auto d = lexical::parse_double(lex)) return PropertyValue::of_double(*d);
  } else if (dt == vocab::kXsdDecimal) {
    if (auto d = lexical::parse_decimal(lex)) return PropertyValue::of_double(*d);
  } else if (dt == vocab::kXsdBoolean) {
    if (auto b = lexical::parse_boolean(lex)) return PropertyValue::of_bool(*b);
  }
  return std::nullopt;
}

}  // namespace detail

/// Inverse of vm(). std::nullopt means the literal is outside dom(vm⁻¹).
inline std::optional<PropertyValue> vm_inverse(const Literal& l, LiteralMode mode = LiteralMode::Lenient) {
  auto value = detail::parse_literal_value(l);
  if (value && mode == LiteralMode::Strict && vm(*value) != l) return std::nullopt;
  return value;
}

/// Rewrites every literal with a value to vm(vm⁻¹(l)), so that literals
/// denoting the same value become identical.
inline Term canonicalize_literal(const Term& term) {
  if (const auto* l = std::get_if<Literal>(&term)) {
    if (auto v = vm_inverse(*l)) return vm(*v);
    return term;
  }
  if (const Triple* t = as_triple(term)) {
    return EmbeddedTriple(Triple(canonicalize_literal(t->subject()), t->predicate(),
                                 canonicalize_literal(t->object())));
  }
  return term;
}

inline Graph canonicalize_literals(const Graph& g) {
  std::set<Triple> out;
  for (const Triple& t : g) {
    out.insert(Triple(canonicalize_literal(t.subject()), t.predicate(), canonicalize_literal(t.object())));
  }
  return Graph(std::move(out));
}

// ---------------------------------------------------------------------------
// im: IRI ↔ string

inline std::string im(const Iri& i) { return i.str(); }

inline std::optional<Iri> im_inverse(std::string_view s) {
  if (!Iri::is_valid(s)) return std::nullopt;
  return Iri(std::string(s));
}

// ---------------------------------------------------------------------------
// Percent-encoding and template mappings

inline bool is_unreserved(unsigned char c) {
  return rdfpg::detail::is_ascii_alnum(static_cast<char>(c)) || c == '-' || c == '.' || c == '_' || c == '~';
}

/// Encodes every byte outside `A-Z a-z 0-9 - . _ ~` as %XX (upper-case hex).
inline std::string percent_encode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    auto c = static_cast<unsigned char>(ch);
    if (is_unreserved(c)) {
      out += ch;
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
  return out;
}

inline std::optional<std::string> percent_decode(std::string_view s) {
  auto hex = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '%') {
      out += s[i];
      continue;
    }
    if (i + 2 >= s.size()) return std::nullopt;
    int hi = hex(s[i + 1]), lo = hex(s[i + 2]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out += static_cast<char>(hi * 16 + lo);
    i += 2;
  }
  return out;
}

/// Maps text s to the IRI prefix + percent-encode(s). Bijective onto its image.
class TemplateIriMapping {
 public:
  explicit TemplateIriMapping(std::string prefix) : prefix_(std::move(prefix)) {
    if (!Iri::is_valid(prefix_)) throw ConfigError("template prefix is not an absolute IRI: '" + prefix_ + "'");
  }

  const std::string& prefix() const { return prefix_; }

  Iri apply(std::string_view s) const { return Iri(prefix_ + percent_encode(s)); }

  /// Defined exactly on the image of apply().
  std::optional<std::string> invert(const Iri& i) const {
    std::string_view v = i.str();
    if (!v.starts_with(prefix_)) return std::nullopt;
    auto suffix = v.substr(prefix_.size());
    auto decoded = percent_decode(suffix);
    if (!decoded || percent_encode(*decoded) != suffix) return std::nullopt;
    return decoded;
  }

  bool operator==(const TemplateIriMapping&) const = default;

 private:
  std::string prefix_;
};

inline constexpr std::string_view kDefaultPropertyKeyPrefix = "http://example.org/property/";
inline constexpr std::string_view kDefaultEdgeLabelPrefix = "http://example.org/relationship/";

// ---------------------------------------------------------------------------
// Vertex identities

struct FreshBlankNodes {
  bool operator==(const FreshBlankNodes&) const = default;
};

struct IriTemplate {
  TemplateIriMapping mapping;
  bool operator==(const IriTemplate&) const = default;
};

using VertexIdentityStrategy = std::variant<FreshBlankNodes, IriTemplate>;

/// Parses "bnode" or "iri:<prefix>".
inline VertexIdentityStrategy parse_vertex_identity_strategy(std::string_view text) {
  if (text == "bnode") return FreshBlankNodes{};
  if (text.starts_with("iri:")) return IriTemplate{TemplateIriMapping(std::string(text.substr(4)))};
  throw ConfigError("vertex id strategy must be 'bnode' or 'iri:<prefix>', got '" + std::string(text) + "'");
}

/// An injective vertex → (IRI | blank node) mapping. Fresh blank nodes are
/// b1, b2, ... in vertex id order.
inline std::map<VertexId, Term> assign_vertex_identities(const VertexIdentityStrategy& strategy,
                                                         const PropertyGraph& g) {
  std::map<VertexId, Term> out;
  std::size_t n = 0;
  for (const VertexId& v : g.vertices()) {
    if (std::holds_alternative<FreshBlankNodes>(strategy)) {
      out.emplace(v, BlankNode("b" + std::to_string(++n)));
    } else {
      out.emplace(v, std::get<IriTemplate>(strategy).mapping.apply(v));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Configuration

struct MappingConfig {
  TemplateIriMapping property_keys{std::string(kDefaultPropertyKeyPrefix)};
  TemplateIriMapping edge_labels{std::string(kDefaultEdgeLabelPrefix)};
  VertexIdentityStrategy vertex_ids = FreshBlankNodes{};
  LiteralMode literal_mode = LiteralMode::Lenient;

  /// Key and label IRIs must come from disjoint images.
  void validate() const {
    const std::string& k = property_keys.prefix();
    const std::string& l = edge_labels.prefix();
    if (k.starts_with(l) || l.starts_with(k))
      throw ConfigError("property key prefix and edge label prefix must not be prefixes of each other ('" + k +
                        "', '" + l + "')");
  }
};

}  // namespace rdfpg
