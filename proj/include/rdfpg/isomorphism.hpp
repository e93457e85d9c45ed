#pragma once

// Blank-node relabeling, canonical labels and graph isomorphism.
//
// Blank nodes are coloured by iterated refinement: a node's colour is the
// rank of (previous colour, sorted encodings of the triples it occurs in,
// with every blank node replaced by its colour). Canonical labelling breaks
// the remaining ties by individualisation; isomorphism testing backtracks
// over nodes of equal colour.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rdfpg/rdf_model.hpp"

namespace rdfpg {

using BlankNodeMap = std::map<BlankNode, BlankNode>;

inline Term relabel(const Term& term, const BlankNodeMap& mapping) {
  if (const auto* b = std::get_if<BlankNode>(&term)) {
    auto it = mapping.find(*b);
    return it == mapping.end() ? term : Term(it->second);
  }
  if (const Triple* t = as_triple(term)) {
    return EmbeddedTriple(Triple(relabel(t->subject(), mapping), t->predicate(),
                                 relabel(t->object(), mapping)));
  }
  return term;
}

inline Triple relabel(const Triple& t, const BlankNodeMap& mapping) {
  return Triple(relabel(t.subject(), mapping), t.predicate(), relabel(t.object(), mapping));
}

/// Renames blank nodes; labels missing from `mapping` are kept.
inline Graph relabel(const Graph& g, const BlankNodeMap& mapping) {
  std::set<Triple> out;
  for (const Triple& t : g) out.insert(relabel(t, mapping));
  return Graph(std::move(out));
}

namespace detail {

// Refinement over one or more graphs at once; node = (graph index, label).
class BlankNodeColouring {
 public:
  using Node = std::pair<std::size_t, BlankNode>;

  explicit BlankNodeColouring(const std::vector<const Graph*>& graphs) : graphs_(graphs) {
    for (std::size_t gi = 0; gi < graphs_.size(); ++gi) {
      for (const Triple& t : *graphs_[gi]) {
        std::set<BlankNode> seen;
        collect(t, seen);
        for (const BlankNode& b : seen) {
          auto [it, inserted] = index_.try_emplace(Node{gi, b}, nodes_.size());
          if (inserted) {
            nodes_.push_back(Node{gi, b});
            occurrences_.emplace_back();
          }
          occurrences_[it->second].push_back(&t);
        }
      }
    }
    colour_.assign(nodes_.size(), 0);
    refine();
  }

  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t colour(std::size_t node) const { return colour_[node]; }
  std::size_t colour_count() const { return count_; }
  std::size_t index_of(std::size_t graph, const BlankNode& b) const { return index_.at(Node{graph, b}); }

  /// Splits `node` off from the rest of its cell (it sorts first) and refines.
  void individualise(std::size_t node) {
    std::vector<std::pair<std::size_t, int>> keys(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) keys[i] = {colour_[i], i == node ? 0 : 1};
    assign_ranks(keys);
    refine();
  }

 private:
  static void collect(const Triple& t, std::set<BlankNode>& out) {
    for (const Term* pos : {&t.subject(), &t.object()}) {
      if (const auto* b = std::get_if<BlankNode>(pos)) out.insert(*b);
      else if (const Triple* inner = as_triple(*pos)) collect(*inner, out);
    }
  }

  void encode(const Term& term, std::size_t graph, std::size_t self, std::string& out) const {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Iri>) {
            out += '<';
            out += x.str();
            out += '>';
          } else if constexpr (std::is_same_v<T, BlankNode>) {
            std::size_t n = index_.at(Node{graph, x});
            out += n == self ? std::string("_:*") : "_:" + std::to_string(colour_[n]);
          } else if constexpr (std::is_same_v<T, Literal>) {
            out += '"';
            out += std::to_string(x.lexical().size());
            out += ':';
            out += x.lexical();
            out += "^^";
            out += x.datatype().str();
            if (x.language()) out += "@" + *x.language();
          } else {
            encode(x.triple(), graph, self, out);
          }
        },
        term);
    out += ' ';
  }

  void encode(const Triple& t, std::size_t graph, std::size_t self, std::string& out) const {
    out += "<< ";
    encode(t.subject(), graph, self, out);
    out += t.predicate().str();
    out += ' ';
    encode(t.object(), graph, self, out);
    out += ">>";
  }

  template <typename Key>
  void assign_ranks(const std::vector<Key>& keys) {
    std::vector<Key> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      colour_[i] = static_cast<std::size_t>(
          std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
    }
    count_ = sorted.size();
  }

  void refine() {
    while (true) {
      std::vector<std::pair<std::size_t, std::vector<std::string>>> keys(nodes_.size());
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        std::vector<std::string> sigs;
        for (const Triple* t : occurrences_[i]) {
          std::string s;
          encode(*t, nodes_[i].first, i, s);
          sigs.push_back(std::move(s));
        }
        std::sort(sigs.begin(), sigs.end());
        keys[i] = {colour_[i], std::move(sigs)};
      }
      std::size_t before = count_;
      assign_ranks(keys);
      if (count_ == before) return;
    }
  }

  std::vector<const Graph*> graphs_;
  std::vector<Node> nodes_;
  std::map<Node, std::size_t> index_;
  std::vector<std::vector<const Triple*>> occurrences_;
  std::vector<std::size_t> colour_;
  std::size_t count_ = 0;
};

// Tie-break order on labels that ranks b2 before b10.
inline bool label_less(const BlankNode& a, const BlankNode& b) {
  return std::make_tuple(a.label().size(), a.label()) < std::make_tuple(b.label().size(), b.label());
}

}  // namespace detail

/// Maps every blank node of `g` to `<prefix>1`, `<prefix>2`, ... The result
/// depends only on the structure of `g` up to blank-node renaming, except for
/// graphs whose blank nodes refinement cannot tell apart without being
/// automorphic (rare regular structures).
inline BlankNodeMap canonical_blank_node_labels(const Graph& g, const std::string& prefix = "b") {
  std::vector<const Graph*> graphs{&g};
  detail::BlankNodeColouring colouring(graphs);
  const auto& nodes = colouring.nodes();
  while (colouring.colour_count() < nodes.size()) {
    // First non-singleton cell; its smallest label goes first.
    std::vector<std::size_t> cell_size(colouring.colour_count(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) ++cell_size[colouring.colour(i)];
    std::size_t cell = 0;
    while (cell_size[cell] < 2) ++cell;
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (colouring.colour(i) != cell) continue;
      if (!pick || detail::label_less(nodes[i].second, nodes[*pick].second)) pick = i;
    }
    colouring.individualise(*pick);
  }
  BlankNodeMap out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out.emplace(nodes[i].second, BlankNode(prefix + std::to_string(colouring.colour(i) + 1)));
  }
  return out;
}

inline Graph canonicalize_blank_nodes(const Graph& g) { return relabel(g, canonical_blank_node_labels(g)); }

/// Finds a blank-node bijection mapping `a` onto `b`, if one exists.
inline std::optional<BlankNodeMap> find_isomorphism(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<const Graph*> graphs{&a, &b};
  detail::BlankNodeColouring colouring(graphs);
  const auto& nodes = colouring.nodes();

  std::vector<std::size_t> left, right;
  for (std::size_t i = 0; i < nodes.size(); ++i) (nodes[i].first == 0 ? left : right).push_back(i);
  if (left.size() != right.size()) return std::nullopt;

  std::map<std::size_t, std::vector<std::size_t>> candidates;
  for (std::size_t r : right) candidates[colouring.colour(r)].push_back(r);
  std::map<std::size_t, std::size_t> left_per_colour;
  for (std::size_t l : left) ++left_per_colour[colouring.colour(l)];
  for (const auto& [c, n] : left_per_colour) {
    auto it = candidates.find(c);
    if (it == candidates.end() || it->second.size() != n) return std::nullopt;
  }

  // Most constrained first.
  std::sort(left.begin(), left.end(), [&](std::size_t x, std::size_t y) {
    auto cx = left_per_colour[colouring.colour(x)], cy = left_per_colour[colouring.colour(y)];
    return std::tie(cx, x) < std::tie(cy, y);
  });
  std::map<BlankNode, std::size_t> position;
  for (std::size_t i = 0; i < left.size(); ++i) position.emplace(nodes[left[i]].second, i);

  // Each triple of `a` is checked once its last blank node has been mapped.
  std::vector<std::vector<const Triple*>> check_at(left.size() + 1);
  for (const Triple& t : a) {
    std::set<BlankNode> seen;
    std::set<Term> terms = terms_plus(t);
    for (const Term& term : terms) {
      if (const auto* bn = std::get_if<BlankNode>(&term)) seen.insert(*bn);
    }
    std::size_t last = 0;
    for (const BlankNode& bn : seen) last = std::max(last, position.at(bn) + 1);
    check_at[last].push_back(&t);
  }
  for (const Triple* t : check_at[0]) {
    if (!b.contains(*t)) return std::nullopt;
  }

  BlankNodeMap mapping;
  std::set<std::size_t> used;
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == left.size()) return true;
    std::size_t l = left[depth];
    for (std::size_t r : candidates[colouring.colour(l)]) {
      if (used.contains(r)) continue;
      mapping.insert_or_assign(nodes[l].second, nodes[r].second);
      used.insert(r);
      bool ok = std::all_of(check_at[depth + 1].begin(), check_at[depth + 1].end(),
                            [&](const Triple* t) { return b.contains(relabel(*t, mapping)); });
      if (ok && self(self, depth + 1)) return true;
      used.erase(r);
      mapping.erase(nodes[l].second);
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return mapping;
}

/// Equality up to blank-node renaming.
inline bool are_isomorphic(const Graph& a, const Graph& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace rdfpg
