#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "indoamr/error.hpp"

namespace indoamr {

// The closed label inventory used for annotation and classification, in
// class-index order.
inline constexpr std::array<std::string_view, 6> kCoreLabels = {
    "ARG0", "ARG1", "name", "time", "location", "mod"};

/// Role attached to an AMR edge. Stored without the leading colon. Any label
/// is representable so foreign corpora round-trip; core_index() tells whether
/// it belongs to the six-label set.
class EdgeLabel {
 public:
  EdgeLabel() = default;
  explicit EdgeLabel(std::string name) : name_(std::move(name)) {
    if (name_.empty() || name_.front() == ':')
      throw FormatError("edge label must be a bare non-empty name: '" + name_ + "'");
  }

  static EdgeLabel core(std::size_t index) { return EdgeLabel(std::string(kCoreLabels.at(index))); }

  const std::string& name() const { return name_; }
  std::string penman() const { return ":" + name_; }

  std::optional<std::size_t> core_index() const {
    for (std::size_t i = 0; i < kCoreLabels.size(); ++i)
      if (kCoreLabels[i] == name_) return i;
    return std::nullopt;
  }

  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
  friend auto operator<=>(const EdgeLabel&, const EdgeLabel&) = default;

 private:
  std::string name_;
};

struct AmrNode {
  std::string variable;
  std::string concept_name;

  friend bool operator==(const AmrNode&, const AmrNode&) = default;
};

struct AmrEdge {
  std::string source;
  std::string target;
  EdgeLabel label;

  friend bool operator==(const AmrEdge&, const AmrEdge&) = default;
};

inline bool is_valid_variable(std::string_view v) {
  if (v.empty() || !std::isalpha(static_cast<unsigned char>(v.front()))) return false;
  return std::all_of(v.begin(), v.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; });
}

// A concept is either a bare symbol (no whitespace, parentheses or quotes)
// or a double-quoted string constant.
inline bool is_valid_concept(std::string_view c) {
  if (c.empty()) return false;
  if (c.size() >= 2 && c.front() == '"' && c.back() == '"') return true;
  if (c.front() == ':' || c == "/") return false;
  return std::none_of(c.begin(), c.end(), [](char ch) {
    return std::isspace(static_cast<unsigned char>(ch)) || ch == '(' || ch == ')' || ch == '"';
  });
}

/// Rooted, labeled, directed acyclic graph.
///
/// Construction validates every structural invariant and throws FormatError
/// on violation: unique well-formed variables, non-empty concepts, edge
/// endpoints that exist, no self loops, no duplicate (source, target, label)
/// triples, no directed cycles, and every node reachable from the root along
/// edge direction.
///
/// Nodes and edges are stored in canonical depth-first order from the root,
/// children following the relative order in which their edges were given.
/// This is the order the PENMAN writer emits and the reader produces, so
/// parse/serialize round-trips compare equal.
class AmrGraph {
 public:
  AmrGraph(std::vector<AmrNode> nodes, std::vector<AmrEdge> edges, std::string root) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      if (!is_valid_variable(n.variable))
        throw FormatError("invalid variable name '" + n.variable + "'");
      if (!is_valid_concept(n.concept_name))
        throw FormatError("invalid concept '" + n.concept_name + "' for variable " + n.variable);
      if (!index.emplace(n.variable, i).second)
        throw FormatError("duplicate variable '" + n.variable + "'");
    }
    if (!index.count(root)) throw FormatError("root '" + root + "' is not a node");

    std::set<std::tuple<std::string, std::string, std::string>> seen;
    std::vector<std::vector<std::size_t>> out(nodes.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto& edge = edges[e];
      if (!index.count(edge.source) || !index.count(edge.target))
        throw FormatError("edge " + edge.source + " -> " + edge.target + " references an unknown variable");
      if (edge.source == edge.target) throw FormatError("self loop on '" + edge.source + "'");
      if (!seen.emplace(edge.source, edge.target, edge.label.name()).second)
        throw FormatError("duplicate edge " + edge.label.penman() + "(" + edge.source + ", " + edge.target + ")");
      out[index.at(edge.source)].push_back(e);
    }

    // Iterative DFS with colors: detects directed cycles and fixes the
    // canonical order in one pass.
    enum class Color { white, grey, black };
    std::vector<Color> color(nodes.size(), Color::white);
    struct Frame {
      std::size_t node;
      std::size_t next_edge;
    };
    std::vector<Frame> stack;
    const std::size_t root_index = index.at(root);
    color[root_index] = Color::grey;
    nodes_.push_back(nodes[root_index]);
    stack.push_back({root_index, 0});
    while (!stack.empty()) {
      auto& frame = stack.back();
      if (frame.next_edge == out[frame.node].size()) {
        color[frame.node] = Color::black;
        stack.pop_back();
        continue;
      }
      const auto& edge = edges[out[frame.node][frame.next_edge++]];
      const std::size_t target = index.at(edge.target);
      if (color[target] == Color::grey)
        throw FormatError("directed cycle through '" + edge.target + "'");
      edges_.push_back(edge);
      if (color[target] == Color::white) {
        color[target] = Color::grey;
        nodes_.push_back(nodes[target]);
        stack.push_back({target, 0});
      }
    }
    if (nodes_.size() != nodes.size()) {
      for (std::size_t i = 0; i < nodes.size(); ++i)
        if (color[i] == Color::white)
          throw FormatError("node '" + nodes[i].variable + "' is not reachable from root '" + root + "'");
    }
    root_ = std::move(root);
  }

  const std::vector<AmrNode>& nodes() const { return nodes_; }
  const std::vector<AmrEdge>& edges() const { return edges_; }
  const std::string& root() const { return root_; }

  const AmrNode* find(std::string_view variable) const {
    for (const auto& n : nodes_)
      if (n.variable == variable) return &n;
    return nullptr;
  }

  const std::string& concept_of(std::string_view variable) const {
    const auto* n = find(variable);
    if (!n) throw FormatError("unknown variable '" + std::string(variable) + "'");
    return n->concept_name;
  }

  // Structural equality: same variable->concept map, root, and ordered edges.
  friend bool operator==(const AmrGraph& a, const AmrGraph& b) {
    if (a.root_ != b.root_ || a.edges_ != b.edges_ || a.nodes_.size() != b.nodes_.size()) return false;
    std::map<std::string, std::string> lhs, rhs;
    for (const auto& n : a.nodes_) lhs.emplace(n.variable, n.concept_name);
    for (const auto& n : b.nodes_) rhs.emplace(n.variable, n.concept_name);
    return lhs == rhs;
  }

 private:
  std::vector<AmrNode> nodes_;
  std::vector<AmrEdge> edges_;
  std::string root_;
};

struct InstanceTriple {
  std::string variable;
  std::string concept_name;
  friend bool operator==(const InstanceTriple&, const InstanceTriple&) = default;
};

struct RelationTriple {
  EdgeLabel label;
  std::string source;
  std::string target;
  friend bool operator==(const RelationTriple&, const RelationTriple&) = default;
};

/// Triple decomposition scored by SMATCH.
struct TripleSet {
  std::vector<InstanceTriple> instances;
  std::vector<RelationTriple> relations;
  std::string top;

  std::size_t size() const { return instances.size() + relations.size() + 1; }
};

inline TripleSet to_triples(const AmrGraph& g) {
  TripleSet t;
  t.instances.reserve(g.nodes().size());
  for (const auto& n : g.nodes()) t.instances.push_back({n.variable, n.concept_name});
  t.relations.reserve(g.edges().size());
  for (const auto& e : g.edges()) t.relations.push_back({e.label, e.source, e.target});
  t.top = g.root();
  return t;
}

}  // namespace indoamr
