#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "indoamr/amr_graph.hpp"
#include "indoamr/conllu.hpp"
#include "indoamr/error.hpp"
#include "indoamr/pairgen.hpp"

namespace indoamr {

struct LabeledPair {
  DepPair pair;
  EdgeLabel label;
  double confidence = 1.0;
};

/// The dependency root when it takes part in a surviving pair (or there are
/// no pairs at all); otherwise the token with the most surviving out-pairs,
/// lowest index on ties.
inline const Token& select_root(const std::vector<LabeledPair>& pairs, const AnnotatedSentence& s) {
  if (s.tokens.empty()) throw FormatError("cannot select a root in empty sentence '" + s.id + "'");
  const Token& root = s.root();
  if (pairs.empty()) return root;
  for (const auto& p : pairs)
    if (p.pair.parent.index == root.index || p.pair.child.index == root.index) return root;

  std::map<int, std::size_t> out_degree;
  for (const auto& p : pairs) ++out_degree[p.pair.parent.index];
  int best = 0;
  std::size_t best_count = 0;
  for (const auto& [index, count] : out_degree) {
    if (count > best_count) {
      best = index;
      best_count = count;
    }
  }
  return s.token(best);
}

// Lemmas may carry characters PENMAN cannot hold in a bare symbol.
inline std::string concept_from_lemma(const std::string& lemma) {
  std::string c = lemma;
  for (auto& ch : c)
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '(' || ch == ')' || ch == '"') ch = '_';
  if (c.empty() || c == "/" || c.front() == ':') c.insert(c.begin(), '_');
  return c;
}

/// Builds a tree rooted at select_root() over the pairs reachable from it.
/// Concepts are lemmas; variables are vv1, vv2, ... in depth-first order,
/// children visited by increasing token index.
inline AmrGraph build_graph(const std::vector<LabeledPair>& pairs, const AnnotatedSentence& s) {
  const Token& root = select_root(pairs, s);
  std::map<int, std::vector<const LabeledPair*>> children;
  for (const auto& p : pairs) children[p.pair.parent.index].push_back(&p);
  for (auto& [parent, list] : children)
    std::stable_sort(list.begin(), list.end(),
                     [](const auto* a, const auto* b) { return a->pair.child.index < b->pair.child.index; });

  std::vector<AmrNode> nodes;
  std::vector<AmrEdge> edges;
  std::map<int, std::string> variable_of;
  auto visit = [&](auto&& self, const Token& t) -> void {
    const std::string var = "vv" + std::to_string(nodes.size() + 1);
    variable_of[t.index] = var;
    nodes.push_back({var, concept_from_lemma(t.lemma)});
    auto it = children.find(t.index);
    if (it == children.end()) return;
    for (const auto* p : it->second) {
      if (variable_of.count(p->pair.child.index)) continue;
      const std::size_t edge = edges.size();
      edges.push_back({var, "", p->label});
      self(self, p->pair.child);
      edges[edge].target = variable_of.at(p->pair.child.index);
    }
  };
  visit(visit, root);
  return AmrGraph(std::move(nodes), std::move(edges), variable_of.at(root.index));
}

}  // namespace indoamr
