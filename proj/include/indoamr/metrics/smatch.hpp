#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "indoamr/amr_corpus.hpp"
#include "indoamr/amr_graph.hpp"
#include "indoamr/error.hpp"
#include "indoamr/metrics/scores.hpp"

namespace indoamr {

inline constexpr std::size_t kDefaultSmatchRestarts = 4;
inline constexpr std::uint64_t kDefaultSeed = 42;

/// Partial injective map from predicted to gold variables, by node position;
/// -1 means unmapped.
struct VariableMapping {
  std::vector<int> gold_of;
};

namespace smatch_detail {

// Triples of a prediction/gold pair indexed for repeated scoring.
class Alignment {
 public:
  Alignment(const AmrGraph& pred, const AmrGraph& gold) {
    const auto& pn = pred.nodes();
    const auto& gn = gold.nodes();
    n_ = pn.size();
    m_ = gn.size();
    std::map<std::string, int> pred_index, gold_index, labels;
    for (std::size_t i = 0; i < n_; ++i) pred_index[pn[i].variable] = static_cast<int>(i);
    for (std::size_t j = 0; j < m_; ++j) gold_index[gn[j].variable] = static_cast<int>(j);
    concept_match_.assign(n_ * m_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < m_; ++j) concept_match_[i * m_ + j] = pn[i].concept_name == gn[j].concept_name;
    auto label_id = [&](const EdgeLabel& l) {
      return labels.emplace(l.name(), static_cast<int>(labels.size())).first->second;
    };
    for (const auto& e : pred.edges())
      pred_relations_.push_back({label_id(e.label), pred_index.at(e.source), pred_index.at(e.target)});
    for (const auto& e : gold.edges())
      gold_relations_.insert(key(label_id(e.label), gold_index.at(e.source), gold_index.at(e.target)));
    pred_root_ = pred_index.at(pred.root());
    gold_root_ = gold_index.at(gold.root());
  }

  std::size_t pred_size() const { return n_; }
  std::size_t gold_size() const { return m_; }
  bool concept_match(std::size_t i, std::size_t j) const { return concept_match_[i * m_ + j] != 0; }

  std::size_t matched(const std::vector<int>& gold_of) const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n_; ++i)
      if (gold_of[i] >= 0 && concept_match(i, static_cast<std::size_t>(gold_of[i]))) ++count;
    for (const auto& r : pred_relations_) {
      const int a = gold_of[static_cast<std::size_t>(r.source)], b = gold_of[static_cast<std::size_t>(r.target)];
      if (a >= 0 && b >= 0 && gold_relations_.count(key(r.label, a, b))) ++count;
    }
    if (gold_of[static_cast<std::size_t>(pred_root_)] == gold_root_) ++count;
    return count;
  }

 private:
  struct Relation {
    int label, source, target;
  };

  std::uint64_t key(int label, int a, int b) const {
    return (static_cast<std::uint64_t>(label) * m_ + static_cast<std::uint64_t>(a)) * m_ +
           static_cast<std::uint64_t>(b);
  }

  std::size_t n_ = 0, m_ = 0;
  std::vector<char> concept_match_;
  std::vector<Relation> pred_relations_;
  std::unordered_set<std::uint64_t> gold_relations_;
  int pred_root_ = 0, gold_root_ = 0;
};

inline std::vector<int> concept_seeded_start(const Alignment& a, std::mt19937_64& rng) {
  std::vector<int> gold_of(a.pred_size(), -1);
  std::vector<bool> used(a.gold_size(), false);
  for (std::size_t i = 0; i < a.pred_size(); ++i) {
    for (std::size_t j = 0; j < a.gold_size(); ++j) {
      if (!used[j] && a.concept_match(i, j)) {
        gold_of[i] = static_cast<int>(j);
        used[j] = true;
        break;
      }
    }
  }
  std::vector<int> free;
  for (std::size_t j = 0; j < a.gold_size(); ++j)
    if (!used[j]) free.push_back(static_cast<int>(j));
  std::shuffle(free.begin(), free.end(), rng);
  std::size_t next = 0;
  for (std::size_t i = 0; i < a.pred_size() && next < free.size(); ++i)
    if (gold_of[i] < 0) gold_of[i] = free[next++];
  return gold_of;
}

inline std::vector<int> random_start(const Alignment& a, std::mt19937_64& rng) {
  std::vector<int> pred_order(a.pred_size()), gold_order(a.gold_size());
  for (std::size_t i = 0; i < pred_order.size(); ++i) pred_order[i] = static_cast<int>(i);
  for (std::size_t j = 0; j < gold_order.size(); ++j) gold_order[j] = static_cast<int>(j);
  std::shuffle(pred_order.begin(), pred_order.end(), rng);
  std::shuffle(gold_order.begin(), gold_order.end(), rng);
  std::vector<int> gold_of(a.pred_size(), -1);
  for (std::size_t t = 0; t < std::min(pred_order.size(), gold_order.size()); ++t)
    gold_of[static_cast<std::size_t>(pred_order[t])] = gold_order[t];
  return gold_of;
}

// Steepest ascent over reassignments (to a free gold variable or to
// unmapped) and pairwise swaps; the first best move wins ties.
inline std::size_t climb(const Alignment& a, std::vector<int>& gold_of) {
  std::size_t current = a.matched(gold_of);
  while (true) {
    std::vector<bool> used(a.gold_size(), false);
    for (int g : gold_of)
      if (g >= 0) used[static_cast<std::size_t>(g)] = true;

    std::size_t best = current;
    std::vector<int> best_mapping;
    auto consider = [&](std::vector<int>& candidate) {
      const std::size_t score = a.matched(candidate);
      if (score > best) {
        best = score;
        best_mapping = candidate;
      }
    };

    std::vector<int> candidate = gold_of;
    for (std::size_t i = 0; i < gold_of.size(); ++i) {
      const int original = gold_of[i];
      for (std::size_t j = 0; j < a.gold_size(); ++j) {
        if (used[j]) continue;
        candidate[i] = static_cast<int>(j);
        consider(candidate);
      }
      if (original >= 0) {
        candidate[i] = -1;
        consider(candidate);
      }
      candidate[i] = original;
    }
    for (std::size_t i = 0; i < gold_of.size(); ++i) {
      for (std::size_t i2 = i + 1; i2 < gold_of.size(); ++i2) {
        if (gold_of[i] == gold_of[i2]) continue;
        std::swap(candidate[i], candidate[i2]);
        consider(candidate);
        std::swap(candidate[i], candidate[i2]);
      }
    }
    if (best_mapping.empty()) return current;
    gold_of = std::move(best_mapping);
    current = best;
  }
}

}  // namespace smatch_detail

struct SmatchResult {
  SmatchScore score;
  VariableMapping mapping;
};

/// SMATCH by hill climbing. Restart 0 starts from a concept-matching
/// mapping, later restarts from random injective mappings; all randomness
/// comes from `seed`. The best count wins, ties by lowest restart index.
inline SmatchResult smatch_detailed(const AmrGraph& pred, const AmrGraph& gold,
                                    std::size_t restarts = kDefaultSmatchRestarts,
                                    std::uint64_t seed = kDefaultSeed) {
  if (restarts < 1) throw ConfigError("smatch needs at least one restart");
  const smatch_detail::Alignment a(pred, gold);
  std::mt19937_64 rng(seed);
  std::size_t best = 0;
  std::vector<int> best_mapping;
  for (std::size_t r = 0; r < restarts; ++r) {
    auto mapping = r == 0 ? smatch_detail::concept_seeded_start(a, rng) : smatch_detail::random_start(a, rng);
    const std::size_t score = smatch_detail::climb(a, mapping);
    if (best_mapping.empty() || score > best) {
      best = score;
      best_mapping = std::move(mapping);
    }
  }
  const std::size_t pred_total = pred.nodes().size() + pred.edges().size() + 1;
  const std::size_t gold_total = gold.nodes().size() + gold.edges().size() + 1;
  return {SmatchScore::from_counts(best, pred_total, gold_total), {std::move(best_mapping)}};
}

inline SmatchScore smatch(const AmrGraph& pred, const AmrGraph& gold, std::size_t restarts = kDefaultSmatchRestarts,
                          std::uint64_t seed = kDefaultSeed) {
  return smatch_detailed(pred, gold, restarts, seed).score;
}

inline constexpr std::size_t kOracleMaxVariables = 8;

/// Exact SMATCH by exhaustive search over injective mappings, written
/// directly against the triple lists. Extending a mapping never loses a
/// match, so only maximal mappings (every variable of the smaller graph
/// mapped) are enumerated, with branch-and-bound pruning.
inline SmatchScore smatch_oracle(const AmrGraph& pred, const AmrGraph& gold) {
  const TripleSet tp = to_triples(pred), tg = to_triples(gold);
  const bool pred_is_small = tp.instances.size() <= tg.instances.size();
  const TripleSet& small = pred_is_small ? tp : tg;
  const TripleSet& large = pred_is_small ? tg : tp;
  if (small.instances.size() > kOracleMaxVariables)
    throw ConfigError("smatch_oracle supports at most " + std::to_string(kOracleMaxVariables) +
                      " variables in the smaller graph");

  const std::size_t ns = small.instances.size(), nl = large.instances.size();
  auto position = [](const TripleSet& t, const std::string& var) {
    for (std::size_t i = 0; i < t.instances.size(); ++i)
      if (t.instances[i].variable == var) return i;
    return t.instances.size();
  };

  std::vector<std::size_t> image(ns, nl);  // nl = unassigned
  std::vector<bool> taken(nl, false);
  std::size_t best = 0;

  auto relation_matches = [&](const RelationTriple& r) {
    const std::size_t s = position(small, r.source), t = position(small, r.target);
    if (image[s] == nl || image[t] == nl) return false;
    for (const auto& q : large.relations)
      if (q.label == r.label && q.source == large.instances[image[s]].variable &&
          q.target == large.instances[image[t]].variable)
        return true;
    return false;
  };

  auto count_fixed = [&](std::size_t assigned) {
    std::size_t matched = 0, open = 0;
    for (std::size_t i = 0; i < ns; ++i) {
      if (i < assigned)
        matched += small.instances[i].concept_name == large.instances[image[i]].concept_name;
      else
        ++open;
    }
    for (const auto& r : small.relations) {
      const std::size_t s = position(small, r.source), t = position(small, r.target);
      if (s < assigned && t < assigned)
        matched += relation_matches(r);
      else
        ++open;
    }
    const std::size_t root = position(small, small.top);
    if (root < assigned)
      matched += large.instances[image[root]].variable == large.top;
    else
      ++open;
    return std::pair{matched, open};
  };

  auto search = [&](auto&& self, std::size_t depth) -> void {
    const auto [matched, open] = count_fixed(depth);
    if (matched + open <= best && depth > 0) return;
    if (depth == ns) {
      best = std::max(best, matched);
      return;
    }
    for (std::size_t j = 0; j < nl; ++j) {
      if (taken[j]) continue;
      taken[j] = true;
      image[depth] = j;
      self(self, depth + 1);
      image[depth] = nl;
      taken[j] = false;
    }
  };
  search(search, 0);
  return SmatchScore::from_counts(best, tp.size(), tg.size());
}

struct SentenceSmatch {
  std::string id;
  SmatchScore score;
};

struct CorpusSmatch {
  SmatchScore total;
  std::vector<SentenceSmatch> sentences;
  std::size_t restarts = 0;
  std::uint64_t seed = 0;
};

/// Micro-averaged corpus SMATCH: triple counts are summed over sentences
/// before precision, recall and F1 are computed.
inline CorpusSmatch corpus_smatch(const std::vector<AmrEntry>& preds, const std::vector<AmrEntry>& golds,
                                  std::size_t restarts = kDefaultSmatchRestarts, std::uint64_t seed = kDefaultSeed) {
  if (preds.size() != golds.size())
    throw FormatError("prediction file has " + std::to_string(preds.size()) + " entries, gold file has " +
                      std::to_string(golds.size()));
  CorpusSmatch out;
  out.restarts = restarts;
  out.seed = seed;
  std::size_t matched = 0, pred_total = 0, gold_total = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].id != golds[i].id)
      throw FormatError("entry " + std::to_string(i + 1) + " id mismatch: prediction '" + preds[i].id +
                        "' vs gold '" + golds[i].id + "'");
    const auto s = smatch(preds[i].graph, golds[i].graph, restarts, seed);
    matched += s.matched;
    pred_total += s.predicted_total;
    gold_total += s.gold_total;
    out.sentences.push_back({preds[i].id, s});
  }
  out.total = SmatchScore::from_counts(matched, pred_total, gold_total);
  return out;
}

using LemmaPair = std::pair<std::string, std::string>;

/// Directional, unlabeled pair overlap; each gold pair is matched at most
/// once (multiset intersection).
inline PairScore pair_f1(const std::vector<LemmaPair>& predicted, const std::vector<LemmaPair>& gold) {
  std::map<LemmaPair, std::size_t> remaining;
  for (const auto& p : gold) ++remaining[p];
  std::size_t matched = 0;
  for (const auto& p : predicted) {
    auto it = remaining.find(p);
    if (it != remaining.end() && it->second > 0) {
      --it->second;
      ++matched;
    }
  }
  return PairScore::from_counts(matched, predicted.size(), gold.size());
}

inline std::vector<LemmaPair> gold_pairs(const AmrGraph& g) {
  std::vector<LemmaPair> out;
  for (const auto& e : g.edges()) out.emplace_back(g.concept_of(e.source), g.concept_of(e.target));
  return out;
}

}  // namespace indoamr
