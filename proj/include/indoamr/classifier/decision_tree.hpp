#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "indoamr/classifier/dataset.hpp"
#include "indoamr/classifier/tree.hpp"
#include "indoamr/error.hpp"

namespace indoamr {

enum class SplitCriterion { gini, entropy };

inline std::string to_string(SplitCriterion c) { return c == SplitCriterion::gini ? "gini" : "entropy"; }

inline SplitCriterion split_criterion_from(const std::string& name) {
  if (name == "gini") return SplitCriterion::gini;
  if (name == "entropy") return SplitCriterion::entropy;
  throw ConfigError("unknown split criterion '" + name + "' (expected gini or entropy)");
}

inline double gini(std::span<const double> counts) {
  double n = 0, sq = 0;
  for (double c : counts) n += c;
  if (n <= 0) return 0.0;
  for (double c : counts) sq += (c / n) * (c / n);
  return 1.0 - sq;
}

// Shannon entropy in bits.
inline double entropy(std::span<const double> counts) {
  double n = 0, h = 0;
  for (double c : counts) n += c;
  if (n <= 0) return 0.0;
  for (double c : counts)
    if (c > 0) h -= (c / n) * std::log2(c / n);
  return h;
}

struct TreeParams {
  std::size_t max_depth = 8;
  SplitCriterion criterion = SplitCriterion::gini;
  std::size_t min_samples_split = 2;

  void validate() const {
    if (max_depth < 1) throw ConfigError("max_depth must be a positive integer");
    if (min_samples_split < 2) throw ConfigError("min_samples_split must be at least 2");
  }

  nlohmann::json to_json() const {
    return {{"max_depth", max_depth}, {"criterion", to_string(criterion)}, {"min_samples_split", min_samples_split}};
  }

  static TreeParams from_json(const nlohmann::json& j) {
    TreeParams p{j.at("max_depth").get<std::size_t>(), split_criterion_from(j.at("criterion").get<std::string>()),
                 j.at("min_samples_split").get<std::size_t>()};
    p.validate();
    return p;
  }

  friend bool operator==(const TreeParams&, const TreeParams&) = default;
};

/// Multi-class decision tree whose leaves store training class counts.
struct TreeModel {
  TreeParams params;
  std::vector<std::string> classes;
  std::size_t dimension = 0;
  Tree tree;
};

namespace tree_detail {

class ClassCountCriterion {
 public:
  struct Stats {
    std::vector<double> counts;
    double n = 0;
  };

  ClassCountCriterion(const Dataset& ds, SplitCriterion kind) : ds_(ds), kind_(kind) {}

  Stats empty() const { return {std::vector<double>(ds_.class_count(), 0.0), 0.0}; }
  void add(Stats& s, std::uint32_t row) const {
    s.counts[static_cast<std::size_t>(ds_.label(row))] += 1;
    s.n += 1;
  }
  void remove(Stats& s, std::uint32_t row) const {
    s.counts[static_cast<std::size_t>(ds_.label(row))] -= 1;
    s.n -= 1;
  }
  double cost(const Stats& s) const {
    return s.n * (kind_ == SplitCriterion::gini ? gini(s.counts) : entropy(s.counts));
  }
  bool pure(const Stats& s) const {
    for (double c : s.counts)
      if (c == s.n) return true;
    return false;
  }
  std::vector<double> leaf(const RowList& rows) const {
    auto s = empty();
    for (auto r : rows) add(s, r);
    return s.counts;
  }

 private:
  const Dataset& ds_;
  SplitCriterion kind_;
};

}  // namespace tree_detail

/// CART-style greedy tree. Candidate thresholds are midpoints between
/// consecutive distinct values; the split minimizing weighted impurity wins,
/// ties going to the lowest feature index and then the lowest threshold.
inline TreeModel train_tree(const Dataset& ds, const TreeParams& p) {
  p.validate();
  if (ds.empty()) throw ConfigError("cannot train a decision tree on an empty dataset");
  tree_detail::ClassCountCriterion crit(ds, p.criterion);
  tree_detail::Grower grower(ds, crit, p.max_depth, p.min_samples_split);
  return {p, ds.classes(), ds.dimension(),
          grower.grow(tree_detail::presort(ds), tree_detail::all_rows(ds.size()))};
}

struct Prediction {
  int label = 0;
  std::vector<double> probabilities;
};

// Lowest index wins ties.
inline int argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return static_cast<int>(best);
}

inline Prediction predict(const TreeModel& m, std::span<const double> x) {
  if (x.size() != m.dimension)
    throw FormatError("feature vector length " + std::to_string(x.size()) + " does not match model dimension " +
                      std::to_string(m.dimension));
  const auto& counts = m.tree.leaf_for(x).value;
  double n = 0;
  for (double c : counts) n += c;
  Prediction out;
  out.probabilities.resize(counts.size(), 0.0);
  for (std::size_t i = 0; i < counts.size(); ++i) out.probabilities[i] = n > 0 ? counts[i] / n : 0.0;
  out.label = argmax(out.probabilities);
  return out;
}

}  // namespace indoamr
