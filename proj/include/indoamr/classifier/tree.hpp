#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"

#include "indoamr/classifier/dataset.hpp"
#include "indoamr/error.hpp"

namespace indoamr {

struct TreeNode {
  int feature = -1;       // -1 marks a leaf
  double threshold = 0;   // rows with value <= threshold go left
  int left = -1;
  int right = -1;
  std::vector<double> value;  // leaf payload: class counts or a regression value

  bool is_leaf() const { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// Binary tree stored as a node array; node 0 is the root.
struct Tree {
  std::vector<TreeNode> nodes;

  const TreeNode& leaf_for(std::span<const double> x) const {
    std::size_t i = 0;
    while (!nodes[i].is_leaf())
      i = static_cast<std::size_t>(x[static_cast<std::size_t>(nodes[i].feature)] <= nodes[i].threshold
                                       ? nodes[i].left
                                       : nodes[i].right);
    return nodes[i];
  }

  std::size_t depth() const {
    if (nodes.empty()) return 0;
    std::size_t best = 0;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
      auto [i, d] = stack.back();
      stack.pop_back();
      best = std::max(best, d);
      if (!nodes[i].is_leaf()) {
        stack.emplace_back(static_cast<std::size_t>(nodes[i].left), d + 1);
        stack.emplace_back(static_cast<std::size_t>(nodes[i].right), d + 1);
      }
    }
    return best;
  }

  nlohmann::json to_json() const {
    auto out = nlohmann::json::array();
    for (const auto& n : nodes) {
      if (n.is_leaf())
        out.push_back({{"value", n.value}});
      else
        out.push_back({{"feature", n.feature}, {"threshold", n.threshold}, {"left", n.left}, {"right", n.right}});
    }
    return out;
  }

  static Tree from_json(const nlohmann::json& doc, std::size_t dimension) {
    Tree t;
    for (const auto& j : doc) {
      TreeNode n;
      if (j.contains("value")) {
        n.value = j.at("value").get<std::vector<double>>();
      } else {
        n.feature = j.at("feature").get<int>();
        n.threshold = j.at("threshold").get<double>();
        n.left = j.at("left").get<int>();
        n.right = j.at("right").get<int>();
      }
      t.nodes.push_back(std::move(n));
    }
    const int count = static_cast<int>(t.nodes.size());
    if (count == 0) throw FormatError("empty tree in model file");
    for (const auto& n : t.nodes) {
      if (n.is_leaf()) continue;
      if (n.left <= 0 || n.left >= count || n.right <= 0 || n.right >= count ||
          static_cast<std::size_t>(n.feature) >= dimension)
        throw FormatError("corrupt tree node in model file");
    }
    return t;
  }

  friend bool operator==(const Tree&, const Tree&) = default;
};

namespace tree_detail {

using RowList = std::vector<std::uint32_t>;

// Row indices sorted by value, one list per feature, ties by row index.
inline std::vector<RowList> presort(const Dataset& ds) {
  std::vector<RowList> cols(ds.dimension());
  for (std::size_t f = 0; f < ds.dimension(); ++f) {
    auto& c = cols[f];
    c.resize(ds.size());
    std::iota(c.begin(), c.end(), 0u);
    std::stable_sort(c.begin(), c.end(), [&](auto a, auto b) { return ds.value(a, f) < ds.value(b, f); });
  }
  return cols;
}

/// Greedy exact-split tree growth shared by the classification and the
/// regression learners.
///
/// Criterion must provide:
///   Stats empty() const;
///   void add(Stats&, std::uint32_t row) const;
///   void remove(Stats&, std::uint32_t row) const;
///   double cost(const Stats&) const;   // node size times impurity
///   bool pure(const Stats&) const;
///   std::vector<double> leaf(const RowList& rows) const;
template <class Criterion>
class Grower {
 public:
  Grower(const Dataset& ds, const Criterion& criterion, std::size_t max_depth, std::size_t min_samples_split)
      : ds_(ds), crit_(criterion), max_depth_(max_depth), min_split_(min_samples_split), goes_left_(ds.size(), 0) {}

  Tree grow(std::vector<RowList> sorted, RowList rows) {
    Tree t;
    t.nodes.emplace_back();
    grow_node(t, 0, std::move(sorted), std::move(rows), 0);
    return t;
  }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0;
    double cost = std::numeric_limits<double>::infinity();
  };

  Split best_split(const std::vector<RowList>& sorted, const typename Criterion::Stats& total) const {
    Split best;
    for (std::size_t f = 0; f < sorted.size(); ++f) {
      const auto& col = sorted[f];
      auto left = crit_.empty();
      auto right = total;
      for (std::size_t k = 0; k + 1 < col.size(); ++k) {
        crit_.add(left, col[k]);
        crit_.remove(right, col[k]);
        const double a = ds_.value(col[k], f), b = ds_.value(col[k + 1], f);
        if (!(a < b)) continue;
        const double cost = crit_.cost(left) + crit_.cost(right);
        if (cost < best.cost) {
          double mid = a + (b - a) / 2;
          if (!(mid < b)) mid = a;
          best = {static_cast<int>(f), mid, cost};
        }
      }
    }
    return best;
  }

  void grow_node(Tree& t, std::size_t index, std::vector<RowList> sorted, RowList rows, std::size_t depth) {
    auto total = crit_.empty();
    for (auto r : rows) crit_.add(total, r);
    Split split;
    if (depth < max_depth_ && rows.size() >= min_split_ && !crit_.pure(total)) split = best_split(sorted, total);
    if (split.feature < 0) {
      t.nodes[index].value = crit_.leaf(rows);
      return;
    }

    const auto f = static_cast<std::size_t>(split.feature);
    for (auto r : rows) goes_left_[r] = ds_.value(r, f) <= split.threshold;
    auto partition = [&](const RowList& in, RowList& l, RowList& r) {
      for (auto row : in) (goes_left_[row] ? l : r).push_back(row);
    };
    std::vector<RowList> left_sorted(sorted.size()), right_sorted(sorted.size());
    for (std::size_t c = 0; c < sorted.size(); ++c) {
      partition(sorted[c], left_sorted[c], right_sorted[c]);
      RowList().swap(sorted[c]);
    }
    RowList left_rows, right_rows;
    partition(rows, left_rows, right_rows);

    const auto left = t.nodes.size();
    t.nodes.emplace_back();
    const auto right = t.nodes.size();
    t.nodes.emplace_back();
    t.nodes[index].feature = split.feature;
    t.nodes[index].threshold = split.threshold;
    t.nodes[index].left = static_cast<int>(left);
    t.nodes[index].right = static_cast<int>(right);
    grow_node(t, left, std::move(left_sorted), std::move(left_rows), depth + 1);
    grow_node(t, right, std::move(right_sorted), std::move(right_rows), depth + 1);
  }

  const Dataset& ds_;
  const Criterion& crit_;
  std::size_t max_depth_;
  std::size_t min_split_;
  std::vector<char> goes_left_;
};

inline RowList all_rows(std::size_t n) {
  RowList rows(n);
  std::iota(rows.begin(), rows.end(), 0u);
  return rows;
}

}  // namespace tree_detail

}  // namespace indoamr
