#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "indoamr/classifier/dataset.hpp"
#include "indoamr/classifier/decision_tree.hpp"
#include "indoamr/classifier/tree.hpp"
#include "indoamr/error.hpp"

namespace indoamr {

struct GbtParams {
  double learning_rate = 0.1;
  std::size_t max_depth = 8;
  std::size_t n_rounds = 100;
  double l2_leaf_penalty = 1.0;

  void validate() const {
    if (!(learning_rate > 0.0 && learning_rate <= 1.0)) throw ConfigError("learning_rate must lie in (0, 1]");
    if (max_depth < 1) throw ConfigError("max_depth must be a positive integer");
    if (n_rounds < 1) throw ConfigError("n_rounds must be a positive integer");
    if (!(l2_leaf_penalty >= 0.0)) throw ConfigError("l2_leaf_penalty must be non-negative");
  }

  nlohmann::json to_json() const {
    return {{"learning_rate", learning_rate},
            {"max_depth", max_depth},
            {"n_rounds", n_rounds},
            {"l2_leaf_penalty", l2_leaf_penalty}};
  }

  static GbtParams from_json(const nlohmann::json& j) {
    GbtParams p{j.at("learning_rate").get<double>(), j.at("max_depth").get<std::size_t>(),
                j.at("n_rounds").get<std::size_t>(), j.at("l2_leaf_penalty").get<double>()};
    p.validate();
    return p;
  }

  friend bool operator==(const GbtParams&, const GbtParams&) = default;
};

/// Softmax gradient-boosted regression trees: rounds[r][k] scores class k.
/// Leaf values already include the learning rate.
struct GbtModel {
  GbtParams params;
  std::vector<std::string> classes;
  std::size_t dimension = 0;
  std::vector<double> base_scores;
  std::vector<std::vector<Tree>> rounds;
  std::vector<double> train_loss;  // mean cross-entropy before round 1, then after each round
};

namespace gbt_detail {

inline void softmax_inplace(std::span<double> z) {
  const double mx = *std::max_element(z.begin(), z.end());
  double sum = 0;
  for (auto& v : z) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (auto& v : z) v /= sum;
}

inline double mean_cross_entropy(const Dataset& ds, const std::vector<double>& scores) {
  const std::size_t k = ds.class_count();
  std::vector<double> p(k);
  double loss = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    std::copy_n(scores.begin() + static_cast<std::ptrdiff_t>(i * k), k, p.begin());
    softmax_inplace(p);
    loss -= std::log(std::max(p[static_cast<std::size_t>(ds.label(i))], 1e-300));
  }
  return loss / static_cast<double>(ds.size());
}

// Variance split on the negative gradient; leaves hold the scaled Newton
// step sum(g) / (sum(h) + lambda).
class NewtonCriterion {
 public:
  struct Stats {
    double n = 0, sum = 0, sum_sq = 0;
  };

  NewtonCriterion(const std::vector<double>& gradient, const std::vector<double>& hessian, double lambda,
                  double learning_rate)
      : g_(gradient), h_(hessian), lambda_(lambda), lr_(learning_rate) {}

  Stats empty() const { return {}; }
  void add(Stats& s, std::uint32_t row) const {
    s.n += 1;
    s.sum += g_[row];
    s.sum_sq += g_[row] * g_[row];
  }
  void remove(Stats& s, std::uint32_t row) const {
    s.n -= 1;
    s.sum -= g_[row];
    s.sum_sq -= g_[row] * g_[row];
  }
  double cost(const Stats& s) const { return s.n > 0 ? std::max(0.0, s.sum_sq - s.sum * s.sum / s.n) : 0.0; }
  bool pure(const Stats& s) const { return cost(s) <= 0.0; }
  std::vector<double> leaf(const tree_detail::RowList& rows) const {
    double g = 0, h = 0;
    for (auto r : rows) {
      g += g_[r];
      h += h_[r];
    }
    const double denom = h + lambda_;
    return {denom > 0 ? lr_ * g / denom : 0.0};
  }

 private:
  const std::vector<double>& g_;
  const std::vector<double>& h_;
  double lambda_;
  double lr_;
};

}  // namespace gbt_detail

/// Multi-class gradient boosting with the softmax cross-entropy objective.
/// Each round computes p = softmax(scores), then fits one regression tree per
/// class to the negative gradient y - p with hessian p(1 - p).
inline GbtModel train_gbt(const Dataset& ds, const GbtParams& p) {
  p.validate();
  if (ds.empty()) throw ConfigError("cannot train gradient-boosted trees on an empty dataset");
  if (ds.distinct_labels() < 2) throw ConfigError("gradient-boosted trees need at least two classes present");

  const std::size_t n = ds.size(), k = ds.class_count();
  GbtModel model{p, ds.classes(), ds.dimension(), std::vector<double>(k, 0.0), {}, {}};
  std::vector<double> scores(n * k, 0.0);
  model.train_loss.push_back(gbt_detail::mean_cross_entropy(ds, scores));

  const auto sorted = tree_detail::presort(ds);
  const auto rows = tree_detail::all_rows(n);
  std::vector<double> prob(n * k), gradient(n), hessian(n);
  for (std::size_t round = 0; round < p.n_rounds; ++round) {
    prob = scores;
    for (std::size_t i = 0; i < n; ++i) gbt_detail::softmax_inplace({prob.data() + i * k, k});

    std::vector<Tree> trees;
    trees.reserve(k);
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        const double pi = prob[i * k + c];
        gradient[i] = (ds.label(i) == static_cast<int>(c) ? 1.0 : 0.0) - pi;
        hessian[i] = pi * (1.0 - pi);
      }
      gbt_detail::NewtonCriterion crit(gradient, hessian, p.l2_leaf_penalty, p.learning_rate);
      tree_detail::Grower grower(ds, crit, p.max_depth, 2);
      trees.push_back(grower.grow(sorted, rows));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < k; ++c) scores[i * k + c] += trees[c].leaf_for(ds.row(i)).value[0];
    model.rounds.push_back(std::move(trees));
    model.train_loss.push_back(gbt_detail::mean_cross_entropy(ds, scores));
  }
  return model;
}

inline std::vector<double> raw_scores(const GbtModel& m, std::span<const double> x) {
  std::vector<double> z = m.base_scores;
  for (const auto& round : m.rounds)
    for (std::size_t c = 0; c < round.size(); ++c) z[c] += round[c].leaf_for(x).value[0];
  return z;
}

inline Prediction predict(const GbtModel& m, std::span<const double> x) {
  if (x.size() != m.dimension)
    throw FormatError("feature vector length " + std::to_string(x.size()) + " does not match model dimension " +
                      std::to_string(m.dimension));
  Prediction out;
  out.probabilities = raw_scores(m, x);
  gbt_detail::softmax_inplace(out.probabilities);
  out.label = argmax(out.probabilities);
  return out;
}

}  // namespace indoamr
