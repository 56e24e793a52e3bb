#pragma once

#include <cstddef>
#include <vector>

namespace indoamr {

/// Precision/recall/F1 over matched, predicted and gold counts. Zero
/// denominators give zero.
struct PrfScore {
  std::size_t matched = 0;
  std::size_t predicted_total = 0;
  std::size_t gold_total = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static PrfScore from_counts(std::size_t matched, std::size_t predicted_total, std::size_t gold_total) {
    PrfScore s{matched, predicted_total, gold_total};
    s.precision = predicted_total ? static_cast<double>(matched) / static_cast<double>(predicted_total) : 0.0;
    s.recall = gold_total ? static_cast<double>(matched) / static_cast<double>(gold_total) : 0.0;
    s.f1 = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
    return s;
  }
};

using SmatchScore = PrfScore;
using PairScore = PrfScore;

/// Square count matrix; rows are true classes, columns predicted classes.
using ConfusionMatrix = std::vector<std::vector<std::size_t>>;

inline ConfusionMatrix confusion_matrix(const std::vector<int>& truth, const std::vector<int>& predicted,
                                        std::size_t classes) {
  ConfusionMatrix m(classes, std::vector<std::size_t>(classes, 0));
  for (std::size_t i = 0; i < truth.size(); ++i)
    ++m.at(static_cast<std::size_t>(truth[i])).at(static_cast<std::size_t>(predicted.at(i)));
  return m;
}

/// Unweighted mean of per-class F1. A class with no support and no
/// predictions contributes 0.
inline double f1_macro(const ConfusionMatrix& m) {
  const std::size_t k = m.size();
  if (k == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t support = 0, predicted = 0;
    for (std::size_t j = 0; j < k; ++j) {
      support += m[c][j];
      predicted += m[j][c];
    }
    sum += PrfScore::from_counts(m[c][c], predicted, support).f1;
  }
  return sum / static_cast<double>(k);
}

inline double accuracy(const ConfusionMatrix& m) {
  std::size_t total = 0, correct = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      total += m[i][j];
      if (i == j) correct += m[i][j];
    }
  return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
}

}  // namespace indoamr
