#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "indoamr/classifier/dataset.hpp"
#include "indoamr/classifier/model.hpp"
#include "indoamr/error.hpp"
#include "indoamr/metrics/scores.hpp"

namespace indoamr {

struct CvReport {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  bool stratified = true;
  std::string warning;
  std::vector<std::size_t> fold_of;  // validation fold of each row
  std::vector<double> fold_accuracy;
  std::vector<double> fold_f1_macro;
  double mean_accuracy = 0.0;
  double mean_f1_macro = 0.0;
};

/// Stratified fold assignment: rows of each class are shuffled and dealt
/// round-robin, the dealing position carrying over between classes so fold
/// sizes differ by at most one. Falls back to an unstratified shuffle when
/// some present class has fewer than k rows.
inline std::vector<std::size_t> assign_folds(const Dataset& ds, std::size_t k, std::uint64_t seed, bool* stratified) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> by_class(ds.class_count());
  for (std::size_t i = 0; i < ds.size(); ++i) by_class[static_cast<std::size_t>(ds.label(i))].push_back(i);
  bool can_stratify = true;
  for (const auto& members : by_class)
    if (!members.empty() && members.size() < k) can_stratify = false;
  if (stratified) *stratified = can_stratify;

  std::vector<std::size_t> fold_of(ds.size(), 0);
  std::size_t position = 0;
  if (can_stratify) {
    for (auto& members : by_class) {
      std::shuffle(members.begin(), members.end(), rng);
      for (auto row : members) fold_of[row] = position++ % k;
    }
  } else {
    std::vector<std::size_t> rows(ds.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    std::shuffle(rows.begin(), rows.end(), rng);
    for (auto row : rows) fold_of[row] = position++ % k;
  }
  return fold_of;
}

/// k-fold cross-validation reporting accuracy and F1-macro per fold.
inline CvReport cross_validate(const Dataset& ds, const ModelParams& params, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw ConfigError("cross-validation needs k >= 2");
  if (ds.size() < k) throw ConfigError("cross-validation needs at least k rows");
  CvReport report;
  report.k = k;
  report.seed = seed;
  report.fold_of = assign_folds(ds, k, seed, &report.stratified);
  if (!report.stratified)
    report.warning = "a class has fewer than " + std::to_string(k) + " rows; folds are not stratified";

  for (std::size_t fold = 0; fold < k; ++fold) {
    std::vector<std::size_t> train_rows, test_rows;
    for (std::size_t i = 0; i < ds.size(); ++i) (report.fold_of[i] == fold ? test_rows : train_rows).push_back(i);
    const Dataset train_set = ds.subset(train_rows);
    const Model model = train(train_set, params);
    std::vector<int> truth, predicted;
    for (auto i : test_rows) {
      truth.push_back(ds.label(i));
      predicted.push_back(predict(model, ds.row(i)).label);
    }
    const auto cm = confusion_matrix(truth, predicted, ds.class_count());
    report.fold_accuracy.push_back(accuracy(cm));
    report.fold_f1_macro.push_back(f1_macro(cm));
  }
  for (std::size_t f = 0; f < k; ++f) {
    report.mean_accuracy += report.fold_accuracy[f] / static_cast<double>(k);
    report.mean_f1_macro += report.fold_f1_macro[f] / static_cast<double>(k);
  }
  return report;
}

}  // namespace indoamr
