#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "indoamr/error.hpp"

namespace indoamr {

/// Dense row-major feature matrix with one class index per row.
class Dataset {
 public:
  Dataset(std::size_t dimension, std::vector<std::string> classes)
      : dimension_(dimension), classes_(std::move(classes)) {}

  void add(std::span<const double> row, int label) {
    if (row.size() != dimension_)
      throw FormatError("row length " + std::to_string(row.size()) + " does not match dataset dimension " +
                        std::to_string(dimension_));
    if (label < 0 || static_cast<std::size_t>(label) >= classes_.size())
      throw FormatError("label " + std::to_string(label) + " outside class table");
    values_.insert(values_.end(), row.begin(), row.end());
    labels_.push_back(label);
  }

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  std::size_t dimension() const { return dimension_; }
  const std::vector<std::string>& classes() const { return classes_; }
  std::size_t class_count() const { return classes_.size(); }

  std::span<const double> row(std::size_t i) const { return {values_.data() + i * dimension_, dimension_}; }
  double value(std::size_t i, std::size_t feature) const { return values_[i * dimension_ + feature]; }
  int label(std::size_t i) const { return labels_[i]; }
  const std::vector<int>& labels() const { return labels_; }

  Dataset subset(const std::vector<std::size_t>& rows) const {
    Dataset out(dimension_, classes_);
    out.values_.reserve(rows.size() * dimension_);
    for (auto i : rows) out.add(row(i), labels_[i]);
    return out;
  }

  std::size_t distinct_labels() const {
    std::vector<bool> seen(classes_.size(), false);
    std::size_t n = 0;
    for (int l : labels_)
      if (!seen[static_cast<std::size_t>(l)]) {
        seen[static_cast<std::size_t>(l)] = true;
        ++n;
      }
    return n;
  }

 private:
  std::size_t dimension_;
  std::vector<std::string> classes_;
  std::vector<double> values_;
  std::vector<int> labels_;
};

}  // namespace indoamr
