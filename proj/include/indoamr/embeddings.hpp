#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "indoamr/error.hpp"
#include "indoamr/text.hpp"

namespace indoamr {

/// Word vectors keyed by token string, all of one dimension.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(std::size_t dimension) : dimension_(dimension) {}

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return entries_.size(); }
  bool contains(const std::string& token) const { return entries_.count(token) != 0; }

  // Later inserts of the same token overwrite earlier ones.
  void insert(const std::string& token, std::vector<double> vector) {
    if (dimension_ == 0) dimension_ = vector.size();
    if (vector.size() != dimension_)
      throw FormatError("vector for '" + token + "' has length " + std::to_string(vector.size()) +
                        ", table dimension is " + std::to_string(dimension_));
    entries_[token] = std::move(vector);
  }

  const std::vector<double>* find(const std::string& token) const {
    auto it = entries_.find(token);
    return it == entries_.end() ? nullptr : &it->second;
  }

 private:
  std::size_t dimension_ = 0;
  std::unordered_map<std::string, std::vector<double>> entries_;
};

/// word2vec text format with an optional "<count> <dim>" header line.
inline EmbeddingTable load_embeddings(std::istream& in) {
  EmbeddingTable table;
  std::size_t advertised = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_ws(line);
    if (fields.empty()) continue;
    if (line_no == 1 && fields.size() == 2) {
      std::size_t count = 0, dim = 0;
      auto a = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), count);
      auto b = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), dim);
      if (a.ec == std::errc() && a.ptr == fields[0].data() + fields[0].size() && b.ec == std::errc() &&
          b.ptr == fields[1].data() + fields[1].size()) {
        advertised = dim;
        continue;
      }
    }
    std::vector<double> v;
    v.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      double x = 0;
      const auto& f = fields[i];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), x);
      if (ec != std::errc() || ptr != f.data() + f.size())
        throw FormatError("non-numeric component '" + f + "' for token '" + fields[0] + "' on line " +
                          std::to_string(line_no));
      v.push_back(x);
    }
    if (v.empty()) throw FormatError("token '" + fields[0] + "' has no vector on line " + std::to_string(line_no));
    if (advertised != 0 && table.size() == 0 && v.size() != advertised)
      throw FormatError("header advertises dimension " + std::to_string(advertised) + " but token '" + fields[0] +
                        "' has " + std::to_string(v.size()) + " components");
    table.insert(fields[0], std::move(v));
  }
  return table;
}

inline EmbeddingTable load_embeddings_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_embeddings(in);
}

/// Exact lookup, then lowercase lookup, then the zero vector.
inline std::vector<double> embed(const EmbeddingTable& table, const std::string& token) {
  if (const auto* v = table.find(token)) return *v;
  if (const auto* v = table.find(to_lower(token))) return *v;
  return std::vector<double>(table.dimension(), 0.0);
}

}  // namespace indoamr
