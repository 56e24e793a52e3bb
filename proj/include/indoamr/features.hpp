#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "indoamr/amr_graph.hpp"
#include "indoamr/conllu.hpp"
#include "indoamr/embeddings.hpp"
#include "indoamr/error.hpp"
#include "indoamr/pairgen.hpp"
#include "indoamr/text.hpp"

namespace indoamr {

/// Per-pair feature bundle. Categories: identifier (sentence_id), lexical
/// (lemmas), syntactic (POS and NER tags), positional (dependency role, root
/// flag, token positions).
struct PairFeatures {
  std::string sentence_id;
  std::string parent_lemma;
  std::string child_lemma;
  std::string parent_pos;
  std::string child_pos;
  std::string parent_ner;
  std::string child_ner;
  std::string deprel;
  bool is_root = false;
  int parent_position = 0;
  int child_position = 0;

  friend bool operator==(const PairFeatures&, const PairFeatures&) = default;
};

struct LabeledExample {
  PairFeatures features;
  EdgeLabel label;
};

inline std::vector<PairFeatures> combine_features(const AnnotatedSentence& s, const std::vector<DepPair>& pairs) {
  std::vector<PairFeatures> rows;
  rows.reserve(pairs.size());
  for (const auto& p : pairs) {
    rows.push_back({s.id, p.parent.lemma, p.child.lemma, p.parent.upos, p.child.upos, p.parent.ner, p.child.ner,
                    p.deprel, p.is_root_pair, p.parent.index, p.child.index});
  }
  return rows;
}

struct MatchResult {
  std::vector<LabeledExample> examples;
  std::vector<AmrEdge> unmatched_gold;  // gold edges no feature row claimed
};

/// Aligns feature rows with gold edges on (parent lemma, child lemma) ==
/// (source concept, target concept). Each gold edge is consumed at most
/// once, earliest row first. Rows without a gold edge yield no example, and
/// gold edges outside the six-label set are never used.
inline MatchResult match_pairs_detailed(const std::vector<PairFeatures>& feats, const AmrGraph& gold) {
  MatchResult result;
  const auto& edges = gold.edges();
  std::vector<bool> consumed(edges.size(), false);
  for (const auto& row : feats) {
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (consumed[e] || !edges[e].label.core_index()) continue;
      if (gold.concept_of(edges[e].source) == row.parent_lemma &&
          gold.concept_of(edges[e].target) == row.child_lemma) {
        consumed[e] = true;
        result.examples.push_back({row, edges[e].label});
        break;
      }
    }
  }
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (!consumed[e]) result.unmatched_gold.push_back(edges[e]);
  return result;
}

inline std::vector<LabeledExample> match_pairs(const std::vector<PairFeatures>& feats, const AmrGraph& gold) {
  return match_pairs_detailed(feats, gold).examples;
}

enum class FeatureCategory : unsigned { lexical = 1, syntactic = 2, positional = 4 };

/// Non-empty subset of {lexical, syntactic, positional}.
class FeatureConfig {
 public:
  FeatureConfig(bool lexical, bool syntactic, bool positional)
      : bits_((lexical ? 1u : 0u) | (syntactic ? 2u : 0u) | (positional ? 4u : 0u)) {
    if (bits_ == 0) throw ConfigError("feature configuration must enable at least one category");
  }

  static FeatureConfig all() { return {true, true, true}; }

  /// "lex,syn,pos" (any non-empty subset, any order).
  static FeatureConfig from_names(std::string_view names) {
    bool lex = false, syn = false, pos = false;
    for (const auto& raw : split(names, ',')) {
      const std::string n = trim(raw);
      if (n == "lex" || n == "lexical") lex = true;
      else if (n == "syn" || n == "syntactic") syn = true;
      else if (n == "pos" || n == "positional") pos = true;
      else if (!n.empty()) throw ConfigError("unknown feature category '" + n + "' (expected lex, syn, pos)");
    }
    return {lex, syn, pos};
  }

  bool has(FeatureCategory c) const { return (bits_ & static_cast<unsigned>(c)) != 0; }
  bool lexical() const { return has(FeatureCategory::lexical); }
  bool syntactic() const { return has(FeatureCategory::syntactic); }
  bool positional() const { return has(FeatureCategory::positional); }

  std::string name() const {
    std::string out;
    auto add = [&](bool on, const char* n) {
      if (!on) return;
      if (!out.empty()) out += ',';
      out += n;
    };
    add(lexical(), "lex");
    add(syntactic(), "syn");
    add(positional(), "pos");
    return out;
  }

  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;

 private:
  unsigned bits_;
};

/// Category combinations of the feature ablation, in table order:
/// L+S+P, S+P, L+S, L+P, S.
inline std::vector<FeatureConfig> feature_combinations() {
  return {{true, true, true}, {false, true, true}, {true, true, false}, {true, false, true}, {false, true, false}};
}

/// Fitted state mapping PairFeatures to numeric vectors.
///
/// Layout: [parent embedding, child embedding] if lexical;
/// [parent POS, child POS, parent NER, child NER one-hots] if syntactic;
/// [deprel one-hot, is_root, parent position, child position] if positional.
/// Unseen categorical values encode as an all-zero block.
class FeatureEncoder {
 public:
  enum Field : std::size_t { parent_pos, child_pos, parent_ner, child_ner, deprel, field_count };

  FeatureEncoder(FeatureConfig config, std::shared_ptr<const EmbeddingTable> embeddings, std::size_t embedding_dim,
                 std::array<std::vector<std::string>, field_count> vocabularies)
      : config_(config),
        embeddings_(std::move(embeddings)),
        embedding_dim_(config.lexical() ? embedding_dim : 0),
        vocab_(std::move(vocabularies)) {
    for (auto& v : vocab_) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    if (config_.lexical()) {
      if (!embeddings_) throw ConfigError("lexical features require an embedding table");
      if (embeddings_->dimension() != embedding_dim_ || embedding_dim_ == 0)
        throw ConfigError("embedding table dimension " + std::to_string(embeddings_->dimension()) +
                          " does not match encoder dimension " + std::to_string(embedding_dim_));
    }
  }

  const FeatureConfig& config() const { return config_; }
  std::size_t embedding_dim() const { return embedding_dim_; }
  const std::vector<std::string>& vocabulary(Field f) const { return vocab_[f]; }

  std::size_t dimension() const {
    std::size_t d = 0;
    if (config_.lexical()) d += 2 * embedding_dim_;
    if (config_.syntactic())
      d += vocab_[parent_pos].size() + vocab_[child_pos].size() + vocab_[parent_ner].size() +
           vocab_[child_ner].size();
    if (config_.positional()) d += vocab_[deprel].size() + 3;
    return d;
  }

  std::vector<double> encode(const PairFeatures& f) const {
    std::vector<double> out;
    out.reserve(dimension());
    if (config_.lexical()) {
      auto p = indoamr::embed(*embeddings_, f.parent_lemma);
      auto c = indoamr::embed(*embeddings_, f.child_lemma);
      out.insert(out.end(), p.begin(), p.end());
      out.insert(out.end(), c.begin(), c.end());
    }
    if (config_.syntactic()) {
      one_hot(out, parent_pos, f.parent_pos);
      one_hot(out, child_pos, f.child_pos);
      one_hot(out, parent_ner, f.parent_ner);
      one_hot(out, child_ner, f.child_ner);
    }
    if (config_.positional()) {
      one_hot(out, deprel, f.deprel);
      out.push_back(f.is_root ? 1.0 : 0.0);
      out.push_back(static_cast<double>(f.parent_position));
      out.push_back(static_cast<double>(f.child_position));
    }
    return out;
  }

  nlohmann::json to_json() const {
    return {{"categories", config_.name()},
            {"embedding_dim", embedding_dim_},
            {"dimension", dimension()},
            {"vocabularies",
             {{"parent_pos", vocab_[parent_pos]},
              {"child_pos", vocab_[child_pos]},
              {"parent_ner", vocab_[parent_ner]},
              {"child_ner", vocab_[child_ner]},
              {"deprel", vocab_[deprel]}}}};
  }

  static FeatureEncoder from_json(const nlohmann::json& doc, std::shared_ptr<const EmbeddingTable> embeddings) {
    try {
      const auto config = FeatureConfig::from_names(doc.at("categories").get<std::string>());
      const auto& v = doc.at("vocabularies");
      std::array<std::vector<std::string>, field_count> vocab = {
          v.at("parent_pos").get<std::vector<std::string>>(), v.at("child_pos").get<std::vector<std::string>>(),
          v.at("parent_ner").get<std::vector<std::string>>(), v.at("child_ner").get<std::vector<std::string>>(),
          v.at("deprel").get<std::vector<std::string>>()};
      FeatureEncoder enc(config, std::move(embeddings), doc.at("embedding_dim").get<std::size_t>(),
                         std::move(vocab));
      if (enc.dimension() != doc.at("dimension").get<std::size_t>())
        throw FormatError("encoder dimension does not match its vocabularies");
      return enc;
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("malformed encoder state: ") + e.what());
    }
  }

 private:
  void one_hot(std::vector<double>& out, Field field, const std::string& value) const {
    const auto& v = vocab_[field];
    const std::size_t start = out.size();
    out.resize(start + v.size(), 0.0);
    auto it = std::lower_bound(v.begin(), v.end(), value);
    if (it != v.end() && *it == value) out[start + static_cast<std::size_t>(it - v.begin())] = 1.0;
  }

  FeatureConfig config_;
  std::shared_ptr<const EmbeddingTable> embeddings_;
  std::size_t embedding_dim_;
  std::array<std::vector<std::string>, field_count> vocab_;
};

/// Vocabularies are the sorted distinct values seen in `train`. The sentence
/// id is never encoded.
inline FeatureEncoder fit_encoder(const std::vector<LabeledExample>& train, const FeatureConfig& cfg,
                                  std::shared_ptr<const EmbeddingTable> embeddings) {
  if (train.empty()) throw ConfigError("cannot fit a feature encoder on an empty training set");
  std::array<std::vector<std::string>, FeatureEncoder::field_count> vocab;
  for (const auto& ex : train) {
    const auto& f = ex.features;
    vocab[FeatureEncoder::parent_pos].push_back(f.parent_pos);
    vocab[FeatureEncoder::child_pos].push_back(f.child_pos);
    vocab[FeatureEncoder::parent_ner].push_back(f.parent_ner);
    vocab[FeatureEncoder::child_ner].push_back(f.child_ner);
    vocab[FeatureEncoder::deprel].push_back(f.deprel);
  }
  const std::size_t dim = cfg.lexical() && embeddings ? embeddings->dimension() : 0;
  return FeatureEncoder(cfg, std::move(embeddings), dim, std::move(vocab));
}

inline std::vector<double> encode(const FeatureEncoder& enc, const PairFeatures& f) { return enc.encode(f); }

/// Tab-separated feature table with a header row; a Label column is added
/// when labels are given (same length as rows).
inline void write_feature_table(std::ostream& out, const std::vector<PairFeatures>& rows,
                                const std::vector<EdgeLabel>* labels = nullptr) {
  out << "Sentence ID\tParent\tChild\tParent POS\tChild POS\tParent NER\tChild NER\tDependency role\tIs Root\t"
         "Parent position\tChild position";
  if (labels) out << "\tLabel";
  out << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& f = rows[i];
    out << f.sentence_id << '\t' << f.parent_lemma << '\t' << f.child_lemma << '\t' << f.parent_pos << '\t'
        << f.child_pos << '\t' << f.parent_ner << '\t' << f.child_ner << '\t' << f.deprel << '\t'
        << (f.is_root ? 1 : 0) << '\t' << f.parent_position << '\t' << f.child_position;
    if (labels) out << '\t' << labels->at(i).name();
    out << '\n';
  }
}

}  // namespace indoamr
