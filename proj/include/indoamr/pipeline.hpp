#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "indoamr/amr_corpus.hpp"
#include "indoamr/classifier/dataset.hpp"
#include "indoamr/classifier/model.hpp"
#include "indoamr/conllu.hpp"
#include "indoamr/constructor.hpp"
#include "indoamr/error.hpp"
#include "indoamr/features.hpp"
#include "indoamr/metrics/smatch.hpp"
#include "indoamr/pairgen.hpp"

namespace indoamr {

inline std::vector<std::string> core_label_names() { return {kCoreLabels.begin(), kCoreLabels.end()}; }

/// Sentences paired with their gold graphs by id.
struct AlignedCorpus {
  std::vector<AnnotatedSentence> sentences;
  std::vector<AmrGraph> golds;  // golds[i] belongs to sentences[i]
};

/// Every sentence needs a gold entry and every gold entry a sentence.
inline AlignedCorpus align_by_id(std::vector<AnnotatedSentence> sentences, const std::vector<AmrEntry>& gold) {
  std::map<std::string, const AmrEntry*> by_id;
  for (const auto& e : gold) by_id[e.id] = &e;
  AlignedCorpus out;
  for (auto& s : sentences) {
    auto it = by_id.find(s.id);
    if (it == by_id.end()) throw FormatError("sentence '" + s.id + "' has no gold AMR entry");
    out.golds.push_back(it->second->graph);
    by_id.erase(it);
    out.sentences.push_back(std::move(s));
  }
  if (!by_id.empty()) throw FormatError("gold AMR entry '" + by_id.begin()->first + "' has no annotated sentence");
  return out;
}

inline std::vector<DepPair> surviving_pairs(const AnnotatedSentence& s, const FilterRuleSet& rules) {
  return apply_filter(extract_pairs(s), rules);
}

struct TrainingData {
  std::vector<LabeledExample> examples;
  std::size_t sentences = 0;
  std::size_t pairs = 0;  // after filtering
  std::size_t gold_edges = 0;
  std::size_t unmatched_gold_edges = 0;
};

/// pairgen -> combine_features -> match_pairs over an aligned corpus. With a
/// `log` stream, unmatched gold edges are reported per sentence.
inline TrainingData build_training_data(const AlignedCorpus& corpus, const FilterRuleSet& rules,
                                        std::ostream* log = nullptr) {
  TrainingData data;
  data.sentences = corpus.sentences.size();
  for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
    const auto& s = corpus.sentences[i];
    const auto& gold = corpus.golds[i];
    const auto pairs = surviving_pairs(s, rules);
    data.pairs += pairs.size();
    data.gold_edges += gold.edges().size();
    auto match = match_pairs_detailed(combine_features(s, pairs), gold);
    data.unmatched_gold_edges += match.unmatched_gold.size();
    if (log) {
      for (const auto& e : match.unmatched_gold)
        *log << "unmatched gold edge in '" << s.id << "': " << e.label.penman() << "(" << gold.concept_of(e.source)
             << ", " << gold.concept_of(e.target) << ")\n";
    }
    for (auto& ex : match.examples) data.examples.push_back(std::move(ex));
  }
  return data;
}

inline Dataset make_dataset(const std::vector<LabeledExample>& examples, const FeatureEncoder& encoder) {
  Dataset ds(encoder.dimension(), core_label_names());
  for (const auto& ex : examples) {
    const auto v = encoder.encode(ex.features);
    ds.add(v, static_cast<int>(*ex.label.core_index()));
  }
  return ds;
}

inline LabelModel train_label_model(const std::vector<LabeledExample>& examples, const FeatureConfig& features,
                                    std::shared_ptr<const EmbeddingTable> embeddings, const ModelParams& params,
                                    const FilterRuleSet& rules) {
  auto encoder = fit_encoder(examples, features, std::move(embeddings));
  const Dataset ds = make_dataset(examples, encoder);
  return {train(ds, params), std::move(encoder), rules};
}

/// Labels each surviving pair with the model's most probable class.
inline std::vector<LabeledPair> label_pairs(const LabelModel& lm, const AnnotatedSentence& s,
                                            const std::vector<DepPair>& pairs) {
  const auto rows = combine_features(s, pairs);
  std::vector<LabeledPair> out;
  out.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto p = predict(lm.model, lm.encoder.encode(rows[i]));
    out.push_back({pairs[i], EdgeLabel::core(static_cast<std::size_t>(p.label)),
                   p.probabilities[static_cast<std::size_t>(p.label)]});
  }
  return out;
}

inline AmrGraph parse_sentence(const LabelModel& lm, const AnnotatedSentence& s, const FilterRuleSet& rules) {
  const auto pairs = surviving_pairs(s, rules);
  return build_graph(label_pairs(lm, s, pairs), s);
}

inline std::vector<AmrEntry> predict_corpus(const LabelModel& lm, const std::vector<AnnotatedSentence>& sentences,
                                            const FilterRuleSet& rules) {
  std::vector<AmrEntry> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back({s.id, s.text, parse_sentence(lm, s, rules)});
  return out;
}

/// Micro-averaged pair F1 of filtered dependency pairs against gold edges.
inline PairScore corpus_pair_f1(const AlignedCorpus& corpus, const FilterRuleSet& rules,
                                std::vector<std::pair<std::string, PairScore>>* per_sentence = nullptr) {
  std::size_t matched = 0, predicted = 0, gold = 0;
  for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
    std::vector<LemmaPair> pred;
    for (const auto& p : surviving_pairs(corpus.sentences[i], rules)) pred.emplace_back(p.parent.lemma, p.child.lemma);
    const auto s = pair_f1(pred, gold_pairs(corpus.golds[i]));
    if (per_sentence) per_sentence->emplace_back(corpus.sentences[i].id, s);
    matched += s.matched;
    predicted += s.predicted_total;
    gold += s.gold_total;
  }
  return PairScore::from_counts(matched, predicted, gold);
}

}  // namespace indoamr
