#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace indoamr;
using namespace testing_support;

namespace {

AnnotatedSentence one(const char* text) { return read_conllu_string(text).at(0); }

std::vector<LabeledPair> with_labels(const std::vector<DepPair>& pairs, const std::vector<std::string>& labels) {
  std::vector<LabeledPair> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) out.push_back({pairs[i], EdgeLabel(labels.at(i))});
  return out;
}

AlignedCorpus mini_corpus() {
  return align_by_id(read_conllu_string(slurp(data_path("corpus.conllu"))),
                     read_amr_corpus_string(slurp(data_path("gold.amr"))));
}

}  // namespace

TEST(Constructor, IbuSystemGraph) {
  const auto s = one(kIbuSystemConllu);
  const auto pairs = extract_pairs(s);
  // children in index order: jahit, baju, dengan, rapi
  const auto g = build_graph(with_labels(pairs, {"mod", "ARG1", "mod", "mod"}), s);
  EXPECT_EQ(serialize_penman(g), kIbuSystem);
}

TEST(Constructor, SingleTokenSentence) {
  const auto s = one("1\ttidur\ttidur\tVERB\t_\t_\t0\troot\t_\t_\n");
  EXPECT_EQ(serialize_penman(build_graph({}, s)), "(vv1 / tidur)");
}

TEST(Constructor, RootFallsBackToBusiestParent) {
  // all pairs touching the dependency root were filtered away
  const auto s = one(
      "1\tkue\tkue\tNOUN\t_\t_\t0\troot\t_\t_\n"
      "2\titu\titu\tDET\t_\t_\t1\tdet\t_\t_\n"
      "3\tenak\tenak\tADJ\t_\t_\t2\tamod\t_\t_\n"
      "4\tsekali\tsekali\tADV\t_\t_\t3\tadvmod\t_\t_\n");
  const auto kept = apply_filter(extract_pairs(s), FilterRuleSet::from_names("det"));
  ASSERT_EQ(kept.size(), 1u);
  const auto labeled = with_labels(kept, {"mod"});
  EXPECT_EQ(select_root(labeled, s).lemma, "enak");
  EXPECT_EQ(serialize_penman(build_graph(labeled, s)), "(vv1 / enak :mod (vv2 / sekali))");
}

TEST(Constructor, FilteredSubtreesAreDropped) {
  const auto s = one(kMakanConllu);
  const auto kept = apply_filter(extract_pairs(s), FilterRuleSet::from_names("prep"));
  const auto g = build_graph(with_labels(kept, {"ARG0", "ARG1", "location"}), s);
  EXPECT_EQ(serialize_penman(g), "(vv1 / makan :ARG0 (vv2 / aku) :ARG1 (vv3 / kue) :location (vv4 / teras))");
}

TEST(Constructor, ConceptSanitizing) {
  EXPECT_EQ(concept_from_lemma("rumah sakit"), "rumah_sakit");
  EXPECT_EQ(concept_from_lemma(":x"), "_:x");
  EXPECT_EQ(concept_from_lemma("/"), "_/");
  EXPECT_EQ(concept_from_lemma("a(b)"), "a_b_");
}

TEST(Constructor, OutputsAreValidTreesWithSequentialVariables) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    AnnotatedSentence s;
    s.id = "t";
    const int n = 1 + trial % 10;
    for (int i = 1; i <= n; ++i) {
      const int head = i == 1 ? 0 : std::uniform_int_distribution<int>(1, i - 1)(rng);
      s.tokens.push_back({i, "w" + std::to_string(i), "w" + std::to_string(i % 3), "NOUN", "O", head, "dep"});
    }
    std::vector<LabeledPair> labeled;
    for (const auto& p : extract_pairs(s))
      if (rng() % 4) labeled.push_back({p, EdgeLabel::core(rng() % 6)});
    const auto g = build_graph(labeled, s);
    for (std::size_t i = 0; i < g.nodes().size(); ++i) EXPECT_EQ(g.nodes()[i].variable, "vv" + std::to_string(i + 1));
    EXPECT_EQ(g.edges().size() + 1, g.nodes().size());
    EXPECT_EQ(parse_penman(serialize_penman(g)), g);
  }
}

TEST(Pipeline, AlignByIdBothDirections) {
  auto sentences = read_conllu_string(kMakanConllu);
  EXPECT_THROW(align_by_id(sentences, {}), FormatError);
  const std::vector<AmrEntry> extra = {{"makan", "", parse_penman("(m / makan)")}, {"x", "", parse_penman("(a / b)")}};
  EXPECT_THROW(align_by_id(sentences, extra), FormatError);
  EXPECT_EQ(align_by_id(sentences, {extra[0]}).golds.size(), 1u);
}

TEST(Pipeline, MiniCorpusPairsMatchGoldExactlyWithAllRules) {
  const auto corpus = mini_corpus();
  const auto data = build_training_data(corpus, FilterRuleSet::all());
  EXPECT_EQ(data.sentences, 32u);
  EXPECT_EQ(data.unmatched_gold_edges, 0u);
  EXPECT_EQ(data.examples.size(), data.gold_edges);
  const auto s = corpus_pair_f1(corpus, FilterRuleSet::all());
  EXPECT_EQ(s.f1, 1.0);
  const auto none = corpus_pair_f1(corpus, FilterRuleSet::none());
  EXPECT_EQ(none.recall, 1.0);
  EXPECT_LT(none.precision, 1.0);
}

TEST(Pipeline, VerboseLogNamesUnmatchedEdges) {
  AlignedCorpus c;
  c.sentences = read_conllu_string(kMakanConllu);
  c.golds = {parse_penman("(m / makan :ARG0 (a / aku) :ARG1 (r / roti))")};
  std::ostringstream log;
  const auto data = build_training_data(c, FilterRuleSet::all(), &log);
  EXPECT_EQ(data.examples.size(), 1u);
  EXPECT_EQ(data.unmatched_gold_edges, 1u);
  EXPECT_NE(log.str().find(":ARG1(makan, roti)"), std::string::npos) << log.str();
}

TEST(Pipeline, TrainPredictOverfitsMiniCorpus) {
  const auto corpus = mini_corpus();
  const auto rules = FilterRuleSet::all();
  const auto data = build_training_data(corpus, rules);
  auto emb = std::make_shared<const EmbeddingTable>(load_embeddings_string(slurp(data_path("emb.txt"))));
  const auto lm = train_label_model(data.examples, FeatureConfig::from_names("lex,syn"), emb, GbtParams{}, rules);
  const auto predicted = predict_corpus(lm, corpus.sentences, rules);
  std::vector<AmrEntry> gold;
  for (std::size_t i = 0; i < corpus.golds.size(); ++i) gold.push_back({corpus.sentences[i].id, "", corpus.golds[i]});
  EXPECT_GE(corpus_smatch(predicted, gold).total.f1, 0.9);
}

TEST(ModelFile, RoundTripReproducesPredictions) {
  const auto corpus = mini_corpus();
  const auto rules = FilterRuleSet::all();
  const auto data = build_training_data(corpus, rules);
  auto emb = std::make_shared<const EmbeddingTable>(load_embeddings_string(slurp(data_path("emb.txt"))));
  for (const ModelParams& params : {ModelParams{TreeParams{}}, ModelParams{GbtParams{0.1, 4, 10, 1.0}}}) {
    const auto lm = train_label_model(data.examples, FeatureConfig::all(), emb, params, rules);
    std::stringstream file;
    save_model(file, lm);
    const auto text = file.str();
    const auto back = load_model(file, emb);
    for (const auto& ex : data.examples) {
      const auto x = lm.encoder.encode(ex.features);
      const auto a = predict(lm.model, x), b = predict(back.model, x);
      EXPECT_EQ(a.label, b.label);
      EXPECT_EQ(a.probabilities, b.probabilities);
    }
    std::ostringstream again;
    save_model(again, back);
    EXPECT_EQ(again.str(), text);
  }
}

TEST(ModelFile, RejectsOtherVersionsAndGarbage) {
  const auto corpus = mini_corpus();
  const auto data = build_training_data(corpus, FilterRuleSet::all());
  const auto lm = train_label_model(data.examples, FeatureConfig::from_names("syn,pos"), nullptr, TreeParams{},
                                    FilterRuleSet::all());
  auto doc = model_to_json(lm);
  EXPECT_NO_THROW(model_from_json(doc, nullptr));
  doc["version"] = kModelFormatVersion + 1;
  EXPECT_THROW(model_from_json(doc, nullptr), FormatError);

  std::ostringstream full;
  save_model(full, lm);
  std::istringstream truncated(full.str().substr(0, full.str().size() / 2));
  EXPECT_THROW(load_model(truncated, nullptr), FormatError);
  std::istringstream other(R"({"format": "something-else", "version": 1})");
  EXPECT_THROW(load_model(other, nullptr), FormatError);
}

TEST(ModelFile, LexicalModelNeedsEmbeddings) {
  const auto corpus = mini_corpus();
  const auto data = build_training_data(corpus, FilterRuleSet::all());
  auto emb = std::make_shared<const EmbeddingTable>(load_embeddings_string(slurp(data_path("emb.txt"))));
  const auto lm = train_label_model(data.examples, FeatureConfig::from_names("lex"), emb, TreeParams{},
                                    FilterRuleSet::all());
  EXPECT_THROW(model_from_json(model_to_json(lm), nullptr), ConfigError);
}
