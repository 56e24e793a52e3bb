#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "indoamr/amr_corpus.hpp"
#include "indoamr/classifier/cross_validation.hpp"
#include "indoamr/classifier/model.hpp"
#include "indoamr/conllu.hpp"
#include "indoamr/embeddings.hpp"
#include "indoamr/error.hpp"
#include "indoamr/features.hpp"
#include "indoamr/metrics/smatch.hpp"
#include "indoamr/pairgen.hpp"
#include "indoamr/pipeline.hpp"
#include "indoamr/text.hpp"

namespace indoamr {

inline constexpr std::size_t kDefaultFolds = 5;
// Depth used where an unrestricted tree is wanted (feature ablation).
inline constexpr std::size_t kUnboundedDepth = 64;

/// Options shared by all commands. Empty paths mean "not given".
struct RunConfig {
  std::string conllu;
  std::string amr;
  std::string pred;
  std::string emb;
  std::string model;
  std::string out;
  std::optional<std::string> rules;
  std::string rules_config;
  std::string features = "lex,syn";
  std::string algo = "gbt";
  std::optional<std::size_t> max_depth;
  std::string criterion = "gini";
  double lr = 0.1;
  std::size_t rounds = 100;
  double l2 = 1.0;
  std::size_t k = 0;
  std::uint64_t seed = kDefaultSeed;
  std::size_t restarts = kDefaultSmatchRestarts;
  std::string grid_file;
  std::string report_json;
  std::string feature_table;
  bool verbose = false;
};

namespace commands_detail {

inline std::ifstream open_input(const std::string& path, const std::string& flag) {
  if (path.empty()) throw ConfigError(flag + " is required");
  if (!std::filesystem::is_regular_file(path)) throw ConfigError(flag + " file not found: " + path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  return in;
}

inline void write_output(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path);
  out << content;
  if (!out) throw FormatError("failed writing " + path);
}

inline std::vector<AnnotatedSentence> load_sentences(const RunConfig& cfg) {
  auto in = open_input(cfg.conllu, "--conllu");
  return read_conllu(in);
}

inline std::vector<AmrEntry> load_amr(const std::string& path, const std::string& flag) {
  auto in = open_input(path, flag);
  return read_amr_corpus(in);
}

inline AlignedCorpus load_aligned(const RunConfig& cfg) {
  return align_by_id(load_sentences(cfg), load_amr(cfg.amr, "--amr"));
}

inline std::shared_ptr<const EmbeddingTable> load_embedding_file(const std::string& path) {
  auto in = open_input(path, "--emb");
  return std::make_shared<const EmbeddingTable>(load_embeddings(in));
}

inline std::shared_ptr<const EmbeddingTable> embeddings_for(const RunConfig& cfg, bool lexical) {
  if (!cfg.emb.empty()) return load_embedding_file(cfg.emb);
  if (lexical) throw ConfigError("lexical features are enabled but no --emb file was given");
  return nullptr;
}

/// Rule set from `fallback`, then --rules-config, then --rules toggles.
inline FilterRuleSet resolve_rules(const RunConfig& cfg, FilterRuleSet fallback) {
  FilterRuleSet rules = std::move(fallback);
  if (!cfg.rules_config.empty()) {
    auto in = open_input(cfg.rules_config, "--rules-config");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("malformed rule configuration: ") + e.what());
    }
    rules = FilterRuleSet::from_json(doc, rules);
  }
  if (cfg.rules) {
    const auto named = FilterRuleSet::from_names(*cfg.rules);
    for (auto r : kFilterRules) rules.enable(r, named.enabled(r));
  }
  return rules;
}

inline ModelParams params_for(const RunConfig& cfg, std::size_t default_depth = 8) {
  const std::size_t depth = cfg.max_depth.value_or(default_depth);
  switch (algorithm_from(cfg.algo)) {
    case Algorithm::decision_tree: {
      TreeParams p{depth, split_criterion_from(cfg.criterion), 2};
      p.validate();
      return p;
    }
    default: {
      GbtParams p{cfg.lr, depth, cfg.rounds, cfg.l2};
      p.validate();
      return p;
    }
  }
}

inline nlohmann::json score_json(const PrfScore& s) {
  return {{"precision", s.precision}, {"recall", s.recall},       {"f1", s.f1},
          {"matched", s.matched},     {"predicted_total", s.predicted_total}, {"gold_total", s.gold_total}};
}

inline std::string score_line(const std::string& id, const PrfScore& s) {
  return id + '\t' + fixed(s.precision) + '\t' + fixed(s.recall) + '\t' + fixed(s.f1) + '\t' +
         std::to_string(s.matched) + '\t' + std::to_string(s.predicted_total) + '\t' + std::to_string(s.gold_total);
}

inline void maybe_write_report(const RunConfig& cfg, const nlohmann::json& report) {
  if (!cfg.report_json.empty()) write_output(cfg.report_json, report.dump(2) + "\n");
}

inline void print_cv(std::ostream& out, const CvReport& cv) {
  out << "cv\tk=" << cv.k << "\tseed=" << cv.seed << "\tstratified=" << (cv.stratified ? "yes" : "no") << '\n';
  if (!cv.warning.empty()) out << "warning\t" << cv.warning << '\n';
  for (std::size_t f = 0; f < cv.k; ++f)
    out << "fold\t" << f + 1 << "\taccuracy=" << fixed(cv.fold_accuracy[f]) << "\tf1_macro=" << fixed(cv.fold_f1_macro[f])
        << '\n';
  out << "cv_mean\taccuracy=" << fixed(cv.mean_accuracy) << "\tf1_macro=" << fixed(cv.mean_f1_macro) << '\n';
}

inline nlohmann::json cv_json(const CvReport& cv) {
  return {{"k", cv.k},
          {"seed", cv.seed},
          {"stratified", cv.stratified},
          {"fold_accuracy", cv.fold_accuracy},
          {"fold_f1_macro", cv.fold_f1_macro},
          {"mean_accuracy", cv.mean_accuracy},
          {"mean_f1_macro", cv.mean_f1_macro}};
}

}  // namespace commands_detail

/// ingest -> pairgen -> features -> encoder -> model file (+ optional CV).
inline void cmd_train(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  using namespace commands_detail;
  if (cfg.model.empty()) throw ConfigError("--model is required");
  const auto features = FeatureConfig::from_names(cfg.features);
  const auto rules = resolve_rules(cfg, FilterRuleSet::all());
  const auto params = params_for(cfg);
  const auto embeddings = embeddings_for(cfg, features.lexical());
  const auto corpus = load_aligned(cfg);

  const auto data = build_training_data(corpus, rules, cfg.verbose ? &log : nullptr);
  out << "seed\t" << cfg.seed << '\n'
      << "rules\t" << rules.name() << '\n'
      << "features\t" << features.name() << '\n'
      << "algorithm\t" << describe(params) << '\n'
      << "sentences\t" << data.sentences << '\n'
      << "pairs\t" << data.pairs << '\n'
      << "gold_edges\t" << data.gold_edges << '\n'
      << "examples\t" << data.examples.size() << '\n'
      << "unmatched_gold_edges\t" << data.unmatched_gold_edges << '\n';
  if (data.examples.empty()) throw FormatError("no training examples: no filtered pair matched a gold edge");

  if (!cfg.feature_table.empty()) {
    std::vector<PairFeatures> rows;
    std::vector<EdgeLabel> labels;
    for (const auto& ex : data.examples) {
      rows.push_back(ex.features);
      labels.push_back(ex.label);
    }
    std::ostringstream table;
    write_feature_table(table, rows, &labels);
    write_output(cfg.feature_table, table.str());
  }

  auto encoder = fit_encoder(data.examples, features, embeddings);
  const Dataset ds = make_dataset(data.examples, encoder);
  std::vector<std::size_t> per_class(ds.class_count(), 0);
  for (int l : ds.labels()) ++per_class[static_cast<std::size_t>(l)];
  for (std::size_t c = 0; c < ds.class_count(); ++c) out << "class\t" << ds.classes()[c] << '\t' << per_class[c] << '\n';
  out << "dimension\t" << ds.dimension() << '\n';

  if (cfg.k > 0) print_cv(out, cross_validate(ds, params, cfg.k, cfg.seed));

  const LabelModel lm{train(ds, params), std::move(encoder), rules};
  std::ostringstream file;
  save_model(file, lm);
  write_output(cfg.model, file.str());
  out << "model\t" << cfg.model << '\n';
}

/// ingest -> pairgen -> features -> classifier -> graph construction.
inline void cmd_predict(const RunConfig& cfg, std::ostream& out) {
  using namespace commands_detail;
  auto model_in = open_input(cfg.model, "--model");
  const auto lm = load_model(model_in, cfg.emb.empty() ? nullptr : load_embedding_file(cfg.emb));
  const auto rules = resolve_rules(cfg, lm.rules);
  const auto sentences = load_sentences(cfg);
  const auto entries = predict_corpus(lm, sentences, rules);
  std::ostringstream text;
  write_amr_corpus(text, entries);
  if (cfg.out.empty())
    out << text.str();
  else
    write_output(cfg.out, text.str());
}

inline void cmd_eval_smatch(const RunConfig& cfg, std::ostream& out) {
  using namespace commands_detail;
  const auto preds = load_amr(cfg.pred, "--pred");
  const auto golds = load_amr(cfg.amr, "--amr");
  const auto result = corpus_smatch(preds, golds, cfg.restarts, cfg.seed);
  out << "# smatch restarts=" << cfg.restarts << " seed=" << cfg.seed << '\n';
  out << "# id\tprecision\trecall\tf1\tmatched\tpred_total\tgold_total\n";
  nlohmann::json sentences = nlohmann::json::array();
  for (const auto& s : result.sentences) {
    out << score_line(s.id, s.score) << '\n';
    auto j = score_json(s.score);
    j["id"] = s.id;
    sentences.push_back(std::move(j));
  }
  out << score_line("corpus", result.total) << '\n';
  maybe_write_report(cfg, {{"metric", "smatch"},
                           {"restarts", cfg.restarts},
                           {"seed", cfg.seed},
                           {"corpus", score_json(result.total)},
                           {"sentences", std::move(sentences)}});
}

inline void cmd_eval_pairs(const RunConfig& cfg, std::ostream& out) {
  using namespace commands_detail;
  const auto rules = resolve_rules(cfg, FilterRuleSet::all());
  const auto corpus = load_aligned(cfg);
  std::vector<std::pair<std::string, PairScore>> per_sentence;
  const auto total = corpus_pair_f1(corpus, rules, &per_sentence);
  out << "# pairs rules=" << rules.name() << '\n';
  out << "# id\tprecision\trecall\tf1\tmatched\tpred_total\tgold_total\n";
  for (const auto& [id, s] : per_sentence) out << score_line(id, s) << '\n';
  out << score_line("corpus", total) << '\n';
  maybe_write_report(cfg, {{"metric", "pair_f1"}, {"rules", rules.name()}, {"corpus", score_json(total)}});
}

/// Pair F1 for all eight rule combinations.
inline void cmd_ablate_rules(const RunConfig& cfg, std::ostream& out) {
  using namespace commands_detail;
  const auto base = resolve_rules(cfg, FilterRuleSet{});
  const auto corpus = load_aligned(cfg);
  out << "no\tdeterminer\tpreposition\tsconj\tprecision\trecall\tf1\n";
  nlohmann::json rows = nlohmann::json::array();
  const auto combos = rule_combinations(base);
  for (std::size_t i = 0; i < combos.size(); ++i) {
    const auto& r = combos[i];
    const auto s = corpus_pair_f1(corpus, r);
    auto mark = [&](FilterRule rule) { return r.enabled(rule) ? "x" : "-"; };
    out << i << '\t' << mark(FilterRule::determiner) << '\t' << mark(FilterRule::preposition) << '\t'
        << mark(FilterRule::subordinate_conjunction) << '\t' << fixed(s.precision) << '\t' << fixed(s.recall) << '\t'
        << fixed(s.f1) << '\n';
    auto j = score_json(s);
    j["rules"] = r.name();
    rows.push_back(std::move(j));
  }
  maybe_write_report(cfg, {{"experiment", "ablate-rules"}, {"rows", std::move(rows)}});
}

/// Decision-tree cross-validation for each feature category combination.
inline void cmd_ablate_features(const RunConfig& cfg, std::ostream& out) {
  using namespace commands_detail;
  const auto rules = resolve_rules(cfg, FilterRuleSet::all());
  const std::size_t k = cfg.k ? cfg.k : kDefaultFolds;
  const TreeParams params{cfg.max_depth.value_or(kUnboundedDepth), split_criterion_from(cfg.criterion), 2};
  params.validate();
  const auto combos = feature_combinations();
  bool any_lexical = false;
  for (const auto& c : combos) any_lexical |= c.lexical();
  const auto embeddings = embeddings_for(cfg, any_lexical);
  const auto corpus = load_aligned(cfg);
  const auto data = build_training_data(corpus, rules);
  if (data.examples.size() < k) throw FormatError("too few training examples for " + std::to_string(k) + "-fold CV");

  out << "# ablate-features rules=" << rules.name() << " k=" << k << " seed=" << cfg.seed << " "
      << describe(params) << '\n';
  out << "no\tlexical\tsyntactic\tpositional\taccuracy\tf1_macro\n";
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < combos.size(); ++i) {
    const auto encoder = fit_encoder(data.examples, combos[i], embeddings);
    const auto cv = cross_validate(make_dataset(data.examples, encoder), params, k, cfg.seed);
    out << i + 1 << '\t' << (combos[i].lexical() ? "x" : "-") << '\t' << (combos[i].syntactic() ? "x" : "-") << '\t'
        << (combos[i].positional() ? "x" : "-") << '\t' << fixed(cv.mean_accuracy) << '\t'
        << fixed(cv.mean_f1_macro) << '\n';
    auto j = cv_json(cv);
    j["features"] = combos[i].name();
    rows.push_back(std::move(j));
  }
  maybe_write_report(cfg, {{"experiment", "ablate-features"}, {"rows", std::move(rows)}});
}

/// Grid cells from a JSON document {"dt": {"max_depth": [...], "criterion":
/// [...]}, "gbt": {"learning_rate": [...], "max_depth": [...], "n_rounds":
/// [...], "l2_leaf_penalty": [...]}}. Missing lists fall back to the
/// single value from `cfg`.
inline std::vector<ModelParams> grid_cells(const nlohmann::json& grid, const RunConfig& cfg) {
  if (!grid.is_object()) throw ConfigError("grid file must be a JSON object");
  std::vector<ModelParams> cells;
  try {
    for (const auto& [algo, spec] : grid.items()) {
      const Algorithm a = algorithm_from(algo);
      auto list = [&](const char* key, auto fallback) {
        using T = decltype(fallback);
        return spec.contains(key) ? spec.at(key).get<std::vector<T>>() : std::vector<T>{fallback};
      };
      if (a == Algorithm::decision_tree) {
        for (auto depth : list("max_depth", cfg.max_depth.value_or(8)))
          for (const auto& crit : list("criterion", cfg.criterion)) {
            TreeParams p{depth, split_criterion_from(crit), 2};
            p.validate();
            cells.emplace_back(p);
          }
      } else {
        for (auto lr : list("learning_rate", cfg.lr))
          for (auto depth : list("max_depth", cfg.max_depth.value_or(8)))
            for (auto rounds : list("n_rounds", cfg.rounds))
              for (auto l2 : list("l2_leaf_penalty", cfg.l2)) {
                GbtParams p{lr, depth, rounds, l2};
                p.validate();
                cells.emplace_back(p);
              }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed grid file: ") + e.what());
  }
  if (cells.empty()) throw ConfigError("grid is empty");
  return cells;
}

inline nlohmann::json default_grid() {
  return {{"dt", {{"max_depth", {6, 7, 10, 12}}, {"criterion", {"gini", "entropy"}}}},
          {"gbt", {{"learning_rate", {0.05, 0.1, 0.2}}, {"max_depth", {5, 8, 10}}}}};
}

/// Cross-validated hyperparameter sweep ranked by mean F1-macro.
inline void cmd_grid(const RunConfig& cfg, std::ostream& out) {
  using namespace commands_detail;
  nlohmann::json grid = default_grid();
  if (!cfg.grid_file.empty()) {
    auto in = open_input(cfg.grid_file, "--grid-file");
    try {
      grid = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("malformed grid file: ") + e.what());
    }
  }
  const auto cells = grid_cells(grid, cfg);
  const auto rules = resolve_rules(cfg, FilterRuleSet::all());
  const auto features = FeatureConfig::from_names(cfg.features);
  const std::size_t k = cfg.k ? cfg.k : kDefaultFolds;
  const auto embeddings = embeddings_for(cfg, features.lexical());
  const auto corpus = load_aligned(cfg);
  const auto data = build_training_data(corpus, rules);
  if (data.examples.size() < k) throw FormatError("too few training examples for " + std::to_string(k) + "-fold CV");
  const auto encoder = fit_encoder(data.examples, features, embeddings);
  const Dataset ds = make_dataset(data.examples, encoder);

  struct Row {
    std::size_t cell;
    CvReport cv;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < cells.size(); ++i) rows.push_back({i, cross_validate(ds, cells[i], k, cfg.seed)});
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.cv.mean_f1_macro > b.cv.mean_f1_macro; });

  out << "# grid rules=" << rules.name() << " features=" << features.name() << " k=" << k << " seed=" << cfg.seed
      << '\n';
  out << "rank\tparams\taccuracy\tf1_macro\n";
  nlohmann::json report = nlohmann::json::array();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    out << r + 1 << '\t' << describe(cells[row.cell]) << '\t' << fixed(row.cv.mean_accuracy) << '\t'
        << fixed(row.cv.mean_f1_macro) << '\n';
    auto j = cv_json(row.cv);
    j["params"] = describe(cells[row.cell]);
    report.push_back(std::move(j));
  }
  maybe_write_report(cfg, {{"experiment", "grid"}, {"rows", std::move(report)}});
}

}  // namespace indoamr
