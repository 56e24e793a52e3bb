#pragma once

#include <exception>
#include <functional>
#include <ostream>
#include <string>

#include "CLI11.hpp"

#include "indoamr/commands.hpp"
#include "indoamr/error.hpp"

namespace indoamr {

enum ExitCode : int { exit_ok = 0, exit_input_error = 1, exit_config_error = 2 };

namespace cli_detail {

inline void add_rules(CLI::App* app, RunConfig& cfg) {
  app->add_option("--rules", cfg.rules, "enabled filter rules: comma list of det,prep,sconj or 'none'");
  app->add_option("--rules-config", cfg.rules_config, "JSON file overriding rule tag/word lists");
}

inline void add_model_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--algo", cfg.algo, "dt or gbt");
  app->add_option("--max-depth", cfg.max_depth, "maximum tree depth");
  app->add_option("--criterion", cfg.criterion, "gini or entropy (dt)");
  app->add_option("--lr", cfg.lr, "learning rate (gbt)");
  app->add_option("--rounds", cfg.rounds, "boosting rounds (gbt)");
  app->add_option("--l2", cfg.l2, "L2 leaf penalty (gbt)");
}

}  // namespace cli_detail

/// Parses arguments and dispatches to a command. Results go to `out`,
/// diagnostics to `err`. Returns 0, 1 (bad input data) or 2 (bad options).
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  RunConfig cfg;
  CLI::App app{"Indonesian AMR parsing by dependency pair labeling", "indoamr"};
  app.require_subcommand(1);
  std::function<void()> action;

  auto* train = app.add_subcommand("train", "train an edge-label model");
  train->add_option("--conllu", cfg.conllu, "annotated sentences (CoNLL-U)")->required();
  train->add_option("--amr", cfg.amr, "gold AMR corpus")->required();
  train->add_option("--emb", cfg.emb, "word2vec text embeddings");
  train->add_option("--model", cfg.model, "model file to write")->required();
  train->add_option("--features", cfg.features, "feature categories: lex,syn,pos");
  train->add_option("--k", cfg.k, "also report k-fold cross-validation");
  train->add_option("--seed", cfg.seed, "fold shuffling seed");
  train->add_option("--feature-table", cfg.feature_table, "write the combined feature table (TSV)");
  train->add_flag("--verbose", cfg.verbose, "log unmatched gold edges");
  add_rules(train, cfg);
  add_model_options(train, cfg);
  train->callback([&] { action = [&] { cmd_train(cfg, out, err); }; });

  auto* predict = app.add_subcommand("predict", "parse sentences into AMR graphs");
  predict->add_option("--conllu", cfg.conllu, "annotated sentences (CoNLL-U)")->required();
  predict->add_option("--model", cfg.model, "model file")->required();
  predict->add_option("--emb", cfg.emb, "word2vec text embeddings");
  predict->add_option("--out", cfg.out, "output AMR file (default stdout)");
  add_rules(predict, cfg);
  predict->callback([&] { action = [&] { cmd_predict(cfg, out); }; });

  auto* eval = app.add_subcommand("eval", "evaluate graphs or dependency pairs");
  eval->require_subcommand(1);
  auto* smatch_cmd = eval->add_subcommand("smatch", "SMATCH of predicted against gold graphs");
  smatch_cmd->add_option("--pred", cfg.pred, "predicted AMR corpus")->required();
  smatch_cmd->add_option("--amr", cfg.amr, "gold AMR corpus")->required();
  smatch_cmd->add_option("--restarts", cfg.restarts, "hill-climbing restarts");
  smatch_cmd->add_option("--seed", cfg.seed, "restart seed");
  smatch_cmd->add_option("--report-json", cfg.report_json, "write a JSON report");
  smatch_cmd->callback([&] { action = [&] { cmd_eval_smatch(cfg, out); }; });
  auto* pairs_cmd = eval->add_subcommand("pairs", "pair F1 of filtered dependency pairs");
  pairs_cmd->add_option("--conllu", cfg.conllu, "annotated sentences (CoNLL-U)")->required();
  pairs_cmd->add_option("--amr", cfg.amr, "gold AMR corpus")->required();
  pairs_cmd->add_option("--report-json", cfg.report_json, "write a JSON report");
  add_rules(pairs_cmd, cfg);
  pairs_cmd->callback([&] { action = [&] { cmd_eval_pairs(cfg, out); }; });

  auto* ablate_rules = app.add_subcommand("ablate-rules", "pair F1 for every filter rule combination");
  ablate_rules->add_option("--conllu", cfg.conllu, "annotated sentences (CoNLL-U)")->required();
  ablate_rules->add_option("--amr", cfg.amr, "gold AMR corpus")->required();
  ablate_rules->add_option("--rules-config", cfg.rules_config, "JSON file overriding rule tag/word lists");
  ablate_rules->add_option("--report-json", cfg.report_json, "write a JSON report");
  ablate_rules->callback([&] { action = [&] { cmd_ablate_rules(cfg, out); }; });

  auto* ablate_features = app.add_subcommand("ablate-features", "decision-tree CV per feature combination");
  ablate_features->add_option("--conllu", cfg.conllu, "annotated sentences (CoNLL-U)")->required();
  ablate_features->add_option("--amr", cfg.amr, "gold AMR corpus")->required();
  ablate_features->add_option("--emb", cfg.emb, "word2vec text embeddings")->required();
  ablate_features->add_option("--k", cfg.k, "number of folds (default 5)");
  ablate_features->add_option("--seed", cfg.seed, "fold shuffling seed");
  ablate_features->add_option("--max-depth", cfg.max_depth, "tree depth (default unbounded)");
  ablate_features->add_option("--criterion", cfg.criterion, "gini or entropy");
  ablate_features->add_option("--report-json", cfg.report_json, "write a JSON report");
  add_rules(ablate_features, cfg);
  ablate_features->callback([&] { action = [&] { cmd_ablate_features(cfg, out); }; });

  auto* grid = app.add_subcommand("grid", "cross-validated hyperparameter search");
  grid->add_option("--conllu", cfg.conllu, "annotated sentences (CoNLL-U)")->required();
  grid->add_option("--amr", cfg.amr, "gold AMR corpus")->required();
  grid->add_option("--emb", cfg.emb, "word2vec text embeddings");
  grid->add_option("--features", cfg.features, "feature categories: lex,syn,pos");
  grid->add_option("--grid-file", cfg.grid_file, "JSON grid definition");
  grid->add_option("--k", cfg.k, "number of folds (default 5)");
  grid->add_option("--seed", cfg.seed, "fold shuffling seed");
  grid->add_option("--report-json", cfg.report_json, "write a JSON report");
  add_rules(grid, cfg);
  grid->callback([&] { action = [&] { cmd_grid(cfg, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_config_error;
  }

  try {
    if (action) action();
    return exit_ok;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  }
}

}  // namespace indoamr
