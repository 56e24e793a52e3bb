#pragma once

#include <istream>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <variant>

#include "json.hpp"

#include "indoamr/classifier/dataset.hpp"
#include "indoamr/classifier/decision_tree.hpp"
#include "indoamr/classifier/gbt.hpp"
#include "indoamr/embeddings.hpp"
#include "indoamr/error.hpp"
#include "indoamr/features.hpp"
#include "indoamr/pairgen.hpp"

namespace indoamr {

enum class Algorithm { decision_tree, gbt, ffnn };

inline Algorithm algorithm_from(const std::string& name) {
  if (name == "dt" || name == "tree" || name == "decision_tree") return Algorithm::decision_tree;
  if (name == "gbt" || name == "xgboost") return Algorithm::gbt;
  if (name == "ffnn")
    throw ConfigError("algorithm 'ffnn' (feed-forward network) is reserved but not implemented; use dt or gbt");
  throw ConfigError("unknown algorithm '" + name + "' (expected dt or gbt)");
}

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::decision_tree: return "dt";
    case Algorithm::gbt: return "gbt";
    case Algorithm::ffnn: return "ffnn";
  }
  return "";
}

using ModelParams = std::variant<TreeParams, GbtParams>;
using Model = std::variant<TreeModel, GbtModel>;

inline std::string describe(const ModelParams& params) {
  if (const auto* t = std::get_if<TreeParams>(&params))
    return "dt max_depth=" + std::to_string(t->max_depth) + " criterion=" + to_string(t->criterion);
  const auto& g = std::get<GbtParams>(params);
  return "gbt learning_rate=" + nlohmann::json(g.learning_rate).dump() + " max_depth=" + std::to_string(g.max_depth) +
         " n_rounds=" + std::to_string(g.n_rounds);
}

inline Model train(const Dataset& ds, const ModelParams& params) {
  return std::visit(
      [&](const auto& p) -> Model {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, TreeParams>)
          return train_tree(ds, p);
        else
          return train_gbt(ds, p);
      },
      params);
}

inline Prediction predict(const Model& m, std::span<const double> x) {
  return std::visit([&](const auto& model) { return predict(model, x); }, m);
}

inline constexpr int kModelFormatVersion = 1;
inline constexpr const char* kModelFormatName = "indoamr-label-model";

/// Trained classifier bundled with the state needed to apply it.
struct LabelModel {
  Model model;
  FeatureEncoder encoder;
  FilterRuleSet rules;
};

/// Versioned JSON model file. Reals are written in shortest round-trip
/// decimal form, so a reloaded model reproduces predictions bit for bit.
inline nlohmann::json model_to_json(const LabelModel& lm) {
  nlohmann::json doc;
  doc["format"] = kModelFormatName;
  doc["version"] = kModelFormatVersion;
  doc["encoder"] = lm.encoder.to_json();
  doc["rules"] = lm.rules.to_json();
  std::visit(
      [&](const auto& m) {
        doc["classes"] = m.classes;
        doc["dimension"] = m.dimension;
        doc["params"] = m.params.to_json();
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, TreeModel>) {
          doc["algorithm"] = "dt";
          doc["tree"] = m.tree.to_json();
        } else {
          doc["algorithm"] = "gbt";
          doc["base_scores"] = m.base_scores;
          doc["train_loss"] = m.train_loss;
          auto rounds = nlohmann::json::array();
          for (const auto& round : m.rounds) {
            auto trees = nlohmann::json::array();
            for (const auto& t : round) trees.push_back(t.to_json());
            rounds.push_back(std::move(trees));
          }
          doc["rounds"] = std::move(rounds);
        }
      },
      lm.model);
  return doc;
}

inline void save_model(std::ostream& out, const LabelModel& lm) { out << model_to_json(lm).dump(1) << '\n'; }

/// `embeddings` is required when the stored encoder uses lexical features.
inline LabelModel model_from_json(const nlohmann::json& doc, std::shared_ptr<const EmbeddingTable> embeddings) {
  try {
    if (doc.at("format").get<std::string>() != kModelFormatName) throw FormatError("not an indoamr model file");
    const int version = doc.at("version").get<int>();
    if (version != kModelFormatVersion)
      throw FormatError("unsupported model format version " + std::to_string(version) + " (expected " +
                        std::to_string(kModelFormatVersion) + ")");
    auto encoder = FeatureEncoder::from_json(doc.at("encoder"), std::move(embeddings));
    auto rules = FilterRuleSet::from_json(doc.at("rules"));
    const auto classes = doc.at("classes").get<std::vector<std::string>>();
    const auto dimension = doc.at("dimension").get<std::size_t>();
    if (dimension != encoder.dimension()) throw FormatError("model dimension does not match its encoder");
    const auto algorithm = doc.at("algorithm").get<std::string>();
    if (algorithm == "dt") {
      TreeModel m{TreeParams::from_json(doc.at("params")), classes, dimension,
                  Tree::from_json(doc.at("tree"), dimension)};
      return {std::move(m), std::move(encoder), std::move(rules)};
    }
    if (algorithm == "gbt") {
      GbtModel m{GbtParams::from_json(doc.at("params")), classes, dimension,
                 doc.at("base_scores").get<std::vector<double>>(), {}, doc.at("train_loss").get<std::vector<double>>()};
      if (m.base_scores.size() != classes.size()) throw FormatError("base_scores length does not match classes");
      for (const auto& round : doc.at("rounds")) {
        std::vector<Tree> trees;
        for (const auto& t : round) trees.push_back(Tree::from_json(t, dimension));
        if (trees.size() != classes.size()) throw FormatError("boosting round has wrong tree count");
        m.rounds.push_back(std::move(trees));
      }
      return {std::move(m), std::move(encoder), std::move(rules)};
    }
    throw FormatError("unknown algorithm '" + algorithm + "' in model file");
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed model file: ") + e.what());
  }
}

inline LabelModel load_model(std::istream& in, std::shared_ptr<const EmbeddingTable> embeddings) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("truncated or malformed model file: ") + e.what());
  }
  return model_from_json(doc, std::move(embeddings));
}

}  // namespace indoamr
