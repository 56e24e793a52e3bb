// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"

using namespace indoamr;
using namespace testing_support;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  std::string name;
  double limit_seconds;  // 0 = no runtime bound
  std::function<Outcome()> check;
};

const std::string kConllu = data_path("corpus.conllu");
const std::string kGold = data_path("gold.amr");
const std::string kEmb = data_path("emb.txt");

Outcome penman_round_trip() {
  std::size_t checked = 0;
  for (const char* text : {kIbuGold, kIbuSystem, kTertawaGold, kTertawaSystem}) {
    const auto g = parse_penman(text);
    if (!(parse_penman(serialize_penman(g)) == g)) return {false, std::string("fixture failed: ") + text};
    ++checked;
  }
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 40; ++i) {
    const auto g = random_tree(rng, 1 + static_cast<std::size_t>(i % 10), 5);
    if (!(parse_penman(serialize_penman(g)) == g)) return {false, "random tree failed: " + serialize_penman(g)};
    ++checked;
  }
  return {true, std::to_string(checked) + " graphs (4 fixtures + 40 random trees <= 10 nodes)"};
}

Outcome smatch_correctness() {
  std::mt19937_64 rng(31337);
  std::size_t equal = 0, greater = 0;
  for (int i = 0; i < 50; ++i) {
    const auto a = random_dag(rng, 1 + static_cast<std::size_t>(rng() % 6));
    const auto b = random_dag(rng, 1 + static_cast<std::size_t>(rng() % 6));
    const auto hill = smatch(a, b, 16, static_cast<std::uint64_t>(i));
    const auto exact = smatch_oracle(a, b);
    if (hill.f1 == exact.f1) ++equal;
    if (hill.f1 > exact.f1) ++greater;
  }
  std::size_t identical = 0;
  for (int i = 0; i < 20; ++i) {
    const auto g = random_dag(rng, 1 + static_cast<std::size_t>(i % 10));
    if (smatch(g, g).f1 == 1.0) ++identical;
  }
  const double disjoint = smatch(parse_penman("(a / x)"), parse_penman("(b / y)")).f1;
  std::ostringstream d;
  d << "hill==oracle " << equal << "/50, hill>oracle " << greater << ", smatch(g,g)=1 " << identical
    << "/20, (a / x) vs (b / y) = " << disjoint;
  return {equal >= 49 && greater == 0 && identical == 20 && std::abs(disjoint - 0.5) <= 1e-12, d.str()};
}

Outcome makan_filtering() {
  const auto s = read_conllu_string(kMakanConllu).at(0);
  FilterRuleSet prep;
  prep.enable(FilterRule::preposition);
  std::vector<std::pair<std::string, std::string>> got;
  for (const auto& p : apply_filter(extract_pairs(s), prep)) got.emplace_back(p.parent.lemma, p.child.lemma);
  const std::vector<std::pair<std::string, std::string>> want = {{"makan", "aku"}, {"makan", "kue"}, {"makan", "teras"}};
  std::string shown;
  for (const auto& [p, c] : got) shown += "(" + p + "," + c + ")";
  return {got == want, "surviving pairs " + shown};
}

Outcome rule_ablation() {
  const auto first = run({"ablate-rules", "--conllu", kConllu, "--amr", kGold});
  const auto second = run({"ablate-rules", "--conllu", kConllu, "--amr", kGold});
  if (first.code != 0) return {false, "ablate-rules failed: " + first.err};
  const auto lines = split(trim(first.out), '\n');
  if (lines.size() != 9) return {false, "expected header + 8 rows, got " + std::to_string(lines.size()) + " lines"};
  const double none = std::stod(split(lines[1], '\t').at(4));
  const double all = std::stod(split(lines[8], '\t').at(4));
  const bool identical = first.out == second.out;
  std::ostringstream d;
  d << "8 rows, precision none=" << fixed(none) << " all=" << fixed(all)
    << ", reruns byte-identical=" << (identical ? "yes" : "no");
  return {all >= none && identical, d.str()};
}

Outcome classifier_sanity() {
  const auto ds = synthetic_six_class(1000, 123);
  const auto tree_cv = cross_validate(ds, TreeParams{8, SplitCriterion::gini, 2}, 5, 42);
  const GbtParams gbt{0.1, 8, 50, 1.0};
  const auto gbt_cv = cross_validate(ds, gbt, 5, 42);
  const auto full = train_gbt(ds, gbt);
  bool monotone = true;
  for (std::size_t r = 1; r < full.train_loss.size(); ++r) monotone &= full.train_loss[r] <= full.train_loss[r - 1];
  std::ostringstream d;
  d << "tree F1-macro " << fixed(tree_cv.mean_f1_macro) << ", gbt F1-macro " << fixed(gbt_cv.mean_f1_macro)
    << ", gbt loss " << fixed(full.train_loss.front()) << " -> " << fixed(full.train_loss.back())
    << (monotone ? " non-increasing" : " INCREASED");
  return {tree_cv.mean_f1_macro >= 0.95 && gbt_cv.mean_f1_macro >= tree_cv.mean_f1_macro && monotone, d.str()};
}

Outcome ibu_system_graph() {
  const auto dir = scratch_dir("acceptance_ibu");
  const auto conllu = (dir / "ibu.conllu").string();
  const auto model = (dir / "stub.json").string();
  spit(conllu, kIbuSystemConllu);

  // Stub model: a tree fitted to exactly the four predicted labels.
  const auto s = read_conllu_string(kIbuSystemConllu).at(0);
  const auto rules = FilterRuleSet::from_names("det,prep");
  const auto pairs = apply_filter(extract_pairs(s), rules);
  const auto rows = combine_features(s, pairs);
  const std::vector<std::string> labels = {"mod", "ARG1", "mod", "mod"};
  if (rows.size() != labels.size()) return {false, "expected 4 surviving pairs, got " + std::to_string(rows.size())};
  std::vector<LabeledExample> examples;
  for (std::size_t i = 0; i < rows.size(); ++i) examples.push_back({rows[i], EdgeLabel(labels[i])});
  const auto lm = train_label_model(examples, FeatureConfig::from_names("pos"), nullptr, TreeParams{}, rules);
  {
    std::ostringstream file;
    save_model(file, lm);
    spit(model, file.str());
  }
  const auto r = run({"predict", "--conllu", conllu, "--model", model});
  if (r.code != 0) return {false, "predict failed: " + r.err};
  const auto entries = read_amr_corpus_string(r.out);
  if (entries.size() != 1) return {false, "expected one predicted entry"};
  const auto text = serialize_penman(entries[0].graph);
  const auto gold = parse_penman(kIbuGold);
  const auto hill = smatch(entries[0].graph, gold);
  const auto exact = smatch_oracle(entries[0].graph, gold);
  std::ostringstream d;
  d << text << "; smatch " << fixed(hill.f1) << " oracle " << fixed(exact.f1);
  return {text == kIbuSystem && hill.f1 == exact.f1, d.str()};
}

Outcome overfit() {
  const auto dir = scratch_dir("acceptance_overfit");
  const auto model = (dir / "model.json").string();
  const auto pred = (dir / "pred.amr").string();
  auto r = run({"train", "--conllu", kConllu, "--amr", kGold, "--emb", kEmb, "--model", model});
  if (r.code != 0) return {false, "train failed: " + r.err};
  r = run({"predict", "--conllu", kConllu, "--model", model, "--emb", kEmb, "--out", pred});
  if (r.code != 0) return {false, "predict failed: " + r.err};
  r = run({"eval", "smatch", "--pred", pred, "--amr", kGold});
  if (r.code != 0) return {false, "eval failed: " + r.err};
  const auto total = split(r.out.substr(r.out.rfind("corpus\t")), '\t');
  const double f1 = std::stod(total.at(3));
  return {f1 >= 0.90, "corpus SMATCH F1 " + fixed(f1) + " on 32 training sentences (gbt, lex+syn)"};
}

Outcome determinism() {
  const auto dir = scratch_dir("acceptance_determinism");
  std::vector<std::string> differing;
  std::size_t commands = 0;
  auto twice = [&](const std::string& name, std::vector<std::string> args, const std::string& artifact = {}) {
    ++commands;
    const auto a = run(args);
    const std::string first_artifact = artifact.empty() ? "" : slurp(artifact);
    const auto b = run(args);
    const std::string second_artifact = artifact.empty() ? "" : slurp(artifact);
    if (a.code != 0 || a.out != b.out || a.err != b.err || first_artifact != second_artifact) differing.push_back(name);
  };
  const auto model = (dir / "model.json").string();
  const auto pred = (dir / "pred.amr").string();
  const auto report = (dir / "report.json").string();
  twice("train", {"train", "--conllu", kConllu, "--amr", kGold, "--emb", kEmb, "--model", model, "--k", "3"}, model);
  twice("predict", {"predict", "--conllu", kConllu, "--model", model, "--emb", kEmb, "--out", pred}, pred);
  twice("eval smatch", {"eval", "smatch", "--pred", pred, "--amr", kGold, "--report-json", report}, report);
  twice("eval pairs", {"eval", "pairs", "--conllu", kConllu, "--amr", kGold});
  twice("ablate-rules", {"ablate-rules", "--conllu", kConllu, "--amr", kGold});
  twice("ablate-features", {"ablate-features", "--conllu", kConllu, "--amr", kGold, "--emb", kEmb});
  twice("grid", {"grid", "--conllu", kConllu, "--amr", kGold, "--emb", kEmb, "--grid-file", data_path("grid.json")});
  std::string detail = std::to_string(commands - differing.size()) + "/" + std::to_string(commands) +
                       " commands byte-identical across two runs";
  for (const auto& d : differing) detail += "; differs: " + d;
  return {differing.empty(), detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"penman-round-trip", 1.0, penman_round_trip},
      {"smatch-correctness", 10.0, smatch_correctness},
      {"pair-filtering-makan", 0.0, makan_filtering},
      {"rule-ablation-harness", 0.0, rule_ablation},
      {"classifier-sanity", 60.0, classifier_sanity},
      {"ibu-system-graph", 0.0, ibu_system_graph},
      {"end-to-end-overfit", 60.0, overfit},
      {"determinism", 0.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = o.pass;
    std::string timing = fixed(seconds, 3) + " s";
    if (c.limit_seconds > 0) {
      timing += " (limit " + fixed(c.limit_seconds, 0) + " s)";
      pass = pass && seconds < c.limit_seconds;
    }
    std::cout << (pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail << " [" << timing << "]\n";
    failures += !pass;
  }
  std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criteria failed\n"
                         : "acceptance: all criteria passed\n");
  return failures ? 1 : 0;
}
