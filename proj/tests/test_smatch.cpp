#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace indoamr;
using namespace testing_support;

TEST(Smatch, DisjointSingleNodes) {
  // only the top triple can match: P = R = 1/2
  const auto s = smatch(parse_penman("(a / x)"), parse_penman("(b / y)"));
  EXPECT_EQ(s.matched, 1u);
  EXPECT_NEAR(s.f1, 0.5, 1e-12);
  EXPECT_NEAR(smatch_oracle(parse_penman("(a / x)"), parse_penman("(b / y)")).f1, 0.5, 1e-12);
}

TEST(Smatch, IdenticalGraphsScoreOne) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 30; ++i) {
    const auto g = random_tree(rng, 1 + static_cast<std::size_t>(i % 8));
    EXPECT_EQ(smatch(g, g).f1, 1.0);
  }
  const auto g = parse_penman(kTertawaGold);
  EXPECT_EQ(smatch(g, g).f1, 1.0);
}

TEST(Smatch, VariableNamesDoNotMatter) {
  const auto a = parse_penman("(j / jahit :ARG0 (i / ibu) :ARG1 (b / baju))");
  const auto b = parse_penman("(vv1 / jahit :ARG1 (vv3 / baju) :ARG0 (vv2 / ibu))");
  EXPECT_EQ(smatch(a, b).f1, 1.0);
}

TEST(Smatch, IbuWorkedExampleByHand) {
  // prediction: 5 instances + 4 relations + top = 10; gold: 4 + 3 + 1 = 8.
  // Best map: vv1->i, vv2->j, vv3->b, vv4->r matches 4 instances and
  // ARG1(j,b) and mod(j,r); the top cannot match (ibu vs jahit roots).
  const auto pred = parse_penman(kIbuSystem);
  const auto gold = parse_penman(kIbuGold);
  const auto oracle = smatch_oracle(pred, gold);
  EXPECT_EQ(oracle.matched, 6u);
  EXPECT_EQ(oracle.predicted_total, 10u);
  EXPECT_EQ(oracle.gold_total, 8u);
  EXPECT_NEAR(oracle.f1, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(smatch(pred, gold).matched, 6u);
}

TEST(Smatch, OracleAgreesWithBruteForce) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 150; ++i) {
    const auto a = random_tree(rng, 1 + static_cast<std::size_t>(rng() % 5), 3);
    const auto b = random_tree(rng, 1 + static_cast<std::size_t>(rng() % 5), 3);
    EXPECT_EQ(smatch_oracle(a, b).matched, brute_force_matches(a, b)) << serialize_penman(a) << " vs "
                                                                      << serialize_penman(b);
  }
}

TEST(Smatch, OracleHandlesReentrancy) {
  const auto a = parse_penman("(a / ingin :ARG0 (b / ibu) :ARG1 (c / pergi :ARG0 b))");
  const auto b = parse_penman("(x / ingin :ARG0 (y / ibu) :ARG1 (z / pergi :ARG0 (w / ibu)))");
  EXPECT_EQ(smatch_oracle(a, b).matched, brute_force_matches(a, b));
  EXPECT_EQ(smatch_oracle(b, a).matched, brute_force_matches(b, a));
}

TEST(Smatch, HillClimbingNeverExceedsOracle) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_tree(rng, 1 + static_cast<std::size_t>(rng() % 6), 3);
    const auto b = random_tree(rng, 1 + static_cast<std::size_t>(rng() % 6), 3);
    EXPECT_LE(smatch(a, b, 1, static_cast<std::uint64_t>(i)).matched, smatch_oracle(a, b).matched);
  }
}

TEST(Smatch, MappingIsInjective) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    const auto a = random_tree(rng, 6, 2);
    const auto b = random_tree(rng, 4, 2);
    const auto r = smatch_detailed(a, b, 4, 1);
    std::set<int> seen;
    for (int g : r.mapping.gold_of)
      if (g >= 0) EXPECT_TRUE(seen.insert(g).second);
  }
}

TEST(Smatch, SeedReproducible) {
  std::mt19937_64 rng(4);
  const auto a = random_tree(rng, 8, 2);
  const auto b = random_tree(rng, 8, 2);
  EXPECT_EQ(smatch_detailed(a, b, 5, 99).mapping.gold_of, smatch_detailed(a, b, 5, 99).mapping.gold_of);
}

TEST(Smatch, Guards) {
  const auto g = parse_penman("(a / x)");
  EXPECT_THROW(smatch(g, g, 0), ConfigError);
  std::mt19937_64 rng(1);
  const auto big = random_tree(rng, 9);
  EXPECT_THROW(smatch_oracle(big, big), ConfigError);
}

TEST(Smatch, CorpusIsMicroAveraged) {
  // sentence A: 1 matched of 2 predicted, 2 gold; B: 3 of 4, 4
  // micro: 4/6 each way -> 2/3 (the macro mean would be 0.625)
  const std::vector<AmrEntry> gold = {{"a", "", parse_penman("(a / x)")},
                                      {"b", "", parse_penman("(a / x :mod (b / y))")}};
  const std::vector<AmrEntry> pred = {{"a", "", parse_penman("(a / z)")},
                                      {"b", "", parse_penman("(a / x :mod (b / w))")}};
  const auto r = corpus_smatch(pred, gold);
  ASSERT_EQ(r.sentences.size(), 2u);
  EXPECT_EQ(r.sentences[0].score.matched, 1u);
  EXPECT_EQ(r.sentences[1].score.matched, 3u);
  EXPECT_EQ(r.total.matched, 4u);
  EXPECT_EQ(r.total.predicted_total, 6u);
  EXPECT_EQ(r.total.gold_total, 6u);
  EXPECT_NEAR(r.total.f1, 2.0 / 3.0, 1e-12);
}

TEST(Smatch, CorpusPrfByCounts) {
  const std::vector<AmrEntry> gold = {{"1", "", parse_penman("(a / x :mod (b / y))")},
                                      {"2", "", parse_penman("(a / x :mod (b / y) :ARG0 (c / z))")}};
  const std::vector<AmrEntry> pred = {{"1", "", parse_penman("(a / x :mod (b / q))")},
                                      {"2", "", parse_penman("(a / x)")}};
  const auto r = corpus_smatch(pred, gold);
  // 1: matched 3 (x, mod, top) of 4/4; 2: matched 2 (x, top) of 2 pred, 6 gold
  EXPECT_EQ(r.total.matched, 5u);
  EXPECT_EQ(r.total.predicted_total, 6u);
  EXPECT_EQ(r.total.gold_total, 10u);
  EXPECT_NEAR(r.total.precision, 5.0 / 6.0, 1e-12);
  EXPECT_NEAR(r.total.recall, 0.5, 1e-12);
}

TEST(Smatch, CorpusMismatches) {
  const std::vector<AmrEntry> one = {{"a", "", parse_penman("(a / x)")}};
  const std::vector<AmrEntry> other = {{"b", "", parse_penman("(a / x)")}};
  EXPECT_THROW(corpus_smatch(one, {}), FormatError);
  EXPECT_THROW(corpus_smatch(one, other), FormatError);
}

TEST(PairF1, WorkedExample) {
  const auto s = pair_f1({{"makan", "aku"}, {"makan", "kue"}, {"teras", "di"}}, {{"makan", "aku"}, {"makan", "kue"}});
  EXPECT_NEAR(s.precision, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(s.recall, 1.0, 1e-12);
  EXPECT_NEAR(s.f1, 0.8, 1e-12);
}

TEST(PairF1, DirectionalAndMultiset) {
  EXPECT_EQ(pair_f1({{"kue", "makan"}}, {{"makan", "kue"}}).matched, 0u);
  EXPECT_EQ(pair_f1({{"a", "b"}, {"a", "b"}}, {{"a", "b"}}).matched, 1u);
  EXPECT_EQ(pair_f1({}, {}).f1, 0.0);
}
