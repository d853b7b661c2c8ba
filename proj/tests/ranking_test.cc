// Copyright 2026 The gecomb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gecomb/ranking.h"

#include <gtest/gtest.h>

#include <random>

#include "gecomb/error.h"
#include "test_util.h"

namespace gecomb {
namespace {

using testing::S;

std::vector<Candidate> cands(const std::vector<std::string>& texts) {
  std::vector<Candidate> out;
  for (std::size_t k = 0; k < texts.size(); ++k) {
    out.push_back({"sys" + std::to_string(k), S(texts[k])});
  }
  return out;
}

TEST(RankByScoreTest, Argmax) {
  const auto c = cands({"a", "b", "c"});
  const std::vector<double> scores = {0.2, 0.9, 0.5};
  EXPECT_EQ(rank_by_score(c, scores).index, 1u);
}

TEST(RankByScoreTest, TieGoesToSmallestSentenceThenInputOrder) {
  const std::vector<double> equal = {0.5, 0.5, 0.5};
  EXPECT_EQ(rank_by_score(cands({"c", "a", "b"}), equal).index, 1u);
  EXPECT_EQ(rank_by_score(cands({"a", "a", "a"}), equal).index, 0u);
}

TEST(RankByScoreTest, SingleCandidate) {
  const std::vector<double> scores = {-3.0};
  EXPECT_EQ(rank_by_score(cands({"x"}), scores).candidate.sentence, S("x"));
}

TEST(RankByScoreTest, Errors) {
  const std::vector<double> one = {1.0};
  EXPECT_THROW(rank_by_score(cands({"a", "b"}), one), ValidationError);
  const std::vector<double> nan = {1.0, std::nan("")};
  EXPECT_THROW(rank_by_score(cands({"a", "b"}), nan), ValidationError);
  EXPECT_THROW(rank_by_score({}, {}), ValidationError);
}

TEST(FrequencyWeightsTest, SpotValue) {
  const std::vector<std::size_t> freq = {3, 1, 2};
  const auto w = frequency_weights(freq);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0], 1.0);
  EXPECT_NEAR(w[1], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(w[2], 2.0 / 3.0, 1e-15);
}

TEST(FrequencyWeightsTest, ZeroFrequencyRejected) {
  const std::vector<std::size_t> freq = {1, 0};
  EXPECT_THROW(frequency_weights(freq), ValidationError);
}

TEST(RankWeightedTest, FrequencyOverturnsScore) {
  const auto c = cands({"x", "y", "y"});
  const std::vector<double> scores = {0.9, 0.8, 0.8};
  const auto w = weigh_candidates(c, scores);
  EXPECT_DOUBLE_EQ(w[0].weighted_score, 0.45);
  EXPECT_DOUBLE_EQ(w[1].weighted_score, 0.8);
  EXPECT_EQ(w[1].frequency, 2u);
  EXPECT_EQ(rank_weighted(c, scores).candidate.sentence, S("y"));
  EXPECT_EQ(rank_by_score(c, scores).candidate.sentence, S("x"));
}

TEST(RankWeightedTest, DistinctOutputsMatchPlainRanking) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + trial % 8;
    std::vector<Candidate> c;
    std::vector<double> scores;
    for (std::size_t k = 0; k < n; ++k) {
      c.push_back({"s", S("t" + std::to_string(k))});
      scores.push_back(trial % 5 == 0 ? std::round(u(rng) * 2) : u(rng));
    }
    EXPECT_EQ(rank_weighted(c, scores).index, rank_by_score(c, scores).index);
  }
}

TEST(RankWeightedTest, WeightBounds) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Candidate> c;
    std::vector<double> scores;
    for (int k = 0; k < 6; ++k) {
      c.push_back({"s", S("t" + std::to_string(rng() % 3))});
      scores.push_back(double(rng() % 100) / 100.0);
    }
    const auto w = weigh_candidates(c, scores);
    bool any_one = false;
    for (const auto& x : w) {
      EXPECT_GT(x.weight, 0.0);
      EXPECT_LE(x.weight, 1.0);
      any_one = any_one || x.weight == 1.0;
    }
    EXPECT_TRUE(any_one);
  }
}

TEST(RankWeightedTest, InvariantUnderPositiveScaling) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Candidate> c;
    std::vector<double> scores, scaled;
    for (int k = 0; k < 5; ++k) {
      c.push_back({"s", S("t" + std::to_string(rng() % 3))});
      scores.push_back(double(rng() % 1000) / 1000.0);
      scaled.push_back(scores.back() * 4.0);
    }
    EXPECT_EQ(rank_weighted(c, scores).index, rank_weighted(c, scaled).index);
  }
}

TEST(AggrRankTest, TruthTable) {
  const auto source = S("a b c d e f");
  const auto one = S("x b c d e f");        // 1 span
  const auto two = S("x b y d e f");        // 2 spans
  const auto three = S("x b y d z f");      // 3 spans
  // e_p < e_a and e_p >= 1
  EXPECT_EQ(&aggr_rank(one, three, source), &one);
  // e_p < e_a, e_p = 0
  EXPECT_EQ(&aggr_rank(source, three, source), &three);
  // e_p = e_a
  EXPECT_EQ(&aggr_rank(two, two, source), &two);
  const auto two_other = S("a q c r e f");
  EXPECT_EQ(&aggr_rank(two, two_other, source), &two_other);
  // e_p > e_a
  EXPECT_EQ(&aggr_rank(three, one, source), &one);
  // both trivial
  const auto same = source;
  EXPECT_EQ(&aggr_rank(source, same, source), &same);
}

TEST(RankCorpusTest, UsesScoreFile) {
  const std::vector<SystemOutput> outs = {{"a", {S("x"), S("p")}},
                                          {"b", {S("y"), S("p")}},
                                          {"c", {S("z"), S("q")}}};
  ScoreFile scores;
  scores.add("a", 0, 0.9);
  scores.add("b", 0, 0.5);
  scores.add("c", 0, 0.6);
  scores.add("a", 1, 0.5);
  scores.add("b", 1, 0.5);
  scores.add("c", 1, 0.7);
  EXPECT_EQ(rank_corpus(outs, scores, false).sentences,
            (std::vector<TokenSentence>{S("x"), S("q")}));
  EXPECT_EQ(rank_corpus(outs, scores, true).sentences,
            (std::vector<TokenSentence>{S("x"), S("p")}));
  EXPECT_EQ(rank_corpus(outs, scores, true).name, "rank-w[a,b,c]");
}

TEST(RankCorpusTest, MissingScoreIsRejected) {
  const std::vector<SystemOutput> outs = {{"a", {S("x")}}, {"b", {S("y")}}};
  ScoreFile scores;
  scores.add("a", 0, 0.9);
  EXPECT_THROW(rank_corpus(outs, scores, false), ValidationError);
}

TEST(AggrRankCorpusTest, PerSentence) {
  const std::vector<TokenSentence> sources = {S("a b c"), S("a b c")};
  const SystemOutput primary{"p", {S("x b c"), S("a b c")}};
  // Adjacent substitutions merge into one span, so "x b z" is the two-span
  // alternative.
  const SystemOutput alternative{"q", {S("x b z"), S("x b z")}};
  const auto out = aggr_rank_corpus(sources, primary, alternative);
  EXPECT_EQ(out.sentences, (std::vector<TokenSentence>{S("x b c"), S("x b z")}));
}

}  // namespace
}  // namespace gecomb
