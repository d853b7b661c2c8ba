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

#include "gecomb/alignment.h"

#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

#include "gecomb/error.h"
#include "test_util.h"

namespace gecomb {
namespace {

using testing::E;
using testing::S;

// Every alignment of source against target, as (cost, merged edit list).
// Exponential; only for short sentences.
std::vector<std::pair<std::size_t, std::vector<Edit>>> enumerate_alignments(
    const TokenSentence& source, const TokenSentence& target) {
  struct Step {
    bool match;
    std::size_t i;
    std::size_t j;
    std::size_t di;
    std::size_t dj;
  };
  std::vector<std::pair<std::size_t, std::vector<Edit>>> all;
  std::vector<Step> path;
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t i,
                                                           std::size_t j) {
    if (i == source.size() && j == target.size()) {
      std::size_t cost = 0;
      std::vector<Edit> edits;
      bool open = false;
      for (const auto& step : path) {
        if (step.match) {
          open = false;
          continue;
        }
        ++cost;
        if (!open) edits.push_back({step.i, step.i, {}});
        open = true;
        edits.back().end = step.i + step.di;
        if (step.dj) edits.back().replacement.push_back(target.tokens[step.j]);
      }
      all.emplace_back(cost, edits);
      return;
    }
    if (i < source.size() && j < target.size()) {
      const bool same = source.tokens[i] == target.tokens[j];
      path.push_back({same, i, j, 1, 1});
      walk(i + 1, j + 1);
      path.pop_back();
    }
    if (i < source.size()) {
      path.push_back({false, i, j, 1, 0});
      walk(i + 1, j);
      path.pop_back();
    }
    if (j < target.size()) {
      path.push_back({false, i, j, 0, 1});
      walk(i, j + 1);
      path.pop_back();
    }
  };
  walk(0, 0);
  return all;
}

std::set<std::vector<Edit>> optimal_edit_sets(const TokenSentence& source,
                                              const TokenSentence& target,
                                              std::size_t* min_cost = nullptr) {
  const auto all = enumerate_alignments(source, target);
  std::size_t best = SIZE_MAX;
  for (const auto& [cost, _] : all) best = std::min(best, cost);
  std::set<std::vector<Edit>> sets;
  for (const auto& [cost, edits] : all) {
    if (cost == best) sets.insert(edits);
  }
  if (min_cost) *min_cost = best;
  return sets;
}

TEST(ExtractEditsTest, SingleSubstitution) {
  EXPECT_EQ(extract_edits(S("I likes turtles very much ."),
                          S("I like turtles very much .")),
            std::vector<Edit>{E(1, 2, "like")});
}

TEST(ExtractEditsTest, IdenticalSentencesGiveNoEdits) {
  EXPECT_TRUE(extract_edits(S("a b c"), S("a b c")).empty());
}

TEST(ExtractEditsTest, MergedSubstituteAndInsert) {
  const auto source = S("a b c");
  const auto hyp = S("a x y c");
  EXPECT_EQ(extract_edits(source, hyp), std::vector<Edit>{E(1, 2, "x y")});

  // Brute force: every optimal alignment merges to the same edit list.
  std::size_t cost = 0;
  const auto sets = optimal_edit_sets(source, hyp, &cost);
  EXPECT_EQ(cost, 2u);
  ASSERT_EQ(sets.size(), 1u);
  EXPECT_EQ(*sets.begin(), std::vector<Edit>{E(1, 2, "x y")});
}

TEST(ExtractEditsTest, EmptyHypothesisDeletesEverything) {
  EXPECT_EQ(extract_edits(S("a b"), TokenSentence{}),
            std::vector<Edit>{E(0, 2)});
}

TEST(ExtractEditsTest, TieBreakPrefersLeftmostDeletionOfRepeatedToken) {
  // Traceback from the bottom-right matches the later "b", so the earlier one
  // is deleted.
  EXPECT_EQ(extract_edits(S("a b b c"), S("a b c")), std::vector<Edit>{E(1, 2)});
}

TEST(ExtractEditsTest, OptimalAgainstBruteForce) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t alphabet = 2 + trial % 3;
    TokenSentence source{testing::random_tokens(rng, 1 + trial % 5, alphabet)};
    TokenSentence hyp{testing::random_tokens(rng, trial % 6, alphabet)};
    const auto edits = extract_edits(source, hyp);
    const auto sets = optimal_edit_sets(source, hyp);
    EXPECT_EQ(sets.count(edits), 1u)
        << source.str() << " -> " << hyp.str();
  }
}

TEST(ExtractEditsTest, RoundtripNonOverlapNoNoOpDeterminism) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t alphabet = 2 + trial % 49;
    TokenSentence source{testing::random_tokens(rng, 1 + trial % 40, alphabet)};
    TokenSentence hyp{testing::random_tokens(rng, trial % 41, alphabet)};
    const auto edits = extract_edits(source, hyp);
    ASSERT_EQ(apply_edits(source, edits), hyp);
    ASSERT_FALSE(any_overlap(edits));
    ASSERT_TRUE(std::is_sorted(edits.begin(), edits.end()));
    for (const auto& e : edits) ASSERT_NO_THROW(validate_edit(e, source));
    ASSERT_EQ(extract_edits(source, hyp), edits);
  }
}

TEST(AlignTest, OpsAreConsistentWithKinds) {
  const auto source = S("a b c d");
  const auto target = S("a x c e f");
  const auto ops = align(source.tokens, target.tokens);
  std::size_t i = 0;
  std::size_t j = 0;
  for (const auto& op : ops) {
    EXPECT_EQ(op.source.start, i);
    EXPECT_EQ(op.target.start, j);
    switch (op.kind) {
      case OpKind::kMatch:
        EXPECT_EQ(source.tokens[i], target.tokens[j]);
        [[fallthrough]];
      case OpKind::kSubstitute:
        ++i;
        ++j;
        break;
      case OpKind::kDelete:
        ++i;
        break;
      case OpKind::kInsert:
        ++j;
        break;
    }
    EXPECT_EQ(op.source.end, i);
    EXPECT_EQ(op.target.end, j);
  }
  EXPECT_EQ(i, source.size());
  EXPECT_EQ(j, target.size());
}

TEST(ApplyEditsTest, Examples) {
  const std::vector<Edit> like = {E(1, 2, "like")};
  EXPECT_EQ(apply_edits(S("I likes turtles"), like), S("I like turtles"));
  EXPECT_EQ(apply_edits(S("a b c"), std::vector<Edit>{}), S("a b c"));
  const std::vector<Edit> dot = {E(3, 3, ".")};
  EXPECT_EQ(apply_edits(S("a b c"), dot), S("a b c ."));
}

TEST(ApplyEditsTest, OrderIndependent) {
  const std::vector<Edit> forward = {E(0, 1, "x"), E(1, 1, "y"), E(2, 3)};
  const std::vector<Edit> backward = {E(2, 3), E(1, 1, "y"), E(0, 1, "x")};
  EXPECT_EQ(apply_edits(S("a b c"), forward), S("x y b"));
  EXPECT_EQ(apply_edits(S("a b c"), backward), S("x y b"));
}

TEST(ApplyEditsTest, RejectsOverlapAndOutOfBounds) {
  const std::vector<Edit> overlapping = {E(0, 2, "x"), E(1, 3, "y")};
  EXPECT_THROW(apply_edits(S("a b c"), overlapping), ValidationError);
  const std::vector<Edit> swallowed = {E(0, 3, "x"), E(1, 2, "y")};
  EXPECT_THROW(apply_edits(S("a b c"), swallowed), ValidationError);
  const std::vector<Edit> out_of_bounds = {E(2, 4, "x")};
  EXPECT_THROW(apply_edits(S("a b c"), out_of_bounds), ValidationError);
}

TEST(OverlapsTest, TruthTable) {
  EXPECT_TRUE(overlaps(E(1, 3, "x"), E(2, 4, "y")));
  EXPECT_FALSE(overlaps(E(1, 2, "x"), E(2, 3, "y")));
  EXPECT_TRUE(overlaps(E(2, 2, "x"), E(2, 2, "y")));
  EXPECT_TRUE(overlaps(E(2, 2, "x"), E(2, 3, "y")));
  EXPECT_FALSE(overlaps(E(2, 2, "x"), E(1, 2, "y")));
  // Insertion strictly inside a span.
  EXPECT_TRUE(overlaps(E(2, 2, "x"), E(1, 3, "y")));
}

// Applies edits right to left in the given order for equal starts, splicing
// directly into the token vector. Order-sensitive when edits interfere.
TokenSentence splice(const TokenSentence& source, std::vector<Edit> edits) {
  std::stable_sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) {
    return a.start > b.start;
  });
  auto tokens = source.tokens;
  for (const auto& e : edits) {
    tokens.erase(tokens.begin() + e.start, tokens.begin() + e.end);
    tokens.insert(tokens.begin() + e.start, e.replacement.begin(),
                  e.replacement.end());
  }
  return TokenSentence{tokens};
}

TEST(OverlapsTest, SymmetricAndCoversOrderSensitivePairs) {
  const auto source = S("a b c d e");
  std::vector<Edit> all;
  for (std::size_t s = 0; s <= source.size(); ++s) {
    for (std::size_t e = s; e <= source.size() && e <= s + 2; ++e) {
      all.push_back({s, e, {"X"}});
      if (e > s) all.push_back({s, e, {}});
    }
  }
  for (const auto& a : all) {
    for (const auto& b : all) {
      if (a == b) continue;
      ASSERT_EQ(overlaps(a, b), overlaps(b, a));
      const bool order_sensitive =
          splice(source, {a, b}) != splice(source, {b, a});
      if (order_sensitive) {
        EXPECT_TRUE(overlaps(a, b)) << to_string(a) << " " << to_string(b);
      }
      if (!overlaps(a, b)) {
        const std::vector<Edit> pair = {a, b};
        EXPECT_EQ(apply_edits(source, pair), splice(source, {a, b}));
      }
    }
  }
}

}  // namespace
}  // namespace gecomb
