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

#include "gecomb/corpus.h"

#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "gecomb/error.h"
#include "test_util.h"

namespace gecomb {
namespace {

using testing::E;
using testing::S;

TEST(TokenSentenceTest, SplitsOnAsciiWhitespace) {
  const auto s = TokenSentence::parse("I like turtles very much .");
  EXPECT_EQ(s.size(), 6u);
  EXPECT_EQ(TokenSentence::parse("  a\tb \r c  ").tokens,
            (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(TokenSentence::parse(" \t ").empty());
}

TEST(TokenSentenceTest, JoinSplitRoundtrip) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    TokenSentence s{testing::random_tokens(rng, trial % 30, 2 + trial % 40)};
    EXPECT_EQ(TokenSentence::parse(s.str()), s);
  }
}

TEST(ParseM2Test, SingleEdit) {
  const auto corpus = parse_m2(
      "S I likes turtles\n"
      "A 1 2|||V|||like|||REQUIRED|||-NONE-|||0\n");
  ASSERT_EQ(corpus.size(), 1u);
  EXPECT_EQ(corpus[0].source, S("I likes turtles"));
  ASSERT_EQ(corpus[0].annotations.size(), 1u);
  EXPECT_EQ(corpus[0].annotations[0].annotator, 0);
  EXPECT_EQ(corpus[0].annotations[0].edits, std::vector<Edit>{E(1, 2, "like")});
}

TEST(ParseM2Test, NoAnnotationLinesMeansOneEmptySet) {
  const auto corpus = parse_m2("S a b\n\n");
  ASSERT_EQ(corpus.size(), 1u);
  ASSERT_EQ(corpus[0].annotations.size(), 1u);
  EXPECT_EQ(corpus[0].annotations[0].annotator, 0);
  EXPECT_TRUE(corpus[0].annotations[0].edits.empty());
}

TEST(ParseM2Test, NoopGivesExplicitEmptySet) {
  const auto corpus = parse_m2(
      "S I likes turtles\n"
      "A 1 2|||V|||like|||REQUIRED|||-NONE-|||0\n"
      "A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||1\n");
  ASSERT_EQ(corpus[0].annotations.size(), 2u);
  EXPECT_EQ(corpus[0].annotations[1].annotator, 1);
  EXPECT_TRUE(corpus[0].annotations[1].edits.empty());
}

TEST(ParseM2Test, DeletionsInsertionsAndSorting) {
  const auto corpus = parse_m2(
      "S a b c d\n"
      "A 3 3|||M|||x y|||REQUIRED|||-NONE-|||0\n"
      "A 1 2|||U||||||REQUIRED|||-NONE-|||0\n"
      "A 0 1|||U|||-NONE-|||REQUIRED|||-NONE-|||0\n"
      "\n"
      "S e\n"
      "\n");
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus[0].annotations[0].edits,
            (std::vector<Edit>{E(0, 1), E(1, 2), E(3, 3, "x y")}));
}

TEST(ParseM2Test, AnnotatorsMentionedNowhereGetNoSet) {
  const auto corpus = parse_m2(
      "S a b\n"
      "A 0 1|||X|||c|||REQUIRED|||-NONE-|||2\n");
  ASSERT_EQ(corpus[0].annotations.size(), 1u);
  EXPECT_EQ(corpus[0].annotations[0].annotator, 2);
}

TEST(ParseM2Test, SameSpanFromDifferentAnnotatorsIsIndependent) {
  const auto corpus = parse_m2(
      "S a b\n"
      "A 0 1|||X|||c|||REQUIRED|||-NONE-|||0\n"
      "A 0 1|||X|||d|||REQUIRED|||-NONE-|||1\n");
  ASSERT_EQ(corpus[0].annotations.size(), 2u);
}

TEST(ParseM2Test, MalformedLineReportsLineNumber) {
  try {
    parse_m2("S a b\nA 0 1|||X|||c\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_m2("S a b\nX whatever\n"), ParseError);
  EXPECT_THROW(parse_m2("A 0 1|||X|||c|||REQUIRED|||-NONE-|||0\n"), ParseError);
  EXPECT_THROW(parse_m2("S a b\nA x 1|||X|||c|||REQUIRED|||-NONE-|||0\n"),
               ParseError);
  EXPECT_THROW(parse_m2("S a b\nA 0 1|||X|||c|||REQUIRED|||-NONE-|||zz\n"),
               ParseError);
}

TEST(ParseM2Test, OutOfBoundsSpanIsValidationError) {
  EXPECT_THROW(parse_m2("S a b\nA 1 3|||X|||c|||REQUIRED|||-NONE-|||0\n"),
               ValidationError);
  EXPECT_THROW(parse_m2("S a b\nA 2 1|||X|||c|||REQUIRED|||-NONE-|||0\n"),
               ValidationError);
}

TEST(ParseM2Test, OverlapWithinAnnotatorIsValidationError) {
  EXPECT_THROW(parse_m2("S a b c\n"
                        "A 0 2|||X|||d|||REQUIRED|||-NONE-|||0\n"
                        "A 1 3|||X|||e|||REQUIRED|||-NONE-|||0\n"),
               ValidationError);
  EXPECT_THROW(parse_m2("S a b c\n"
                        "A 1 1|||X|||d|||REQUIRED|||-NONE-|||0\n"
                        "A 1 1|||X|||e|||REQUIRED|||-NONE-|||0\n"),
               ValidationError);
}

TEST(ParseM2Test, NoOpEditIsValidationError) {
  EXPECT_THROW(parse_m2("S a b\nA 0 1|||X|||a|||REQUIRED|||-NONE-|||0\n"),
               ValidationError);
}

TEST(SerializeM2Test, EmptyCorpus) {
  EXPECT_EQ(serialize_m2({}), "");
}

TEST(SerializeM2Test, CanonicalText) {
  const std::string text =
      "S I likes turtles\n"
      "A 1 2|||UNK|||like|||REQUIRED|||-NONE-|||0\n"
      "A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||1\n"
      "\n"
      "S a b\n"
      "\n"
      "S a b c\n"
      "A 0 1|||UNK||||||REQUIRED|||-NONE-|||0\n"
      "\n";
  const auto corpus = parse_m2(text);
  EXPECT_EQ(serialize_m2(corpus), text);
}

TEST(SerializeM2Test, ExplicitEmptySetEmitsNoop) {
  GoldSentence g{S("a b"), {{0, {E(0, 1, "c")}}, {1, {}}}};
  const std::string text = serialize_m2(std::span(&g, 1));
  EXPECT_NE(text.find("A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||1\n"),
            std::string::npos);
  EXPECT_EQ(parse_m2(text).front(), g);
}

TEST(SerializeM2Test, RoundtripProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto gold = testing::random_gold(rng, 1 + trial % 6, 3);
    for (const auto& g : gold) validate_gold(g);
    const auto reparsed = parse_m2(serialize_m2(gold));
    ASSERT_EQ(reparsed, gold);
    EXPECT_EQ(serialize_m2(reparsed), serialize_m2(gold));
  }
}

TEST(ParallelTest, LoadsAlignedFile) {
  testing::TempDir dir("parallel");
  write_file_atomic(dir / "sys.txt", "I like turtles very much .\nb c\n");
  const auto output = load_parallel(dir / "sys.txt", 2);
  EXPECT_EQ(output.name, "sys");
  ASSERT_EQ(output.size(), 2u);
  EXPECT_EQ(output.sentences[0].size(), 6u);
}

TEST(ParallelTest, LengthMismatchNamesFileAndCounts) {
  testing::TempDir dir("parallel");
  write_file_atomic(dir / "sys.txt", "a\nb\nc\n");
  try {
    load_parallel(dir / "sys.txt", 2);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("sys.txt"), std::string::npos);
    EXPECT_NE(what.find("expected 2"), std::string::npos);
    EXPECT_NE(what.find("found 3"), std::string::npos);
  }
}

TEST(ParallelTest, EmptyLineIsError) {
  EXPECT_THROW(parse_parallel("a\n\nb\n", 3, "x"), ParseError);
}

TEST(ParallelTest, MissingFileIsIoError) {
  EXPECT_THROW(load_parallel("/nonexistent/gecomb/file.txt"), IoError);
}

TEST(ScoreFileTest, ParsesAndLooksUp) {
  const auto scores = parse_score_file(
      "system\tsentence_index\tscore\n"
      "t5\t0\t0.25\n"
      "t5\t1\t-1.5\n"
      "ul2\t0\t0.75\n");
  EXPECT_DOUBLE_EQ(scores.score("t5", 1), -1.5);
  EXPECT_DOUBLE_EQ(scores.score("ul2", 0), 0.75);
  EXPECT_THROW(scores.score("ul2", 1), ValidationError);
  EXPECT_EQ(parse_score_file(serialize_score_file(scores)).entries(),
            scores.entries());
}

TEST(ScoreFileTest, RejectsBadInput) {
  EXPECT_THROW(parse_score_file("sys\tidx\tscore\n"), ParseError);
  EXPECT_THROW(parse_score_file("system\tsentence_index\tscore\nt5\t0\n"),
               ParseError);
  EXPECT_THROW(parse_score_file("system\tsentence_index\tscore\nt5\t0\tx\n"),
               ParseError);
  EXPECT_THROW(parse_score_file("system\tsentence_index\tscore\n"
                                "t5\t0\t1\nt5\t0\t2\n"),
               ParseError);
}

TEST(WriteFileAtomicTest, ReplacesContent) {
  testing::TempDir dir("atomic");
  write_file_atomic(dir / "f.txt", "one");
  write_file_atomic(dir / "f.txt", "two");
  EXPECT_EQ(read_file(dir / "f.txt"), "two");
  std::size_t entries = 0;
  for (const auto& _ : std::filesystem::directory_iterator(dir.path())) {
    (void)_;
    ++entries;
  }
  EXPECT_EQ(entries, 1u);
  EXPECT_THROW(write_file_atomic(dir / "missing" / "f.txt", "x"), IoError);
}

}  // namespace
}  // namespace gecomb
