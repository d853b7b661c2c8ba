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

#ifndef GECOMB_SCORING_H_
#define GECOMB_SCORING_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gecomb/corpus.h"

namespace gecomb {

struct SentenceCounts {
  std::size_t n_correct = 0;
  std::size_t n_proposed = 0;
  std::size_t n_gold = 0;

  SentenceCounts& operator+=(const SentenceCounts& other) {
    n_correct += other.n_correct;
    n_proposed += other.n_proposed;
    n_gold += other.n_gold;
    return *this;
  }
  bool operator==(const SentenceCounts&) const = default;
};

inline SentenceCounts operator+(SentenceCounts a, const SentenceCounts& b) {
  return a += b;
}

/// (1 + beta^2) p r / (beta^2 p + r), and 0 when p * r == 0.
double f_beta(double precision, double recall, double beta);

/// n_correct / n_proposed, 1.0 when nothing was proposed.
double precision_of(const SentenceCounts& counts);
/// n_correct / n_gold, 1.0 when there is nothing to find.
double recall_of(const SentenceCounts& counts);
double f05_of(const SentenceCounts& counts);

/// Exact (start, end, replacement) matches between two edit sets.
SentenceCounts sentence_counts(std::span<const Edit> hypothesis,
                               std::span<const Edit> gold);

struct SentenceScore {
  int annotator = 0;
  SentenceCounts counts;

  bool operator==(const SentenceScore&) const = default;
};

struct ScoreReport {
  double precision = 1.0;
  double recall = 1.0;
  double f05 = 0.0;
  SentenceCounts totals;
  std::vector<SentenceScore> per_sentence;
};

/// MaxMatch-style corpus scoring over pre-extracted hypothesis edits. Walks
/// the corpus in order; for each sentence picks the annotator maximizing the
/// running-total (f05, n_correct, -n_proposed), lowest id on ties.
ScoreReport score_edits(std::span<const std::vector<Edit>> hypothesis_edits,
                        std::span<const GoldSentence> gold);

/// Extracts edits of each hypothesis sentence against its gold source, then
/// scores with score_edits. Throws ValidationError on length mismatch.
ScoreReport score_corpus(const SystemOutput& hypothesis,
                         std::span<const GoldSentence> gold);

/// x * 100 rounded half-up to one decimal, as printed in result tables.
double round_percent(double fraction);
std::string format_percent(double fraction);

/// "P  R  F0.5  n_correct  n_proposed  n_gold" table.
std::string format_report_table(const ScoreReport& report);
/// Header line for format_report_tsv rows.
std::string report_tsv_header();
std::string format_report_tsv(const std::string& system,
                              const ScoreReport& report);

}  // namespace gecomb

#endif  // GECOMB_SCORING_H_
