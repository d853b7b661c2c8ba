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

#ifndef GECOMB_RANKING_H_
#define GECOMB_RANKING_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gecomb/corpus.h"

namespace gecomb {

struct WeightedCandidate {
  std::string system;
  TokenSentence sentence;
  double raw_score = 0.0;
  std::size_t frequency = 1;  // candidates with this exact sentence
  double weight = 1.0;        // frequency / max frequency
  double weighted_score = 0.0;
};

struct RankResult {
  std::size_t index = 0;
  Candidate candidate;
};

/// Highest score wins; ties go to the lexicographically smallest sentence,
/// then to input order. Throws ValidationError if scores and candidates
/// differ in number, on NaN, or when there are no candidates.
RankResult rank_by_score(std::span<const Candidate> candidates,
                         std::span<const double> scores);

/// w_j = n_j / max_k n_k for each frequency.
std::vector<double> frequency_weights(std::span<const std::size_t> frequencies);

/// Groups candidates by exact sentence and scales scores by output frequency.
std::vector<WeightedCandidate> weigh_candidates(
    std::span<const Candidate> candidates, std::span<const double> scores);

/// rank_by_score over frequency-weighted scores.
RankResult rank_weighted(std::span<const Candidate> candidates,
                         std::span<const double> scores);

/// Prefers `primary` only when it edits strictly fewer spans than
/// `alternative` and edits at least one.
const TokenSentence& aggr_rank(const TokenSentence& primary,
                               const TokenSentence& alternative,
                               const TokenSentence& source);

/// Score-file driven ranking of a corpus. Scores are looked up by
/// (output name, sentence index).
SystemOutput rank_corpus(std::span<const SystemOutput> outputs,
                         const ScoreFile& scores, bool weighted,
                         std::size_t jobs = 1);

SystemOutput aggr_rank_corpus(std::span<const TokenSentence> sources,
                              const SystemOutput& primary,
                              const SystemOutput& alternative);

}  // namespace gecomb

#endif  // GECOMB_RANKING_H_
