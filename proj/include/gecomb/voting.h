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

#ifndef GECOMB_VOTING_H_
#define GECOMB_VOTING_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gecomb/corpus.h"

namespace gecomb {

/// An edit together with the systems that proposed it.
struct VotedEdit {
  Edit edit;
  std::size_t votes = 0;
  std::vector<std::string> proposers;

  bool operator==(const VotedEdit&) const = default;
};

/// Extracts every output's edits against `source` and counts how many outputs
/// propose each distinct (start, end, replacement). Sorted by edit.
std::vector<VotedEdit> pool_edits(const TokenSentence& source,
                                  std::span<const Candidate> outputs);

/// Keeps edits with votes strictly greater than `n_min`.
std::vector<VotedEdit> filter_votes(std::span<const VotedEdit> pool,
                                    std::size_t n_min);

/// Application order: more votes first, then lower start, lower end, smaller
/// replacement. Edits overlapping an earlier accepted edit are dropped.
std::vector<Edit> resolve_overlaps(std::span<const VotedEdit> filtered);

/// Majority-vote ensemble of one sentence. Requires n_min <= outputs.size().
TokenSentence majority_vote(const TokenSentence& source,
                            std::span<const Candidate> outputs,
                            std::size_t n_min);

/// Sentence-wise majority_vote. The same routine combines ensemble outputs
/// (second-order voting). `jobs` = 0 uses all cores; output order is input
/// order regardless.
SystemOutput majority_vote_corpus(std::span<const TokenSentence> sources,
                                  std::span<const SystemOutput> outputs,
                                  std::size_t n_min, std::size_t jobs = 1);

}  // namespace gecomb

#endif  // GECOMB_VOTING_H_
