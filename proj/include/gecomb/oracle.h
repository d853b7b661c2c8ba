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

#ifndef GECOMB_ORACLE_H_
#define GECOMB_ORACLE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gecomb/corpus.h"

namespace gecomb {

/// Audit record of one oracle decision. For ensembling `selected` holds the
/// applied edits (all from `annotator`'s set); for ranking `system` names the
/// chosen candidate and `selected` its edits.
struct OracleChoice {
  std::size_t sentence = 0;
  int annotator = 0;
  std::vector<Edit> selected;
  std::string system;
};

struct OracleEnsembleResult {
  TokenSentence sentence;
  int annotator = 0;
  std::vector<Edit> selected;
};

/// Pools all outputs' edits, intersects the pool with each annotation and
/// applies the largest intersection (lowest annotator id on ties).
OracleEnsembleResult oracle_ensemble(const TokenSentence& source,
                                     std::span<const Candidate> outputs,
                                     const GoldSentence& gold);

/// Sentence-level quality of a candidate against its best annotation.
struct CandidateKey {
  double f05 = 0.0;
  std::size_t n_correct = 0;
  std::size_t n_proposed = 0;
  int annotator = 0;
};

/// Key of `hypothesis` under the best annotation by (+f05, +n_correct,
/// -n_proposed), lowest annotator id on ties.
CandidateKey candidate_key(const TokenSentence& hypothesis,
                           const GoldSentence& gold);

/// True if `a` ranks strictly above `b` by (+f05, +n_correct, -n_proposed).
bool ranks_above(const CandidateKey& a, const CandidateKey& b);

struct OracleRankResult {
  std::size_t index = 0;
  Candidate candidate;
  CandidateKey key;
};

/// Picks the candidate with the best key; full ties keep input order.
OracleRankResult oracle_rank(const TokenSentence& source,
                             std::span<const Candidate> outputs,
                             const GoldSentence& gold);

struct OracleCorpusResult {
  SystemOutput output;
  std::vector<OracleChoice> choices;
};

OracleCorpusResult oracle_ensemble_corpus(std::span<const GoldSentence> gold,
                                          std::span<const SystemOutput> outputs,
                                          std::size_t jobs = 1);
OracleCorpusResult oracle_rank_corpus(std::span<const GoldSentence> gold,
                                      std::span<const SystemOutput> outputs,
                                      std::size_t jobs = 1);

/// TSV audit log: sentence_index, method, chosen annotator or system,
/// n_selected.
std::string format_oracle_log(std::span<const OracleChoice> choices,
                              const std::string& method);

}  // namespace gecomb

#endif  // GECOMB_ORACLE_H_
