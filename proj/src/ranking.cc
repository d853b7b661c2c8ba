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

#include <algorithm>
#include <cmath>
#include <map>

#include "gecomb/alignment.h"
#include "gecomb/error.h"
#include "gecomb/parallel.h"

namespace gecomb {
namespace {

void check_scores(std::span<const Candidate> candidates,
                  std::span<const double> scores) {
  if (candidates.empty()) throw ValidationError("no candidates to rank");
  if (scores.size() != candidates.size()) {
    throw ValidationError("got " + std::to_string(scores.size()) +
                          " scores for " + std::to_string(candidates.size()) +
                          " candidates");
  }
  for (double s : scores) {
    if (std::isnan(s)) throw ValidationError("NaN candidate score");
  }
}

std::size_t argmax(std::span<const Candidate> candidates,
                   std::span<const double> scores) {
  std::size_t best = 0;
  std::string best_text = candidates[0].sentence.str();
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    if (scores[k] < scores[best]) continue;
    std::string text = candidates[k].sentence.str();
    if (scores[k] > scores[best] || text < best_text) {
      best = k;
      best_text = std::move(text);
    }
  }
  return best;
}

}  // namespace

RankResult rank_by_score(std::span<const Candidate> candidates,
                         std::span<const double> scores) {
  check_scores(candidates, scores);
  const std::size_t best = argmax(candidates, scores);
  return {best, candidates[best]};
}

std::vector<double> frequency_weights(std::span<const std::size_t> frequencies) {
  const std::size_t max_frequency =
      frequencies.empty()
          ? 0
          : *std::max_element(frequencies.begin(), frequencies.end());
  std::vector<double> weights;
  weights.reserve(frequencies.size());
  for (std::size_t n : frequencies) {
    if (n == 0) throw ValidationError("output frequency must be at least 1");
    weights.push_back(static_cast<double>(n) /
                      static_cast<double>(max_frequency));
  }
  return weights;
}

std::vector<WeightedCandidate> weigh_candidates(
    std::span<const Candidate> candidates, std::span<const double> scores) {
  check_scores(candidates, scores);
  std::map<TokenSentence, std::size_t> frequency;
  for (const auto& c : candidates) ++frequency[c.sentence];

  std::vector<std::size_t> counts;
  counts.reserve(candidates.size());
  for (const auto& c : candidates) counts.push_back(frequency[c.sentence]);
  const auto weights = frequency_weights(counts);

  std::vector<WeightedCandidate> weighted;
  weighted.reserve(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    weighted.push_back({candidates[k].system, candidates[k].sentence, scores[k],
                        counts[k], weights[k], scores[k] * weights[k]});
  }
  return weighted;
}

RankResult rank_weighted(std::span<const Candidate> candidates,
                         std::span<const double> scores) {
  const auto weighted = weigh_candidates(candidates, scores);
  std::vector<double> adjusted;
  adjusted.reserve(weighted.size());
  for (const auto& w : weighted) adjusted.push_back(w.weighted_score);
  const std::size_t best = argmax(candidates, adjusted);
  return {best, candidates[best]};
}

const TokenSentence& aggr_rank(const TokenSentence& primary,
                               const TokenSentence& alternative,
                               const TokenSentence& source) {
  const std::size_t primary_spans = extract_edits(source, primary).size();
  const std::size_t alternative_spans =
      extract_edits(source, alternative).size();
  if (primary_spans < alternative_spans && primary_spans >= 1) return primary;
  return alternative;
}

SystemOutput rank_corpus(std::span<const SystemOutput> outputs,
                         const ScoreFile& scores, bool weighted,
                         std::size_t jobs) {
  if (outputs.empty()) throw ValidationError("no systems to rank");
  const std::size_t length = outputs.front().size();
  check_aligned(outputs, length);

  SystemOutput result;
  result.name = weighted ? "rank-w[" : "rank[";
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    if (k > 0) result.name += ',';
    result.name += outputs[k].name;
  }
  result.name += ']';
  result.sentences.resize(length);
  parallel_for(length, jobs, [&](std::size_t i) {
    const auto candidates = candidates_at(outputs, i);
    std::vector<double> candidate_scores;
    candidate_scores.reserve(candidates.size());
    for (const auto& c : candidates) {
      candidate_scores.push_back(scores.score(c.system, i));
    }
    auto chosen = weighted ? rank_weighted(candidates, candidate_scores)
                           : rank_by_score(candidates, candidate_scores);
    result.sentences[i] = std::move(chosen.candidate.sentence);
  });
  return result;
}

SystemOutput aggr_rank_corpus(std::span<const TokenSentence> sources,
                              const SystemOutput& primary,
                              const SystemOutput& alternative) {
  check_aligned(std::span(&primary, 1), sources.size());
  check_aligned(std::span(&alternative, 1), sources.size());
  SystemOutput result;
  result.name = "aggr-rank[" + primary.name + "," + alternative.name + "]";
  result.sentences.reserve(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    result.sentences.push_back(aggr_rank(primary.sentences[i],
                                         alternative.sentences[i], sources[i]));
  }
  return result;
}

}  // namespace gecomb
