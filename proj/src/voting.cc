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

#include "gecomb/voting.h"

#include <algorithm>
#include <map>
#include <tuple>

#include "gecomb/alignment.h"
#include "gecomb/error.h"
#include "gecomb/parallel.h"

namespace gecomb {

std::vector<VotedEdit> pool_edits(const TokenSentence& source,
                                  std::span<const Candidate> outputs) {
  std::map<Edit, VotedEdit> pool;
  for (const auto& output : outputs) {
    for (auto& edit : extract_edits(source, output.sentence)) {
      auto& voted = pool[edit];
      voted.edit = std::move(edit);
      ++voted.votes;
      voted.proposers.push_back(output.system);
    }
  }
  std::vector<VotedEdit> result;
  result.reserve(pool.size());
  for (auto& [_, voted] : pool) result.push_back(std::move(voted));
  return result;
}

std::vector<VotedEdit> filter_votes(std::span<const VotedEdit> pool,
                                    std::size_t n_min) {
  std::vector<VotedEdit> kept;
  for (const auto& voted : pool) {
    if (voted.votes > n_min) kept.push_back(voted);
  }
  return kept;
}

std::vector<Edit> resolve_overlaps(std::span<const VotedEdit> filtered) {
  std::vector<const VotedEdit*> order;
  order.reserve(filtered.size());
  for (const auto& voted : filtered) order.push_back(&voted);
  std::sort(order.begin(), order.end(),
            [](const VotedEdit* a, const VotedEdit* b) {
              if (a->votes != b->votes) return a->votes > b->votes;
              return a->edit < b->edit;
            });

  std::vector<Edit> applied;
  for (const VotedEdit* voted : order) {
    const bool conflict =
        std::any_of(applied.begin(), applied.end(),
                    [&](const Edit& e) { return overlaps(e, voted->edit); });
    if (!conflict) applied.push_back(voted->edit);
  }
  return applied;
}

TokenSentence majority_vote(const TokenSentence& source,
                            std::span<const Candidate> outputs,
                            std::size_t n_min) {
  if (n_min > outputs.size()) {
    throw ValidationError("n_min " + std::to_string(n_min) +
                          " exceeds the number of systems " +
                          std::to_string(outputs.size()));
  }
  const auto pool = pool_edits(source, outputs);
  const auto applied = resolve_overlaps(filter_votes(pool, n_min));
  return apply_edits(source, applied);
}

SystemOutput majority_vote_corpus(std::span<const TokenSentence> sources,
                                  std::span<const SystemOutput> outputs,
                                  std::size_t n_min, std::size_t jobs) {
  if (outputs.empty()) throw ValidationError("no systems to ensemble");
  if (n_min > outputs.size()) {
    throw ValidationError("n_min " + std::to_string(n_min) +
                          " exceeds the number of systems " +
                          std::to_string(outputs.size()));
  }
  check_aligned(outputs, sources.size());

  SystemOutput result;
  result.name = "majority-voting[";
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    if (k > 0) result.name += ',';
    result.name += outputs[k].name;
  }
  result.name += "](n_min=" + std::to_string(n_min) + ")";
  result.sentences.resize(sources.size());
  parallel_for(sources.size(), jobs, [&](std::size_t i) {
    const auto candidates = candidates_at(outputs, i);
    result.sentences[i] = majority_vote(sources[i], candidates, n_min);
  });
  return result;
}

}  // namespace gecomb
