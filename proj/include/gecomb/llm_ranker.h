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

#ifndef GECOMB_LLM_RANKER_H_
#define GECOMB_LLM_RANKER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gecomb/chat_backend.h"
#include "gecomb/corpus.h"

namespace gecomb {

enum class PromptVariant {
  kTopCandidate,  // prompt-a: answer with the single best label
  kFullRanking,   // prompt-b: answer with every label, best first
};

/// Wording around the fixed ORIGINAL/EDITED block. The defaults are our own;
/// every field can be overridden.
struct PromptTemplate {
  std::string system_message =
      "You are a writing assistant that evaluates grammatical error "
      "corrections.";
  std::string task_description =
      "Below is an original text and several edited versions of it. Judge "
      "which edited versions correct the grammatical errors of the original "
      "best while preserving its meaning.";
  std::string top_candidate_instruction =
      "Respond with the label of the best edited version only.";
  std::string full_ranking_instruction =
      "Respond with the labels of all edited versions, ordered from best to "
      "worst and separated by spaces.";
};

struct RankPrompt {
  PromptVariant variant = PromptVariant::kTopCandidate;
  TokenSentence original;
  /// Label k is 'A' + k; labeled[k] is the candidate shown under it.
  std::vector<Candidate> labeled;
  /// labeled[k] came from input candidate candidate_index[k].
  std::vector<std::size_t> candidate_index;
  std::string system_message;
  std::string text;

  std::vector<char> labels() const;
};

/// Shuffles candidates with a permutation drawn from `seed` (identity when
/// `shuffle` is false) and renders the prompt. Needs 2..26 candidates.
RankPrompt build_prompt(PromptVariant variant, const TokenSentence& source,
                        std::span<const Candidate> candidates,
                        std::uint64_t seed, bool shuffle = true,
                        const PromptTemplate& tmpl = {});

struct RankResponse {
  PromptVariant variant = PromptVariant::kTopCandidate;
  std::string raw;
  /// Single label for prompt-a; full order for prompt-b.
  std::vector<char> ranking;
  bool fallback = false;

  char top() const { return ranking.front(); }
};

/// Prompt-a: first standalone issued label. Prompt-b: longest run of
/// whitespace-separated issued labels, which must be a permutation of them.
/// Anything else falls back to 'A' (a) or the issued order (b), flagged.
RankResponse parse_response(std::string_view response, const RankPrompt& prompt);

struct LlmRankOptions {
  PromptVariant variant = PromptVariant::kTopCandidate;
  /// One seed per run; the number of runs is seeds.size().
  std::vector<std::uint64_t> seeds;
  bool shuffle = true;
  double temperature = 1.0;
  RetryPolicy retry;
  std::size_t jobs = 1;
  PromptTemplate prompt;
};

/// Per-run seeds split off one master seed.
std::vector<std::uint64_t> derive_run_seeds(std::uint64_t seed,
                                            std::size_t runs);

struct LlmRankDecision {
  std::size_t sentence = 0;
  char label = 'A';
  std::string system;
  std::string order;  // labels mapped to systems, e.g. "A=t5,B=ul2"
  std::string raw_response;
  bool fallback = false;
  std::string note;
};

struct LlmRankRun {
  std::uint64_t seed = 0;
  SystemOutput output;
  std::vector<LlmRankDecision> decisions;

  std::size_t fallbacks() const;
};

/// One ranked output per seed. A sentence whose request still fails after
/// retries, or whose answer cannot be parsed, takes label A and is flagged.
std::vector<LlmRankRun> llm_rank_corpus(std::span<const TokenSentence> sources,
                                        std::span<const SystemOutput> outputs,
                                        const LlmRankOptions& options,
                                        ChatBackend& backend,
                                        const SleepFn& sleep = {});

/// TSV audit log of a run.
std::string format_llm_log(const LlmRankRun& run);

}  // namespace gecomb

#endif  // GECOMB_LLM_RANKER_H_
