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

#include "gecomb/llm_ranker.h"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "gecomb/error.h"
#include "gecomb/parallel.h"
#include "gecomb/rng.h"

namespace gecomb {
namespace {

bool is_issued(char c, std::size_t n_labels) {
  return c >= 'A' && c < static_cast<char>('A' + n_labels);
}

std::string strip_punctuation(std::string_view token) {
  std::size_t begin = 0;
  std::size_t end = token.size();
  while (begin < end && !std::isalnum(static_cast<unsigned char>(token[begin])))
    ++begin;
  while (end > begin && !std::isalnum(static_cast<unsigned char>(token[end - 1])))
    --end;
  return std::string(token.substr(begin, end - begin));
}

std::string escape_tsv(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '\t') {
      out += "\\t";
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<char> RankPrompt::labels() const {
  std::vector<char> result;
  for (std::size_t k = 0; k < labeled.size(); ++k) {
    result.push_back(static_cast<char>('A' + k));
  }
  return result;
}

RankPrompt build_prompt(PromptVariant variant, const TokenSentence& source,
                        std::span<const Candidate> candidates,
                        std::uint64_t seed, bool shuffle,
                        const PromptTemplate& tmpl) {
  if (candidates.size() < 2) {
    throw ValidationError("ranking needs at least 2 candidates");
  }
  if (candidates.size() > 26) {
    throw ValidationError("at most 26 candidates can be labeled");
  }
  RankPrompt prompt;
  prompt.variant = variant;
  prompt.original = source;
  prompt.system_message = tmpl.system_message;
  prompt.candidate_index.resize(candidates.size());
  std::iota(prompt.candidate_index.begin(), prompt.candidate_index.end(),
            std::size_t{0});
  if (shuffle) {
    SplitMix64 rng(seed);
    gecomb::shuffle(prompt.candidate_index, rng);
  }
  for (std::size_t index : prompt.candidate_index) {
    prompt.labeled.push_back(candidates[index]);
  }

  std::ostringstream text;
  if (!tmpl.task_description.empty()) text << tmpl.task_description << '\n';
  text << "ORIGINAL:\n" << source.str() << "\nEDITED:\n";
  for (std::size_t k = 0; k < prompt.labeled.size(); ++k) {
    text << static_cast<char>('A' + k) << ": " << prompt.labeled[k].sentence.str()
         << '\n';
  }
  text << (variant == PromptVariant::kTopCandidate
               ? tmpl.top_candidate_instruction
               : tmpl.full_ranking_instruction)
       << "\nOUTPUT:\n";
  prompt.text = text.str();
  return prompt;
}

RankResponse parse_response(std::string_view response,
                            const RankPrompt& prompt) {
  RankResponse parsed;
  parsed.variant = prompt.variant;
  parsed.raw = std::string(response);
  const std::size_t n = prompt.labeled.size();

  if (prompt.variant == PromptVariant::kTopCandidate) {
    for (std::size_t i = 0; i < response.size(); ++i) {
      const char c = response[i];
      const bool left_ok =
          i == 0 || !std::isalnum(static_cast<unsigned char>(response[i - 1]));
      const bool right_ok =
          i + 1 == response.size() ||
          !std::isalnum(static_cast<unsigned char>(response[i + 1]));
      if (left_ok && right_ok && is_issued(c, n)) {
        parsed.ranking = {c};
        return parsed;
      }
    }
    parsed.ranking = {'A'};
    parsed.fallback = true;
    return parsed;
  }

  std::vector<char> best;
  std::vector<char> current;
  std::istringstream words{std::string(response)};
  std::string word;
  while (words >> word) {
    const std::string token = strip_punctuation(word);
    if (token.size() == 1 && is_issued(token[0], n)) {
      current.push_back(token[0]);
      if (current.size() > best.size()) best = current;
    } else {
      current.clear();
    }
  }
  const std::set<char> distinct(best.begin(), best.end());
  if (best.size() == n && distinct.size() == n) {
    parsed.ranking = std::move(best);
    return parsed;
  }
  parsed.ranking = prompt.labels();
  parsed.fallback = true;
  return parsed;
}

std::vector<std::uint64_t> derive_run_seeds(std::uint64_t seed,
                                            std::size_t runs) {
  const SplitMix64 root(seed);
  std::vector<std::uint64_t> seeds;
  for (std::size_t r = 0; r < runs; ++r) {
    seeds.push_back(root.split("llm-rank/run", r).next());
  }
  return seeds;
}

std::size_t LlmRankRun::fallbacks() const {
  return static_cast<std::size_t>(
      std::count_if(decisions.begin(), decisions.end(),
                    [](const LlmRankDecision& d) { return d.fallback; }));
}

std::vector<LlmRankRun> llm_rank_corpus(std::span<const TokenSentence> sources,
                                        std::span<const SystemOutput> outputs,
                                        const LlmRankOptions& options,
                                        ChatBackend& backend,
                                        const SleepFn& sleep) {
  if (options.seeds.empty()) throw ValidationError("llm-rank needs runs >= 1");
  if (outputs.size() < 2) {
    throw ValidationError("llm-rank needs at least 2 systems");
  }
  check_aligned(outputs, sources.size());

  std::string members;
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    if (k > 0) members += ',';
    members += outputs[k].name;
  }
  const char* variant_name =
      options.variant == PromptVariant::kTopCandidate ? "a" : "b";

  std::vector<LlmRankRun> runs;
  for (std::size_t r = 0; r < options.seeds.size(); ++r) {
    LlmRankRun run;
    run.seed = options.seeds[r];
    run.output.name = std::string("llm-rank-") + variant_name + "[" + members +
                      "](run=" + std::to_string(r) + ")";
    run.output.sentences.resize(sources.size());
    run.decisions.resize(sources.size());
    const SplitMix64 run_rng(run.seed);

    parallel_for(sources.size(), options.jobs, [&](std::size_t i) {
      const auto candidates = candidates_at(outputs, i);
      const std::uint64_t sentence_seed = run_rng.split("sentence", i).next();
      const RankPrompt prompt =
          build_prompt(options.variant, sources[i], candidates, sentence_seed,
                       options.shuffle, options.prompt);

      LlmRankDecision decision;
      decision.sentence = i;
      for (std::size_t k = 0; k < prompt.labeled.size(); ++k) {
        if (k > 0) decision.order += ',';
        decision.order += static_cast<char>('A' + k);
        decision.order += '=' + prompt.labeled[k].system;
      }
      char label = 'A';
      try {
        decision.raw_response = complete_with_retry(
            backend,
            {prompt.system_message, prompt.text, options.temperature},
            options.retry, sleep);
        const RankResponse response = parse_response(decision.raw_response, prompt);
        label = response.top();
        if (response.fallback) {
          decision.fallback = true;
          decision.note = "unparseable response";
        }
      } catch (const BackendError& e) {
        decision.fallback = true;
        decision.note = e.what();
      }
      const std::size_t slot = static_cast<std::size_t>(label - 'A');
      decision.label = label;
      decision.system = prompt.labeled[slot].system;
      run.output.sentences[i] = prompt.labeled[slot].sentence;
      run.decisions[i] = std::move(decision);
    });
    runs.push_back(std::move(run));
  }
  return runs;
}

std::string format_llm_log(const LlmRankRun& run) {
  std::ostringstream out;
  out << "sentence_index\tlabel\tsystem\tfallback\torder\tnote\tresponse\n";
  for (const auto& d : run.decisions) {
    out << d.sentence << '\t' << d.label << '\t' << d.system << '\t'
        << (d.fallback ? 1 : 0) << '\t' << d.order << '\t' << escape_tsv(d.note)
        << '\t' << escape_tsv(d.raw_response) << '\n';
  }
  return out.str();
}

}  // namespace gecomb
