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

#include "gecomb/oracle.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "gecomb/alignment.h"
#include "gecomb/error.h"
#include "gecomb/parallel.h"
#include "gecomb/scoring.h"

namespace gecomb {
namespace {

void check_source(const TokenSentence& source, const GoldSentence& gold) {
  if (source != gold.source) {
    throw ValidationError("source sentence differs from gold source '" +
                          gold.source.str() + "'");
  }
  if (gold.annotations.empty()) {
    throw ValidationError("gold sentence has no annotations");
  }
}

std::string member_list(std::span<const SystemOutput> outputs) {
  std::string names;
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    if (k > 0) names += ',';
    names += outputs[k].name;
  }
  return names;
}

}  // namespace

OracleEnsembleResult oracle_ensemble(const TokenSentence& source,
                                     std::span<const Candidate> outputs,
                                     const GoldSentence& gold) {
  check_source(source, gold);
  std::set<Edit> pool;
  for (const auto& output : outputs) {
    for (auto& edit : extract_edits(source, output.sentence)) {
      pool.insert(std::move(edit));
    }
  }

  OracleEnsembleResult best;
  bool have_best = false;
  for (const auto& annotation : gold.annotations) {
    std::vector<Edit> shared;
    for (const auto& edit : annotation.edits) {
      if (pool.count(edit) > 0) shared.push_back(edit);
    }
    if (!have_best || shared.size() > best.selected.size()) {
      best.annotator = annotation.annotator;
      best.selected = std::move(shared);
      have_best = true;
    }
  }
  best.sentence = apply_edits(source, best.selected);
  return best;
}

CandidateKey candidate_key(const TokenSentence& hypothesis,
                           const GoldSentence& gold) {
  const auto edits = extract_edits(gold.source, hypothesis);
  CandidateKey best;
  bool have_best = false;
  for (const auto& annotation : gold.annotations) {
    const auto counts = sentence_counts(edits, annotation.edits);
    CandidateKey key{f05_of(counts), counts.n_correct, counts.n_proposed,
                     annotation.annotator};
    if (!have_best || ranks_above(key, best)) {
      best = key;
      have_best = true;
    }
  }
  return best;
}

bool ranks_above(const CandidateKey& a, const CandidateKey& b) {
  return std::make_tuple(a.f05, a.n_correct, b.n_proposed) >
         std::make_tuple(b.f05, b.n_correct, a.n_proposed);
}

OracleRankResult oracle_rank(const TokenSentence& source,
                             std::span<const Candidate> outputs,
                             const GoldSentence& gold) {
  check_source(source, gold);
  if (outputs.empty()) throw ValidationError("oracle_rank needs a candidate");
  OracleRankResult best;
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    const auto key = candidate_key(outputs[k].sentence, gold);
    if (k == 0 || ranks_above(key, best.key)) {
      best = {k, outputs[k], key};
    }
  }
  return best;
}

OracleCorpusResult oracle_ensemble_corpus(std::span<const GoldSentence> gold,
                                          std::span<const SystemOutput> outputs,
                                          std::size_t jobs) {
  check_aligned(outputs, gold.size());
  OracleCorpusResult result;
  result.output.name = "oracle-ensembling[" + member_list(outputs) + "]";
  result.output.sentences.resize(gold.size());
  result.choices.resize(gold.size());
  parallel_for(gold.size(), jobs, [&](std::size_t i) {
    const auto candidates = candidates_at(outputs, i);
    auto chosen = oracle_ensemble(gold[i].source, candidates, gold[i]);
    result.output.sentences[i] = std::move(chosen.sentence);
    result.choices[i] = {i, chosen.annotator, std::move(chosen.selected), {}};
  });
  return result;
}

OracleCorpusResult oracle_rank_corpus(std::span<const GoldSentence> gold,
                                      std::span<const SystemOutput> outputs,
                                      std::size_t jobs) {
  check_aligned(outputs, gold.size());
  if (outputs.empty()) throw ValidationError("oracle ranking needs systems");
  OracleCorpusResult result;
  result.output.name = "oracle-ranking[" + member_list(outputs) + "]";
  result.output.sentences.resize(gold.size());
  result.choices.resize(gold.size());
  parallel_for(gold.size(), jobs, [&](std::size_t i) {
    const auto candidates = candidates_at(outputs, i);
    auto chosen = oracle_rank(gold[i].source, candidates, gold[i]);
    result.choices[i] = {i, chosen.key.annotator,
                         extract_edits(gold[i].source, chosen.candidate.sentence),
                         chosen.candidate.system};
    result.output.sentences[i] = std::move(chosen.candidate.sentence);
  });
  return result;
}

std::string format_oracle_log(std::span<const OracleChoice> choices,
                              const std::string& method) {
  std::ostringstream out;
  out << "sentence_index\tmethod\tchosen\tn_selected\n";
  for (const auto& choice : choices) {
    out << choice.sentence << '\t' << method << '\t';
    if (choice.system.empty()) {
      out << "annotator:" << choice.annotator;
    } else {
      out << choice.system;
    }
    out << '\t' << choice.selected.size() << '\n';
  }
  return out.str();
}

}  // namespace gecomb
