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

#include "gecomb/scoring.h"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <tuple>

#include "gecomb/alignment.h"
#include "gecomb/error.h"

namespace gecomb {

double f_beta(double precision, double recall, double beta) {
  if (precision * recall == 0.0) return 0.0;
  const double b2 = beta * beta;
  return (1.0 + b2) * precision * recall / (b2 * precision + recall);
}

double precision_of(const SentenceCounts& counts) {
  if (counts.n_proposed == 0) return 1.0;
  return static_cast<double>(counts.n_correct) /
         static_cast<double>(counts.n_proposed);
}

double recall_of(const SentenceCounts& counts) {
  if (counts.n_gold == 0) return 1.0;
  return static_cast<double>(counts.n_correct) /
         static_cast<double>(counts.n_gold);
}

double f05_of(const SentenceCounts& counts) {
  return f_beta(precision_of(counts), recall_of(counts), 0.5);
}

SentenceCounts sentence_counts(std::span<const Edit> hypothesis,
                               std::span<const Edit> gold) {
  std::set<Edit> gold_set(gold.begin(), gold.end());
  SentenceCounts counts;
  counts.n_proposed = hypothesis.size();
  counts.n_gold = gold.size();
  for (const auto& edit : hypothesis) {
    if (gold_set.count(edit) > 0) ++counts.n_correct;
  }
  return counts;
}

ScoreReport score_edits(std::span<const std::vector<Edit>> hypothesis_edits,
                        std::span<const GoldSentence> gold) {
  if (hypothesis_edits.size() != gold.size()) {
    throw ValidationError("hypothesis has " +
                          std::to_string(hypothesis_edits.size()) +
                          " sentences, gold has " + std::to_string(gold.size()));
  }
  ScoreReport report;
  report.per_sentence.reserve(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto& annotations = gold[i].annotations;
    if (annotations.empty()) {
      throw ValidationError("gold sentence " + std::to_string(i) +
                            " has no annotations");
    }
    SentenceScore best;
    double best_f = -1.0;
    for (const auto& annotation : annotations) {
      const SentenceCounts counts =
          sentence_counts(hypothesis_edits[i], annotation.edits);
      const SentenceCounts running = report.totals + counts;
      const double f = f05_of(running);
      const auto key = std::make_tuple(f, counts.n_correct,
                                       -static_cast<long>(counts.n_proposed));
      const auto best_key =
          std::make_tuple(best_f, best.counts.n_correct,
                          -static_cast<long>(best.counts.n_proposed));
      if (best_f < 0.0 || key > best_key) {
        best = {annotation.annotator, counts};
        best_f = f;
      }
    }
    report.totals += best.counts;
    report.per_sentence.push_back(best);
  }
  report.precision = precision_of(report.totals);
  report.recall = recall_of(report.totals);
  report.f05 = f_beta(report.precision, report.recall, 0.5);
  return report;
}

ScoreReport score_corpus(const SystemOutput& hypothesis,
                         std::span<const GoldSentence> gold) {
  if (hypothesis.size() != gold.size()) {
    throw ValidationError("hypothesis '" + hypothesis.name + "' has " +
                          std::to_string(hypothesis.size()) +
                          " sentences, gold has " + std::to_string(gold.size()));
  }
  std::vector<std::vector<Edit>> edits;
  edits.reserve(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    edits.push_back(extract_edits(gold[i].source, hypothesis.sentences[i]));
  }
  return score_edits(edits, gold);
}

double round_percent(double fraction) {
  // The epsilon absorbs binary representation error at exact .x5 boundaries.
  return std::floor(fraction * 1000.0 + 0.5 + 1e-9) / 10.0;
}

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", round_percent(fraction));
  return buf;
}

std::string format_report_table(const ScoreReport& report) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-6s %-6s %-6s %-10s %-11s %s\n", "P", "R",
                "F0.5", "n_correct", "n_proposed", "n_gold");
  out << line;
  std::snprintf(line, sizeof(line), "%-6s %-6s %-6s %-10zu %-11zu %zu\n",
                format_percent(report.precision).c_str(),
                format_percent(report.recall).c_str(),
                format_percent(report.f05).c_str(), report.totals.n_correct,
                report.totals.n_proposed, report.totals.n_gold);
  out << line;
  return out.str();
}

std::string report_tsv_header() {
  return "system\tP\tR\tF0.5\tn_correct\tn_proposed\tn_gold";
}

std::string format_report_tsv(const std::string& system,
                              const ScoreReport& report) {
  std::ostringstream out;
  out << system << '\t' << format_percent(report.precision) << '\t'
      << format_percent(report.recall) << '\t' << format_percent(report.f05)
      << '\t' << report.totals.n_correct << '\t' << report.totals.n_proposed
      << '\t' << report.totals.n_gold;
  return out.str();
}

}  // namespace gecomb
