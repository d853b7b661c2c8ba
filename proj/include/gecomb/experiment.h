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

#ifndef GECOMB_EXPERIMENT_H_
#define GECOMB_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gecomb/chat_backend.h"
#include "gecomb/corpus.h"
#include "gecomb/llm_ranker.h"
#include "gecomb/scoring.h"

namespace gecomb {

enum class Method {
  kVote,
  kOracleEnsemble,
  kOracleRank,
  kRank,
  kRankWeighted,
  kAggrRank,
  kLlmRank,
  kSecondOrderVote,
};

std::string method_name(Method method);
/// Throws ValidationError for unknown names.
Method parse_method(std::string_view name);

struct MemberSystem {
  std::string name;
  std::filesystem::path path;
};

struct LlmBackendConfig {
  std::string mock;  // non-empty selects a mock backend ("lexmin", "label:X")
  std::string base_url;
  std::string model;
  std::string token_env = "OPENAI_API_KEY";
  long timeout_ms = 60000;
};

/// Declarative description of one experiment. Relative paths in a config
/// file are resolved against the file's directory.
struct ExperimentConfig {
  std::string name;
  Method method = Method::kVote;
  std::filesystem::path gold;
  std::optional<std::filesystem::path> source;
  std::vector<MemberSystem> members;
  std::size_t n_min = 0;
  std::optional<std::filesystem::path> score_file;
  PromptVariant variant = PromptVariant::kTopCandidate;
  std::size_t runs = 1;
  std::uint64_t seed = 0;
  LlmBackendConfig backend;
  std::filesystem::path output_dir;
  std::size_t jobs = 1;
};

/// Parses the JSON config schema documented in the README and validates it.
ExperimentConfig parse_experiment_config(std::string_view json,
                                         const std::filesystem::path& base_dir);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Throws ValidationError when referenced files are missing or parameters do
/// not fit the method.
void validate_config(const ExperimentConfig& config);

struct ResultRow {
  std::string label;
  ScoreReport report;
  /// Averaged rows carry no meaningful counts; they print as "-".
  bool averaged = false;
};

struct ExperimentResult {
  /// The headline report: the single output's score, or for llm-rank the
  /// per-run means of P, R and F0.5 (counts are those of the first run).
  ScoreReport report;
  std::vector<ResultRow> rows;
  /// For llm-rank: two standard deviations (population) of P, R and F0.5
  /// across runs, as fractions.
  std::optional<std::vector<double>> two_std;
  std::vector<std::filesystem::path> artifacts;
};

/// Runs one experiment and writes its output file(s), report and result rows
/// under config.output_dir. Deterministic given the config.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Full majority-vote ensemble plus one ensemble per left-out member, all at
/// config.n_min. Needs at least 3 members.
std::vector<ResultRow> ablation_remove_one(const ExperimentConfig& config);

/// Majority-vote ensembles for every n_min in 0..N_sys.
std::vector<ResultRow> sweep_n_min(const ExperimentConfig& config);

/// TSV rows with report_tsv_header().
std::string format_result_rows(const std::vector<ResultRow>& rows);
/// Column-aligned table of P, R, F0.5 and counts.
std::string render_result_table(const std::vector<ResultRow>& rows);

/// Loads the gold corpus and members of `config` (sources taken from gold,
/// checked against config.source when given).
struct LoadedCorpus {
  std::vector<GoldSentence> gold;
  std::vector<TokenSentence> sources;
  std::vector<SystemOutput> members;
};
LoadedCorpus load_corpus(const ExperimentConfig& config);

}  // namespace gecomb

#endif  // GECOMB_EXPERIMENT_H_
