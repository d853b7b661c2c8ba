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

#include "gecomb/experiment.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <set>
#include <sstream>

#include "gecomb/error.h"
#include "gecomb/oracle.h"
#include "gecomb/ranking.h"
#include "gecomb/voting.h"
#include "json.hpp"

namespace gecomb {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::pair<Method, const char*> kMethodNames[] = {
    {Method::kVote, "vote"},
    {Method::kOracleEnsemble, "oracle-ensemble"},
    {Method::kOracleRank, "oracle-rank"},
    {Method::kRank, "rank"},
    {Method::kRankWeighted, "rank-w"},
    {Method::kAggrRank, "aggr-rank"},
    {Method::kLlmRank, "llm-rank"},
    {Method::kSecondOrderVote, "second-order-vote"},
};

fs::path resolve(const fs::path& base, const std::string& value) {
  fs::path p(value);
  return p.is_absolute() ? p : base / p;
}

std::unique_ptr<ChatBackend> make_backend(const LlmBackendConfig& config) {
  if (!config.mock.empty()) return make_mock_backend(config.mock);
  HttpBackendConfig http;
  http.base_url = config.base_url;
  http.model = config.model;
  http.timeout = std::chrono::milliseconds(config.timeout_ms);
  if (const char* token = std::getenv(config.token_env.c_str())) {
    http.bearer_token = token;
  }
  return std::make_unique<HttpChatBackend>(http);
}

void write_artifact(ExperimentResult& result, const fs::path& path,
                    std::string_view content) {
  write_file_atomic(path, content);
  result.artifacts.push_back(path);
}

std::vector<SystemOutput> without(const std::vector<SystemOutput>& members,
                                  std::size_t skip) {
  std::vector<SystemOutput> rest;
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (k != skip) rest.push_back(members[k]);
  }
  return rest;
}

}  // namespace

std::string method_name(Method method) {
  for (const auto& [m, name] : kMethodNames) {
    if (m == method) return name;
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (const auto& [m, n] : kMethodNames) {
    if (name == n) return m;
  }
  throw ValidationError("unknown method '" + std::string(name) + "'");
}

ExperimentConfig parse_experiment_config(std::string_view text,
                                         const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");

  static const std::set<std::string> kKnown = {
      "name",    "method",     "gold",     "source",  "members",
      "n_min",   "score_file", "variant",  "runs",    "seed",
      "backend", "output_dir", "jobs"};
  for (const auto& [key, _] : doc.items()) {
    if (kKnown.count(key) == 0) {
      throw ValidationError("config: unknown key '" + key + "'");
    }
  }

  ExperimentConfig config;
  try {
    config.method = parse_method(doc.at("method").get<std::string>());
    config.name = doc.value("name", method_name(config.method));
    config.gold = resolve(base_dir, doc.at("gold").get<std::string>());
    if (doc.contains("source")) {
      config.source = resolve(base_dir, doc["source"].get<std::string>());
    }
    for (const auto& member : doc.at("members")) {
      MemberSystem m;
      if (member.is_string()) {
        m.path = resolve(base_dir, member.get<std::string>());
        m.name = m.path.stem().string();
      } else {
        m.path = resolve(base_dir, member.at("path").get<std::string>());
        m.name = member.value("name", m.path.stem().string());
      }
      config.members.push_back(std::move(m));
    }
    config.n_min = doc.value("n_min", std::size_t{0});
    if (doc.contains("score_file")) {
      config.score_file = resolve(base_dir, doc["score_file"].get<std::string>());
    }
    const std::string variant = doc.value("variant", std::string("a"));
    if (variant == "a") {
      config.variant = PromptVariant::kTopCandidate;
    } else if (variant == "b") {
      config.variant = PromptVariant::kFullRanking;
    } else {
      throw ValidationError("config: variant must be 'a' or 'b'");
    }
    config.runs = doc.value("runs", std::size_t{1});
    config.seed = doc.value("seed", std::uint64_t{0});
    if (doc.contains("backend")) {
      const auto& b = doc["backend"];
      config.backend.mock = b.value("mock", std::string());
      config.backend.base_url = b.value("url", std::string());
      config.backend.model = b.value("model", std::string());
      config.backend.token_env = b.value("token_env", config.backend.token_env);
      config.backend.timeout_ms = b.value("timeout_ms", config.backend.timeout_ms);
    }
    config.output_dir = resolve(
        base_dir, doc.value("output_dir", std::string("results/") + config.name));
    config.jobs = doc.value("jobs", std::size_t{1});
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return config;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  return parse_experiment_config(read_file(path), path.parent_path());
}

void validate_config(const ExperimentConfig& config) {
  auto require_file = [](const fs::path& p, const std::string& what) {
    if (!fs::is_regular_file(p)) {
      throw ValidationError(what + " not found: " + p.string());
    }
  };
  require_file(config.gold, "gold file");
  if (config.source) require_file(*config.source, "source file");
  for (const auto& m : config.members) require_file(m.path, "member output");
  if (config.members.empty()) throw ValidationError("no member systems");

  const std::size_t n = config.members.size();
  switch (config.method) {
    case Method::kVote:
    case Method::kSecondOrderVote:
      if (config.n_min > n) {
        throw ValidationError("n_min " + std::to_string(config.n_min) +
                              " exceeds the " + std::to_string(n) + " members");
      }
      break;
    case Method::kRank:
    case Method::kRankWeighted:
      if (!config.score_file) {
        throw ValidationError(method_name(config.method) + " needs score_file");
      }
      require_file(*config.score_file, "score file");
      break;
    case Method::kAggrRank:
      if (n != 2) {
        throw ValidationError("aggr-rank needs exactly 2 members "
                              "(primary, alternative)");
      }
      break;
    case Method::kLlmRank:
      if (n < 2) throw ValidationError("llm-rank needs at least 2 members");
      if (config.runs < 1) throw ValidationError("llm-rank needs runs >= 1");
      if (config.backend.mock.empty() && config.backend.base_url.empty()) {
        throw ValidationError("llm-rank needs backend.mock or backend.url");
      }
      break;
    case Method::kOracleEnsemble:
    case Method::kOracleRank:
      break;
  }
}

LoadedCorpus load_corpus(const ExperimentConfig& config) {
  LoadedCorpus corpus;
  corpus.gold = load_m2(config.gold);
  corpus.sources = sources_of(corpus.gold);
  if (config.source) {
    const auto source = load_parallel(*config.source, corpus.sources.size());
    for (std::size_t i = 0; i < corpus.sources.size(); ++i) {
      if (source.sentences[i] != corpus.sources[i]) {
        throw ValidationError("sentence " + std::to_string(i) + ": " +
                              config.source->string() +
                              " differs from the gold source");
      }
    }
  }
  for (const auto& m : config.members) {
    auto output = load_parallel(m.path, corpus.sources.size());
    output.name = m.name;
    corpus.members.push_back(std::move(output));
  }
  return corpus;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  const LoadedCorpus corpus = load_corpus(config);
  fs::create_directories(config.output_dir);
  const fs::path dir = config.output_dir;

  ExperimentResult result;
  std::vector<SystemOutput> produced;
  switch (config.method) {
    case Method::kVote:
    case Method::kSecondOrderVote:
      produced.push_back(majority_vote_corpus(corpus.sources, corpus.members,
                                              config.n_min, config.jobs));
      break;
    case Method::kOracleEnsemble:
    case Method::kOracleRank: {
      const bool ensemble = config.method == Method::kOracleEnsemble;
      auto oracle = ensemble
                        ? oracle_ensemble_corpus(corpus.gold, corpus.members,
                                                 config.jobs)
                        : oracle_rank_corpus(corpus.gold, corpus.members,
                                             config.jobs);
      write_artifact(result, dir / (config.name + ".oracle.tsv"),
                     format_oracle_log(oracle.choices,
                                       method_name(config.method)));
      produced.push_back(std::move(oracle.output));
      break;
    }
    case Method::kRank:
    case Method::kRankWeighted:
      produced.push_back(rank_corpus(corpus.members,
                                     load_score_file(*config.score_file),
                                     config.method == Method::kRankWeighted,
                                     config.jobs));
      break;
    case Method::kAggrRank:
      produced.push_back(aggr_rank_corpus(corpus.sources, corpus.members[0],
                                          corpus.members[1]));
      break;
    case Method::kLlmRank: {
      LlmRankOptions options;
      options.variant = config.variant;
      options.seeds = derive_run_seeds(config.seed, config.runs);
      options.jobs = config.jobs;
      auto backend = make_backend(config.backend);
      auto runs = llm_rank_corpus(corpus.sources, corpus.members, options,
                                  *backend);
      for (std::size_t r = 0; r < runs.size(); ++r) {
        write_artifact(result,
                       dir / (config.name + ".run" + std::to_string(r) + ".log.tsv"),
                       format_llm_log(runs[r]));
        produced.push_back(std::move(runs[r].output));
      }
      break;
    }
  }

  for (std::size_t k = 0; k < produced.size(); ++k) {
    const std::string stem =
        produced.size() == 1 ? config.name
                             : config.name + ".run" + std::to_string(k);
    write_artifact(result, dir / (stem + ".txt"), serialize_parallel(produced[k]));
    result.rows.push_back({stem, score_corpus(produced[k], corpus.gold), false});
  }

  if (produced.size() == 1) {
    result.report = result.rows.front().report;
  } else {
    const double runs = static_cast<double>(produced.size());
    std::vector<double> mean(3, 0.0);
    for (const auto& row : result.rows) {
      mean[0] += row.report.precision / runs;
      mean[1] += row.report.recall / runs;
      mean[2] += row.report.f05 / runs;
    }
    std::vector<double> two_std(3, 0.0);
    for (const auto& row : result.rows) {
      const double v[] = {row.report.precision, row.report.recall, row.report.f05};
      for (int m = 0; m < 3; ++m) {
        two_std[m] += (v[m] - mean[m]) * (v[m] - mean[m]) / runs;
      }
    }
    for (double& s : two_std) s = 2.0 * std::sqrt(s);
    result.report = result.rows.front().report;
    result.report.precision = mean[0];
    result.report.recall = mean[1];
    result.report.f05 = mean[2];
    result.two_std = two_std;
    result.rows.push_back({config.name + ".mean", result.report, true});
  }

  std::string table = render_result_table(result.rows);
  if (result.two_std) {
    const auto& s = *result.two_std;
    table += "2std: P " + format_percent(s[0]) + "  R " + format_percent(s[1]) +
             "  F0.5 " + format_percent(s[2]) + "\n";
  }
  write_artifact(result, dir / (config.name + ".report.txt"), table);
  write_artifact(result, dir / (config.name + ".results.tsv"),
                 format_result_rows(result.rows));
  return result;
}

std::vector<ResultRow> ablation_remove_one(const ExperimentConfig& config) {
  validate_config(config);
  if (config.members.size() < 3) {
    throw ValidationError("remove-one ablation needs at least 3 members");
  }
  const LoadedCorpus corpus = load_corpus(config);
  std::vector<ResultRow> rows;
  rows.push_back({"full", score_corpus(majority_vote_corpus(
                                           corpus.sources, corpus.members,
                                           config.n_min, config.jobs),
                                       corpus.gold)});
  for (std::size_t k = 0; k < corpus.members.size(); ++k) {
    const auto rest = without(corpus.members, k);
    const std::size_t n_min = std::min(config.n_min, rest.size());
    rows.push_back({"w/o " + corpus.members[k].name,
                    score_corpus(majority_vote_corpus(corpus.sources, rest,
                                                      n_min, config.jobs),
                                 corpus.gold)});
  }
  return rows;
}

std::vector<ResultRow> sweep_n_min(const ExperimentConfig& config) {
  validate_config(config);
  const LoadedCorpus corpus = load_corpus(config);
  std::vector<ResultRow> rows;
  for (std::size_t n_min = 0; n_min <= corpus.members.size(); ++n_min) {
    rows.push_back({"n_min=" + std::to_string(n_min),
                    score_corpus(majority_vote_corpus(corpus.sources,
                                                      corpus.members, n_min,
                                                      config.jobs),
                                 corpus.gold)});
  }
  return rows;
}

std::string format_result_rows(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << report_tsv_header() << '\n';
  for (const auto& row : rows) {
    if (row.averaged) {
      out << row.label << '\t' << format_percent(row.report.precision) << '\t'
          << format_percent(row.report.recall) << '\t'
          << format_percent(row.report.f05) << "\t-\t-\t-\n";
    } else {
      out << format_report_tsv(row.label, row.report) << '\n';
    }
  }
  return out.str();
}

std::string render_result_table(const std::vector<ResultRow>& rows) {
  std::size_t width = 6;
  for (const auto& row : rows) width = std::max(width, row.label.size());
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-*s  %6s %6s %6s %10s %11s %7s\n",
                static_cast<int>(width), "system", "P", "R", "F0.5",
                "n_correct", "n_proposed", "n_gold");
  out << line;
  for (const auto& row : rows) {
    const auto& r = row.report;
    if (row.averaged) {
      std::snprintf(line, sizeof(line), "%-*s  %6s %6s %6s %10s %11s %7s\n",
                    static_cast<int>(width), row.label.c_str(),
                    format_percent(r.precision).c_str(),
                    format_percent(r.recall).c_str(),
                    format_percent(r.f05).c_str(), "-", "-", "-");
    } else {
      std::snprintf(line, sizeof(line), "%-*s  %6s %6s %6s %10zu %11zu %7zu\n",
                    static_cast<int>(width), row.label.c_str(),
                    format_percent(r.precision).c_str(),
                    format_percent(r.recall).c_str(),
                    format_percent(r.f05).c_str(), r.totals.n_correct,
                    r.totals.n_proposed, r.totals.n_gold);
    }
    out << line;
  }
  return out.str();
}

}  // namespace gecomb
