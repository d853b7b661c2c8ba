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

#include "gecomb/cli.h"

#include <cstdlib>
#include <filesystem>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gecomb/alignment.h"
#include "gecomb/chat_backend.h"
#include "gecomb/clustering.h"
#include "gecomb/corpus.h"
#include "gecomb/error.h"
#include "gecomb/experiment.h"
#include "gecomb/llm_ranker.h"
#include "gecomb/oracle.h"
#include "gecomb/ranking.h"
#include "gecomb/scoring.h"
#include "gecomb/voting.h"

namespace gecomb {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string src;
  std::string hyp;
  std::string gold;
  std::string edits;
  std::string out;
  std::string log;
  std::vector<std::string> systems;
  std::size_t n_min = 0;
  int annotator = 0;
  std::string scores;
  std::string primary;
  std::string alternative;
  double threshold = 0.11;
  std::string report;
  std::string matrix;
  std::string dendrogram;
  std::string name;
  bool tsv = false;
  std::string per_sentence;
  std::string variant = "a";
  std::size_t runs = 4;
  std::uint64_t seed = 0;
  bool no_shuffle = false;
  std::string mock;
  std::string url;
  std::string model = "gpt-4-0613";
  std::string token_env = "OPENAI_API_KEY";
  long timeout_ms = 60000;
  std::string config;
  std::string ablation = "none";
  std::size_t jobs = 0;
};

void emit(const std::string& path, const std::string& content,
          std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

std::vector<SystemOutput> load_systems(const std::vector<std::string>& paths,
                                       std::size_t length) {
  std::vector<SystemOutput> systems;
  for (const auto& p : paths) systems.push_back(load_parallel(p, length));
  return systems;
}

void require_distinct_names(const std::vector<SystemOutput>& systems) {
  std::set<std::string> seen;
  for (const auto& s : systems) {
    if (!seen.insert(s.name).second) {
      throw ValidationError("two systems share the name '" + s.name +
                            "'; rename one of the files");
    }
  }
}

void check_source_matches(const std::string& src_path,
                          const std::vector<GoldSentence>& gold) {
  if (src_path.empty()) return;
  const auto source = load_parallel(src_path, gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (source.sentences[i] != gold[i].source) {
      throw ValidationError("sentence " + std::to_string(i) + ": " + src_path +
                            " differs from the gold source");
    }
  }
}

CLI::Option* add_jobs(CLI::App* cmd, Options& o) {
  return cmd->add_option("--jobs", o.jobs,
                         "Worker threads for per-sentence work (0 = all cores)");
}

int run_extract(const Options& o, std::ostream& out) {
  const auto source = load_parallel(o.src);
  const auto hyp = load_parallel(o.hyp, source.size());
  std::vector<GoldSentence> as_m2;
  for (std::size_t i = 0; i < source.size(); ++i) {
    as_m2.push_back({source.sentences[i],
                     {{0, extract_edits(source.sentences[i], hyp.sentences[i])}}});
  }
  emit(o.out, serialize_m2(as_m2), out);
  return 0;
}

int run_apply(const Options& o, std::ostream& out) {
  const auto gold = load_m2(o.edits);
  check_source_matches(o.src, gold);
  SystemOutput result{"applied", {}};
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const Annotation* chosen = nullptr;
    for (const auto& a : gold[i].annotations) {
      if (a.annotator == o.annotator) chosen = &a;
    }
    if (chosen == nullptr) {
      result.sentences.push_back(gold[i].source);
    } else {
      result.sentences.push_back(apply_edits(gold[i].source, chosen->edits));
    }
  }
  emit(o.out, serialize_parallel(result), out);
  return 0;
}

int run_score(const Options& o, std::ostream& out) {
  const auto gold = load_m2(o.gold);
  check_source_matches(o.src, gold);
  const auto hyp = load_parallel(o.hyp, gold.size());
  const auto report = score_corpus(hyp, gold);
  if (o.tsv) {
    out << report_tsv_header() << '\n'
        << format_report_tsv(o.name.empty() ? hyp.name : o.name, report) << '\n';
  } else {
    out << format_report_table(report);
  }
  if (!o.per_sentence.empty()) {
    std::ostringstream rows;
    rows << "sentence_index\tannotator\tn_correct\tn_proposed\tn_gold\n";
    for (std::size_t i = 0; i < report.per_sentence.size(); ++i) {
      const auto& s = report.per_sentence[i];
      rows << i << '\t' << s.annotator << '\t' << s.counts.n_correct << '\t'
           << s.counts.n_proposed << '\t' << s.counts.n_gold << '\n';
    }
    write_file_atomic(o.per_sentence, rows.str());
  }
  return 0;
}

int run_vote(const Options& o, std::ostream& out) {
  const auto source = load_parallel(o.src);
  const auto systems = load_systems(o.systems, source.size());
  const auto result =
      majority_vote_corpus(source.sentences, systems, o.n_min, o.jobs);
  emit(o.out, serialize_parallel(result), out);
  return 0;
}

int run_oracle(const Options& o, bool ensemble, std::ostream& out) {
  const auto gold = load_m2(o.gold);
  const auto systems = load_systems(o.systems, gold.size());
  const auto result = ensemble ? oracle_ensemble_corpus(gold, systems, o.jobs)
                               : oracle_rank_corpus(gold, systems, o.jobs);
  emit(o.out, serialize_parallel(result.output), out);
  if (!o.log.empty()) {
    write_file_atomic(o.log,
                      format_oracle_log(result.choices, ensemble
                                                            ? "oracle-ensemble"
                                                            : "oracle-rank"));
  }
  return 0;
}

int run_rank(const Options& o, bool weighted, std::ostream& out) {
  const auto first = load_parallel(o.systems.front());
  auto systems = load_systems(o.systems, first.size());
  require_distinct_names(systems);
  const auto scores = load_score_file(o.scores);
  emit(o.out, serialize_parallel(rank_corpus(systems, scores, weighted, o.jobs)),
       out);
  return 0;
}

int run_aggr_rank(const Options& o, std::ostream& out) {
  const auto source = load_parallel(o.src);
  const auto primary = load_parallel(o.primary, source.size());
  const auto alternative = load_parallel(o.alternative, source.size());
  emit(o.out,
       serialize_parallel(aggr_rank_corpus(source.sentences, primary, alternative)),
       out);
  return 0;
}

int run_cluster(const Options& o, std::ostream& out) {
  const auto first = load_parallel(o.systems.front());
  const auto systems = load_systems(o.systems, first.size());
  const auto result = cluster_systems(systems, o.threshold, o.jobs);
  emit(o.report, format_cluster_report(result), out);
  if (!o.matrix.empty()) {
    write_file_atomic(o.matrix, format_similarity_matrix(result.similarity));
  }
  if (!o.dendrogram.empty()) {
    write_file_atomic(o.dendrogram, format_dendrogram(result));
  }
  return 0;
}

int run_llm_rank(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.mock.empty() == o.url.empty()) {
    throw ValidationError("exactly one of --mock and --url is required");
  }
  std::unique_ptr<ChatBackend> backend;
  if (!o.mock.empty()) {
    backend = make_mock_backend(o.mock);
  } else {
    HttpBackendConfig http{o.url, o.model, "", std::chrono::milliseconds(o.timeout_ms)};
    if (const char* token = std::getenv(o.token_env.c_str())) {
      http.bearer_token = token;
    }
    backend = std::make_unique<HttpChatBackend>(http);
  }

  const auto source = load_parallel(o.src);
  auto systems = load_systems(o.systems, source.size());
  LlmRankOptions options;
  options.variant = o.variant == "b" ? PromptVariant::kFullRanking
                                     : PromptVariant::kTopCandidate;
  options.seeds = derive_run_seeds(o.seed, o.runs);
  options.shuffle = !o.no_shuffle;
  options.jobs = o.jobs;
  const auto runs = llm_rank_corpus(source.sentences, systems, options, *backend);

  std::vector<GoldSentence> gold;
  if (!o.gold.empty()) gold = load_m2(o.gold);
  std::vector<ResultRow> rows;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const std::string stem = o.out + ".run" + std::to_string(r);
    write_file_atomic(stem + ".txt", serialize_parallel(runs[r].output));
    write_file_atomic(stem + ".log.tsv", format_llm_log(runs[r]));
    if (runs[r].fallbacks() > 0) {
      err << "run " << r << ": " << runs[r].fallbacks()
          << " sentence(s) fell back to label A\n";
    }
    if (!gold.empty()) {
      rows.push_back({"run" + std::to_string(r), score_corpus(runs[r].output, gold)});
    }
  }
  if (!rows.empty()) out << render_result_table(rows);
  return 0;
}

int run_experiment_cmd(const Options& o, std::ostream& out) {
  const auto config = load_experiment_config(o.config);
  if (o.ablation == "remove-one") {
    out << render_result_table(ablation_remove_one(config));
  } else if (o.ablation == "nmin-sweep") {
    out << render_result_table(sweep_n_min(config));
  } else {
    const auto result = run_experiment(config);
    out << render_result_table(result.rows);
    if (result.two_std) {
      const auto& s = *result.two_std;
      out << "2std: P " << format_percent(s[0]) << "  R " << format_percent(s[1])
          << "  F0.5 " << format_percent(s[2]) << '\n';
    }
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  Options o;
  CLI::App app{"gecomb: combine and score grammatical error correction outputs"};
  app.name("gecomb");
  app.require_subcommand(1);

  auto existing = CLI::ExistingFile;

  auto* extract = app.add_subcommand("extract", "Extract edits of a hypothesis as M2");
  extract->add_option("--src", o.src, "Source sentences")->required()->check(existing);
  extract->add_option("--hyp", o.hyp, "Hypothesis sentences")->required()->check(existing);
  extract->add_option("--out", o.out, "Output M2 (default: stdout)");

  auto* apply = app.add_subcommand("apply", "Apply one annotator's M2 edits");
  apply->add_option("--edits", o.edits, "M2 file")->required()->check(existing);
  apply->add_option("--src", o.src, "Source sentences to check against")->check(existing);
  apply->add_option("--annotator", o.annotator, "Annotator id")->check(CLI::NonNegativeNumber);
  apply->add_option("--out", o.out, "Output text (default: stdout)");

  auto* score = app.add_subcommand("score", "Score a hypothesis against M2 gold");
  score->add_option("--hyp", o.hyp, "Hypothesis sentences")->required()->check(existing);
  score->add_option("--gold", o.gold, "Gold M2")->required()->check(existing);
  score->add_option("--src", o.src, "Source sentences to check against")->check(existing);
  score->add_option("--name", o.name, "System label for --tsv");
  score->add_flag("--tsv", o.tsv, "Print a TSV row instead of a table");
  score->add_option("--per-sentence", o.per_sentence, "Per-sentence counts TSV");

  auto* vote = app.add_subcommand("vote", "Majority-vote ensemble");
  vote->add_option("--src", o.src, "Source sentences")->required()->check(existing);
  vote->add_option("--sys", o.systems, "Member output (repeat)")->required()->check(existing);
  vote->add_option("--nmin", o.n_min, "Keep edits with more than N votes")->required();
  vote->add_option("--out", o.out, "Output text (default: stdout)");
  add_jobs(vote, o);

  auto* oracle_ens = app.add_subcommand("oracle-ensemble", "Oracle edit selection");
  auto* oracle_rnk = app.add_subcommand("oracle-rank", "Oracle candidate selection");
  for (auto* cmd : {oracle_ens, oracle_rnk}) {
    cmd->add_option("--gold", o.gold, "Gold M2")->required()->check(existing);
    cmd->add_option("--sys", o.systems, "Member output (repeat)")->required()->check(existing);
    cmd->add_option("--out", o.out, "Output text (default: stdout)");
    cmd->add_option("--log", o.log, "Audit log TSV");
    add_jobs(cmd, o);
  }

  auto* rank = app.add_subcommand("rank", "Pick the highest-scored candidate");
  auto* rank_w = app.add_subcommand("rank-w", "Frequency-weighted score ranking");
  for (auto* cmd : {rank, rank_w}) {
    cmd->add_option("--sys", o.systems, "Member output (repeat)")->required()->check(existing);
    cmd->add_option("--scores", o.scores, "Score file TSV")->required()->check(existing);
    cmd->add_option("--out", o.out, "Output text (default: stdout)");
    add_jobs(cmd, o);
  }

  auto* aggr = app.add_subcommand("aggr-rank", "Aggressiveness-based choice of two outputs");
  aggr->add_option("--src", o.src, "Source sentences")->required()->check(existing);
  aggr->add_option("--primary", o.primary, "LLM-ranked output")->required()->check(existing);
  aggr->add_option("--alternative", o.alternative, "Alternative output")->required()->check(existing);
  aggr->add_option("--out", o.out, "Output text (default: stdout)");

  auto* cluster = app.add_subcommand("cluster", "TF-IDF clustering of systems");
  cluster->add_option("--sys", o.systems, "Member output (repeat)")->required()->check(existing);
  cluster->add_option("--threshold", o.threshold, "Dendrogram cut distance")
      ->check(CLI::Range(0.0, 1.0));
  cluster->add_option("--report", o.report, "Cluster report TSV (default: stdout)");
  cluster->add_option("--matrix", o.matrix, "Similarity matrix TSV");
  cluster->add_option("--dendrogram", o.dendrogram, "Merge steps TSV");
  add_jobs(cluster, o);

  auto* llm = app.add_subcommand("llm-rank", "Rank candidates with a chat model");
  llm->add_option("--src", o.src, "Source sentences")->required()->check(existing);
  llm->add_option("--sys", o.systems, "Member output (repeat)")->required()->check(existing);
  llm->add_option("--out", o.out, "Output prefix; writes <prefix>.run<k>.txt")->required();
  llm->add_option("--variant", o.variant, "Prompt variant")->check(CLI::IsMember({"a", "b"}));
  llm->add_option("--runs", o.runs, "Number of shuffled runs")->check(CLI::PositiveNumber);
  llm->add_option("--seed", o.seed, "Master seed for all shuffling");
  llm->add_flag("--no-shuffle", o.no_shuffle, "Keep input order (labels A.. in --sys order)");
  llm->add_option("--mock", o.mock, "Offline backend: lexmin or label:<X>");
  llm->add_option("--url", o.url, "Chat-completions base URL");
  llm->add_option("--model", o.model, "Model name");
  llm->add_option("--token-env", o.token_env, "Environment variable holding the bearer token");
  llm->add_option("--timeout-ms", o.timeout_ms, "Per-request timeout")->check(CLI::PositiveNumber);
  llm->add_option("--gold", o.gold, "Score each run against this M2")->check(existing);
  add_jobs(llm, o);

  auto* experiment = app.add_subcommand("experiment", "Run a configured experiment");
  experiment->add_option("--config", o.config, "Experiment JSON")->required()->check(existing);
  experiment->add_option("--ablation", o.ablation, "Ablation to run instead")
      ->check(CLI::IsMember({"none", "remove-one", "nmin-sweep"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "gecomb: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (extract->parsed()) return run_extract(o, out);
    if (apply->parsed()) return run_apply(o, out);
    if (score->parsed()) return run_score(o, out);
    if (vote->parsed()) return run_vote(o, out);
    if (oracle_ens->parsed()) return run_oracle(o, true, out);
    if (oracle_rnk->parsed()) return run_oracle(o, false, out);
    if (rank->parsed()) return run_rank(o, false, out);
    if (rank_w->parsed()) return run_rank(o, true, out);
    if (aggr->parsed()) return run_aggr_rank(o, out);
    if (cluster->parsed()) return run_cluster(o, out);
    if (llm->parsed()) return run_llm_rank(o, out, err);
    if (experiment->parsed()) return run_experiment_cmd(o, out);
  } catch (const ParseError& e) {
    err << "gecomb: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    err << "gecomb: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "gecomb: " << e.what() << '\n';
    return 2;
  }
  err << app.help();
  return 1;
}

}  // namespace gecomb
