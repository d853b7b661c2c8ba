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

#ifndef GECOMB_CORPUS_H_
#define GECOMB_CORPUS_H_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gecomb {

/// A pre-tokenized sentence. Tokens are non-empty and free of whitespace.
struct TokenSentence {
  std::vector<std::string> tokens;

  /// Splits on ASCII whitespace; runs of whitespace collapse.
  static TokenSentence parse(std::string_view line);

  /// Tokens joined by single spaces.
  std::string str() const;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }

  auto operator<=>(const TokenSentence&) const = default;
};

/// Rewrites source tokens [start, end) with `replacement`. start == end is an
/// insertion before token `start`; an empty replacement with end > start is a
/// deletion.
struct Edit {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<std::string> replacement;

  bool is_insertion() const { return start == end; }
  bool is_deletion() const { return end > start && replacement.empty(); }

  auto operator<=>(const Edit&) const = default;
};

std::string to_string(const Edit& edit);

/// Throws ValidationError unless `edit` is in bounds for `source` and is not a
/// no-op.
void validate_edit(const Edit& edit, const TokenSentence& source);

/// One annotator's edit set, sorted by (start, end). Empty means the annotator
/// judged the sentence correct.
struct Annotation {
  int annotator = 0;
  std::vector<Edit> edits;

  bool operator==(const Annotation&) const = default;
};

/// A source sentence with one or more annotations, ordered by annotator id.
struct GoldSentence {
  TokenSentence source;
  std::vector<Annotation> annotations;

  bool operator==(const GoldSentence&) const = default;
};

/// Throws ValidationError if any GoldSentence invariant is broken.
void validate_gold(const GoldSentence& gold);

/// One system's corrected corpus, index-aligned with the sources.
struct SystemOutput {
  std::string name;
  std::vector<TokenSentence> sentences;

  std::size_t size() const { return sentences.size(); }
  bool operator==(const SystemOutput&) const = default;
};

/// One system's correction of a single sentence.
struct Candidate {
  std::string system;
  TokenSentence sentence;

  bool operator==(const Candidate&) const = default;
};

/// Row `index` of each output, as candidates. Throws ValidationError if any
/// output is too short.
std::vector<Candidate> candidates_at(std::span<const SystemOutput> outputs,
                                     std::size_t index);

/// Throws ValidationError unless every output has `length` sentences.
void check_aligned(std::span<const SystemOutput> outputs, std::size_t length);

/// Externally computed per-candidate scores keyed by (system, sentence index).
class ScoreFile {
 public:
  /// Throws ValidationError if the pair is already present.
  void add(const std::string& system, std::size_t sentence, double score);

  /// Throws ValidationError if the pair is missing.
  double score(const std::string& system, std::size_t sentence) const;
  bool contains(const std::string& system, std::size_t sentence) const;

  std::vector<std::string> systems() const;
  const std::map<std::string, std::map<std::size_t, double>>& entries() const {
    return scores_;
  }

 private:
  std::map<std::string, std::map<std::size_t, double>> scores_;
};

// M2 gold format.
std::vector<GoldSentence> parse_m2(std::string_view text);
std::string serialize_m2(std::span<const GoldSentence> sentences);

// Parallel text: one tokenized sentence per line. `label` names the input in
// error messages.
SystemOutput parse_parallel(std::string_view text, std::size_t expected_length,
                            const std::string& label);
std::string serialize_parallel(const SystemOutput& output);

// Score file TSV with header "system<TAB>sentence_index<TAB>score".
ScoreFile parse_score_file(std::string_view text);
std::string serialize_score_file(const ScoreFile& scores);

// File-system wrappers. Loaded SystemOutputs are named after the file stem.
std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

std::vector<GoldSentence> load_m2(const std::filesystem::path& path);
SystemOutput load_parallel(const std::filesystem::path& path,
                           std::size_t expected_length);
/// Loads without a length check; used for the source side of a corpus.
SystemOutput load_parallel(const std::filesystem::path& path);
ScoreFile load_score_file(const std::filesystem::path& path);

/// Source sentences of a gold corpus.
std::vector<TokenSentence> sources_of(std::span<const GoldSentence> gold);

}  // namespace gecomb

#endif  // GECOMB_CORPUS_H_
