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

#include "gecomb/corpus.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "gecomb/alignment.h"
#include "gecomb/error.h"

namespace gecomb {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

// Splits on '\n'. A trailing newline does not produce a final empty line.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  for (auto& line : lines) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  }
  return lines;
}

std::vector<std::string_view> split_on(std::string_view text,
                                       std::string_view sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t hit = text.find(sep, pos);
    if (hit == std::string_view::npos) {
      parts.push_back(text.substr(pos));
      return parts;
    }
    parts.push_back(text.substr(pos, hit - pos));
    pos = hit + sep.size();
  }
}

bool all_space(std::string_view s) {
  return std::all_of(s.begin(), s.end(), is_space);
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

struct PendingEdit {
  Edit edit;
  std::size_t line;
};

GoldSentence finish_stanza(TokenSentence source,
                           std::map<int, std::vector<PendingEdit>> edits,
                           std::size_t stanza_line) {
  GoldSentence gold{std::move(source), {}};
  if (edits.empty()) {
    gold.annotations.push_back({0, {}});
    return gold;
  }
  for (auto& [annotator, pending] : edits) {
    Annotation annotation{annotator, {}};
    for (auto& p : pending) {
      try {
        validate_edit(p.edit, gold.source);
      } catch (const ValidationError& e) {
        throw ValidationError("line " + std::to_string(p.line) + ": " +
                              e.what());
      }
      annotation.edits.push_back(std::move(p.edit));
    }
    std::sort(annotation.edits.begin(), annotation.edits.end());
    for (std::size_t i = 0; i < annotation.edits.size(); ++i) {
      for (std::size_t j = i + 1; j < annotation.edits.size(); ++j) {
        if (overlaps(annotation.edits[i], annotation.edits[j])) {
          throw ValidationError(
              "stanza at line " + std::to_string(stanza_line) +
              ": annotator " + std::to_string(annotator) +
              " has overlapping edits " + to_string(annotation.edits[i]) +
              " and " + to_string(annotation.edits[j]));
        }
      }
    }
    gold.annotations.push_back(std::move(annotation));
  }
  return gold;
}

}  // namespace

TokenSentence TokenSentence::parse(std::string_view line) {
  TokenSentence sentence;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t begin = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > begin) sentence.tokens.emplace_back(line.substr(begin, i - begin));
  }
  return sentence;
}

std::string TokenSentence::str() const { return join(tokens); }

std::string to_string(const Edit& edit) {
  return "(" + std::to_string(edit.start) + "," + std::to_string(edit.end) +
         ",[" + join(edit.replacement) + "])";
}

void validate_edit(const Edit& edit, const TokenSentence& source) {
  if (edit.start > edit.end || edit.end > source.size()) {
    throw ValidationError("edit " + to_string(edit) +
                          " out of bounds for sentence of length " +
                          std::to_string(source.size()));
  }
  for (const auto& token : edit.replacement) {
    if (token.empty() ||
        std::any_of(token.begin(), token.end(), is_space)) {
      throw ValidationError("edit " + to_string(edit) +
                            " has an empty or whitespace token");
    }
  }
  if (std::equal(source.tokens.begin() + edit.start,
                 source.tokens.begin() + edit.end, edit.replacement.begin(),
                 edit.replacement.end())) {
    throw ValidationError("edit " + to_string(edit) + " is a no-op");
  }
}

void validate_gold(const GoldSentence& gold) {
  if (gold.annotations.empty()) {
    throw ValidationError("gold sentence without annotations");
  }
  for (std::size_t a = 0; a < gold.annotations.size(); ++a) {
    const auto& annotation = gold.annotations[a];
    if (annotation.annotator < 0 ||
        (a > 0 && gold.annotations[a - 1].annotator >= annotation.annotator)) {
      throw ValidationError("annotator ids must be non-negative and increasing");
    }
    for (const auto& edit : annotation.edits) validate_edit(edit, gold.source);
    if (!std::is_sorted(annotation.edits.begin(), annotation.edits.end())) {
      throw ValidationError("annotation edits are not sorted");
    }
    if (any_overlap(annotation.edits)) {
      throw ValidationError("annotator " +
                            std::to_string(annotation.annotator) +
                            " has overlapping edits");
    }
  }
}

void ScoreFile::add(const std::string& system, std::size_t sentence,
                    double score) {
  auto [it, inserted] = scores_[system].emplace(sentence, score);
  if (!inserted) {
    throw ValidationError("duplicate score for system '" + system +
                          "', sentence " + std::to_string(sentence));
  }
}

double ScoreFile::score(const std::string& system, std::size_t sentence) const {
  auto sys = scores_.find(system);
  if (sys != scores_.end()) {
    auto it = sys->second.find(sentence);
    if (it != sys->second.end()) return it->second;
  }
  throw ValidationError("missing score for system '" + system +
                        "', sentence " + std::to_string(sentence));
}

bool ScoreFile::contains(const std::string& system,
                         std::size_t sentence) const {
  auto sys = scores_.find(system);
  return sys != scores_.end() && sys->second.count(sentence) > 0;
}

std::vector<std::string> ScoreFile::systems() const {
  std::vector<std::string> names;
  for (const auto& [name, _] : scores_) names.push_back(name);
  return names;
}

std::vector<GoldSentence> parse_m2(std::string_view text) {
  std::vector<GoldSentence> corpus;
  const auto lines = split_lines(text);

  bool in_stanza = false;
  std::size_t stanza_line = 0;
  TokenSentence source;
  std::map<int, std::vector<PendingEdit>> edits;

  auto flush = [&] {
    if (!in_stanza) return;
    corpus.push_back(finish_stanza(std::move(source), std::move(edits),
                                   stanza_line));
    source = {};
    edits.clear();
    in_stanza = false;
  };

  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    std::string_view line = lines[n];
    if (all_space(line)) {
      flush();
      continue;
    }
    if (line.size() < 2 || line[1] != ' ' || (line[0] != 'S' && line[0] != 'A')) {
      throw ParseError("expected an 'S ' or 'A ' line", line_no);
    }
    if (line[0] == 'S') {
      if (in_stanza) throw ParseError("'S' line inside a stanza", line_no);
      source = TokenSentence::parse(line.substr(2));
      if (source.empty()) throw ParseError("empty source sentence", line_no);
      in_stanza = true;
      stanza_line = line_no;
      continue;
    }
    if (!in_stanza) throw ParseError("'A' line before any 'S' line", line_no);

    const auto fields = split_on(line.substr(2), "|||");
    if (fields.size() != 6) {
      throw ParseError("expected 6 '|||'-separated fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    const auto span = TokenSentence::parse(fields[0]);
    long start = 0;
    long end = 0;
    int annotator = 0;
    if (span.size() != 2 || !parse_int(span.tokens[0], start) ||
        !parse_int(span.tokens[1], end)) {
      throw ParseError("malformed span '" + std::string(fields[0]) + "'",
                       line_no);
    }
    auto annotator_field = TokenSentence::parse(fields[5]);
    if (annotator_field.size() != 1 ||
        !parse_int(annotator_field.tokens[0], annotator) || annotator < 0) {
      throw ParseError("malformed annotator id '" + std::string(fields[5]) + "'",
                       line_no);
    }
    if (start == -1 && end == -1) {
      edits[annotator];  // explicit "no correction needed"
      continue;
    }
    if (start < 0 || end < 0) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": negative span " + std::to_string(start) + " " +
                            std::to_string(end));
    }
    // Only the first of several "||"-separated alternatives is kept.
    std::string_view correction = split_on(fields[2], "||").front();
    Edit edit{static_cast<std::size_t>(start), static_cast<std::size_t>(end),
              {}};
    if (correction != "-NONE-") {
      edit.replacement = TokenSentence::parse(correction).tokens;
    }
    edits[annotator].push_back({std::move(edit), line_no});
  }
  flush();
  return corpus;
}

std::string serialize_m2(std::span<const GoldSentence> sentences) {
  std::ostringstream out;
  for (const auto& gold : sentences) {
    out << "S " << gold.source.str() << '\n';
    const bool implicit_empty = gold.annotations.size() == 1 &&
                                gold.annotations[0].annotator == 0 &&
                                gold.annotations[0].edits.empty();
    if (!implicit_empty) {
      for (const auto& annotation : gold.annotations) {
        if (annotation.edits.empty()) {
          out << "A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||"
              << annotation.annotator << '\n';
          continue;
        }
        for (const auto& edit : annotation.edits) {
          out << "A " << edit.start << ' ' << edit.end << "|||UNK|||"
              << join(edit.replacement) << "|||REQUIRED|||-NONE-|||"
              << annotation.annotator << '\n';
        }
      }
    }
    out << '\n';
  }
  return out.str();
}

SystemOutput parse_parallel(std::string_view text, std::size_t expected_length,
                            const std::string& label) {
  SystemOutput output{label, {}};
  const auto lines = split_lines(text);
  if (lines.size() != expected_length) {
    throw ValidationError(label + ": expected " +
                          std::to_string(expected_length) + " sentences, found " +
                          std::to_string(lines.size()));
  }
  output.sentences.reserve(lines.size());
  for (std::size_t n = 0; n < lines.size(); ++n) {
    auto sentence = TokenSentence::parse(lines[n]);
    if (sentence.empty()) {
      throw ParseError(label + ": empty sentence", n + 1);
    }
    output.sentences.push_back(std::move(sentence));
  }
  return output;
}

std::string serialize_parallel(const SystemOutput& output) {
  std::string text;
  for (const auto& sentence : output.sentences) {
    text += sentence.str();
    text += '\n';
  }
  return text;
}

ScoreFile parse_score_file(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != "system\tsentence_index\tscore") {
    throw ParseError("score file must start with header "
                     "'system<TAB>sentence_index<TAB>score'",
                     1);
  }
  ScoreFile scores;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    if (lines[n].empty()) continue;
    const auto fields = split_on(lines[n], "\t");
    std::size_t index = 0;
    if (fields.size() != 3 || fields[0].empty() ||
        !parse_int(fields[1], index)) {
      throw ParseError("expected system<TAB>sentence_index<TAB>score", n + 1);
    }
    double value = 0.0;
    try {
      std::size_t used = 0;
      std::string field(fields[2]);
      value = std::stod(field, &used);
      if (used != field.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("malformed score '" + std::string(fields[2]) + "'",
                       n + 1);
    }
    try {
      scores.add(std::string(fields[0]), index, value);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), n + 1);
    }
  }
  return scores;
}

std::string serialize_score_file(const ScoreFile& scores) {
  std::ostringstream out;
  out.precision(17);
  out << "system\tsentence_index\tscore\n";
  for (const auto& [system, per_sentence] : scores.entries()) {
    for (const auto& [index, value] : per_sentence) {
      out << system << '\t' << index << '\t' << value << '\n';
    }
  }
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return buffer.str();
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("error writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename onto " + path.string());
  }
}

std::vector<GoldSentence> load_m2(const std::filesystem::path& path) {
  try {
    return parse_m2(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

SystemOutput load_parallel(const std::filesystem::path& path,
                           std::size_t expected_length) {
  auto output = parse_parallel(read_file(path), expected_length, path.string());
  output.name = path.stem().string();
  return output;
}

SystemOutput load_parallel(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const auto lines = split_lines(text);
  auto output = parse_parallel(text, lines.size(), path.string());
  output.name = path.stem().string();
  return output;
}

ScoreFile load_score_file(const std::filesystem::path& path) {
  try {
    return parse_score_file(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<Candidate> candidates_at(std::span<const SystemOutput> outputs,
                                     std::size_t index) {
  std::vector<Candidate> candidates;
  candidates.reserve(outputs.size());
  for (const auto& output : outputs) {
    if (index >= output.size()) {
      throw ValidationError("output '" + output.name + "' has no sentence " +
                            std::to_string(index));
    }
    candidates.push_back({output.name, output.sentences[index]});
  }
  return candidates;
}

void check_aligned(std::span<const SystemOutput> outputs, std::size_t length) {
  for (const auto& output : outputs) {
    if (output.size() != length) {
      throw ValidationError("output '" + output.name + "' has " +
                            std::to_string(output.size()) +
                            " sentences, expected " + std::to_string(length));
    }
  }
}

std::vector<TokenSentence> sources_of(std::span<const GoldSentence> gold) {
  std::vector<TokenSentence> sources;
  sources.reserve(gold.size());
  for (const auto& g : gold) sources.push_back(g.source);
  return sources;
}

}  // namespace gecomb
