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

#ifndef GECOMB_ALIGNMENT_H_
#define GECOMB_ALIGNMENT_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gecomb/corpus.h"

namespace gecomb {

enum class OpKind { kMatch, kSubstitute, kInsert, kDelete };

struct TokenSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const TokenSpan&) const = default;
};

/// One cell step of a token-level Levenshtein traceback. Match and substitute
/// consume one token on each side, insert only on the target side, delete only
/// on the source side.
struct AlignmentOp {
  OpKind kind = OpKind::kMatch;
  TokenSpan source;
  TokenSpan target;

  bool operator==(const AlignmentOp&) const = default;
};

/// Unit-cost token alignment. Among optimal alignments the traceback (run from
/// the bottom-right cell) prefers match, then substitute, then delete, then
/// insert.
std::vector<AlignmentOp> align(std::span<const std::string> source,
                               std::span<const std::string> target);

/// Minimal span edits turning `source` into `hypothesis`. Maximal runs of
/// non-match operations are merged, so consecutive edits are always separated
/// by at least one unchanged token. Result is sorted by (start, end).
std::vector<Edit> extract_edits(const TokenSentence& source,
                                const TokenSentence& hypothesis);

/// Applies non-overlapping, in-bounds edits. Throws ValidationError otherwise.
TokenSentence apply_edits(const TokenSentence& source,
                          std::span<const Edit> edits);

/// Conflict predicate shared by voting, application and gold validation.
/// Non-empty spans conflict when they intersect. An insertion at i conflicts
/// with another insertion at i and with any span s..e where s <= i < e; it
/// does not conflict with a span ending at i.
bool overlaps(const Edit& a, const Edit& b);

/// True if any pair in `edits` overlaps.
bool any_overlap(std::span<const Edit> edits);

}  // namespace gecomb

#endif  // GECOMB_ALIGNMENT_H_
