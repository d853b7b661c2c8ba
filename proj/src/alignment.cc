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

#include "gecomb/alignment.h"

#include <algorithm>
#include <numeric>

#include "gecomb/error.h"

namespace gecomb {

std::vector<AlignmentOp> align(std::span<const std::string> source,
                               std::span<const std::string> target) {
  const std::size_t n = source.size();
  const std::size_t m = target.size();
  const std::size_t width = m + 1;
  std::vector<std::size_t> cost((n + 1) * width);
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& {
    return cost[i * width + j];
  };

  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diagonal =
          at(i - 1, j - 1) + (source[i - 1] == target[j - 1] ? 0 : 1);
      at(i, j) = std::min({diagonal, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  std::vector<AlignmentOp> ops;
  ops.reserve(n + m);
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const std::size_t here = at(i, j);
    if (i > 0 && j > 0 && source[i - 1] == target[j - 1] &&
        at(i - 1, j - 1) == here) {
      ops.push_back({OpKind::kMatch, {i - 1, i}, {j - 1, j}});
      --i;
      --j;
    } else if (i > 0 && j > 0 && source[i - 1] != target[j - 1] &&
               at(i - 1, j - 1) + 1 == here) {
      ops.push_back({OpKind::kSubstitute, {i - 1, i}, {j - 1, j}});
      --i;
      --j;
    } else if (i > 0 && at(i - 1, j) + 1 == here) {
      ops.push_back({OpKind::kDelete, {i - 1, i}, {j, j}});
      --i;
    } else {
      ops.push_back({OpKind::kInsert, {i, i}, {j - 1, j}});
      --j;
    }
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

std::vector<Edit> extract_edits(const TokenSentence& source,
                                const TokenSentence& hypothesis) {
  const auto ops = align(source.tokens, hypothesis.tokens);
  std::vector<Edit> edits;
  std::size_t k = 0;
  while (k < ops.size()) {
    if (ops[k].kind == OpKind::kMatch) {
      ++k;
      continue;
    }
    const TokenSpan src_begin = ops[k].source;
    const TokenSpan tgt_begin = ops[k].target;
    TokenSpan src_end = src_begin;
    TokenSpan tgt_end = tgt_begin;
    while (k < ops.size() && ops[k].kind != OpKind::kMatch) {
      src_end = ops[k].source;
      tgt_end = ops[k].target;
      ++k;
    }
    Edit edit;
    edit.start = src_begin.start;
    edit.end = src_end.end;
    edit.replacement.assign(
        hypothesis.tokens.begin() + static_cast<std::ptrdiff_t>(tgt_begin.start),
        hypothesis.tokens.begin() + static_cast<std::ptrdiff_t>(tgt_end.end));
    edits.push_back(std::move(edit));
  }
  return edits;
}

bool overlaps(const Edit& a, const Edit& b) {
  if (a.is_insertion() && b.is_insertion()) return a.start == b.start;
  if (a.is_insertion()) return b.start <= a.start && a.start < b.end;
  if (b.is_insertion()) return a.start <= b.start && b.start < a.end;
  return std::max(a.start, b.start) < std::min(a.end, b.end);
}

bool any_overlap(std::span<const Edit> edits) {
  for (std::size_t i = 0; i < edits.size(); ++i) {
    for (std::size_t j = i + 1; j < edits.size(); ++j) {
      if (overlaps(edits[i], edits[j])) return true;
    }
  }
  return false;
}

TokenSentence apply_edits(const TokenSentence& source,
                          std::span<const Edit> edits) {
  std::vector<std::size_t> order(edits.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (const auto& edit : edits) {
    if (edit.start > edit.end || edit.end > source.size()) {
      throw ValidationError("edit " + to_string(edit) +
                            " out of bounds for sentence of length " +
                            std::to_string(source.size()));
    }
  }
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::tie(edits[x].start, edits[x].end) <
           std::tie(edits[y].start, edits[y].end);
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    for (std::size_t prev = 0; prev < k; ++prev) {
      if (overlaps(edits[order[prev]], edits[order[k]])) {
        throw ValidationError("overlapping edits " +
                              to_string(edits[order[prev]]) + " and " +
                              to_string(edits[order[k]]));
      }
    }
  }

  TokenSentence result;
  result.tokens.reserve(source.size());
  std::size_t cursor = 0;
  for (std::size_t idx : order) {
    const Edit& edit = edits[idx];
    result.tokens.insert(result.tokens.end(),
                         source.tokens.begin() + static_cast<std::ptrdiff_t>(cursor),
                         source.tokens.begin() + static_cast<std::ptrdiff_t>(edit.start));
    result.tokens.insert(result.tokens.end(), edit.replacement.begin(),
                         edit.replacement.end());
    cursor = edit.end;
  }
  result.tokens.insert(result.tokens.end(),
                       source.tokens.begin() + static_cast<std::ptrdiff_t>(cursor),
                       source.tokens.end());
  return result;
}

}  // namespace gecomb
