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

#ifndef GECOMB_CLUSTERING_H_
#define GECOMB_CLUSTERING_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gecomb/corpus.h"

namespace gecomb {

/// Symmetric matrix of mean cosine similarities with a unit diagonal.
struct SimilarityMatrix {
  std::vector<std::string> systems;
  std::vector<std::vector<double>> values;

  double at(std::size_t i, std::size_t j) const { return values[i][j]; }
  std::size_t size() const { return systems.size(); }
};

/// Pairwise cosine similarity of TF-IDF vectors of one sentence's variants.
/// Documents are the variants; idf = ln((1 + N) / (1 + df)) + 1; term
/// frequency is the raw token count; vectors are L2-normalized.
std::vector<std::vector<double>> sentence_similarity(
    std::span<const TokenSentence> variants);

/// Per-sentence similarities averaged over the corpus.
SimilarityMatrix tfidf_similarity(std::span<const SystemOutput> outputs,
                                  std::size_t jobs = 1);

/// One agglomeration step. Node ids below the number of leaves are leaves;
/// merge k creates node leaves + k.
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double distance = 0.0;
  std::size_t size = 0;
};

/// Average-linkage agglomerative clustering over a distance matrix. Ties merge
/// the pair with the smallest member indices first.
std::vector<Merge> average_linkage(
    const std::vector<std::vector<double>>& distance);

struct Cluster {
  std::vector<std::size_t> members;  // ascending system indices
  std::size_t representative = 0;
};

struct ClusterResult {
  SimilarityMatrix similarity;
  std::vector<Merge> dendrogram;
  std::vector<Cluster> clusters;  // ordered by smallest member
};

/// Clusters systems on distance 1 - similarity, cutting the dendrogram at
/// `threshold` (merges with distance <= threshold are kept). Each cluster's
/// representative has the highest mean similarity to the other members, input
/// order on ties. Throws ValidationError for fewer than two systems.
ClusterResult cluster_systems(std::span<const SystemOutput> outputs,
                              double threshold, std::size_t jobs = 1);

/// TSV: system, cluster_id, representative (0/1).
std::string format_cluster_report(const ClusterResult& result);
/// TSV with a header row of system names.
std::string format_similarity_matrix(const SimilarityMatrix& matrix);
/// TSV: step, left, right, distance, size.
std::string format_dendrogram(const ClusterResult& result);

}  // namespace gecomb

#endif  // GECOMB_CLUSTERING_H_
