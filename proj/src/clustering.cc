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

#include "gecomb/clustering.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "gecomb/error.h"
#include "gecomb/parallel.h"

namespace gecomb {

std::vector<std::vector<double>> sentence_similarity(
    std::span<const TokenSentence> variants) {
  const std::size_t n = variants.size();
  std::vector<std::map<std::string, double>> term_counts(n);
  std::map<std::string, std::size_t> document_frequency;
  for (std::size_t d = 0; d < n; ++d) {
    for (const auto& token : variants[d].tokens) term_counts[d][token] += 1.0;
    for (const auto& [term, _] : term_counts[d]) ++document_frequency[term];
  }

  const double docs = static_cast<double>(n);
  for (auto& counts : term_counts) {
    double norm = 0.0;
    for (auto& [term, weight] : counts) {
      const double df = static_cast<double>(document_frequency[term]);
      weight *= std::log((1.0 + docs) / (1.0 + df)) + 1.0;
      norm += weight * weight;
    }
    norm = std::sqrt(norm);
    for (auto& [_, weight] : counts) weight /= norm;
  }

  std::vector<std::vector<double>> sim(n, std::vector<double>(n, 0.0));
  for (std::size_t a = 0; a < n; ++a) {
    sim[a][a] = 1.0;
    for (std::size_t b = a + 1; b < n; ++b) {
      double dot = 0.0;
      if (term_counts[a].empty() && term_counts[b].empty()) {
        dot = 1.0;
      } else {
        for (const auto& [term, weight] : term_counts[a]) {
          auto it = term_counts[b].find(term);
          if (it != term_counts[b].end()) dot += weight * it->second;
        }
      }
      sim[a][b] = sim[b][a] = std::clamp(dot, 0.0, 1.0);
    }
  }
  return sim;
}

SimilarityMatrix tfidf_similarity(std::span<const SystemOutput> outputs,
                                  std::size_t jobs) {
  const std::size_t n = outputs.size();
  const std::size_t length = n == 0 ? 0 : outputs.front().size();
  check_aligned(outputs, length);

  std::vector<std::vector<std::vector<double>>> per_sentence(length);
  parallel_for(length, jobs, [&](std::size_t i) {
    std::vector<TokenSentence> variants;
    variants.reserve(n);
    for (const auto& output : outputs) variants.push_back(output.sentences[i]);
    per_sentence[i] = sentence_similarity(variants);
  });

  SimilarityMatrix matrix;
  for (const auto& output : outputs) matrix.systems.push_back(output.name);
  matrix.values.assign(n, std::vector<double>(n, 0.0));
  for (const auto& sim : per_sentence) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) matrix.values[a][b] += sim[a][b];
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      matrix.values[a][b] =
          a == b ? 1.0
                 : (length == 0 ? 0.0
                                : std::clamp(matrix.values[a][b] /
                                                 static_cast<double>(length),
                                             0.0, 1.0));
    }
  }
  return matrix;
}

std::vector<Merge> average_linkage(
    const std::vector<std::vector<double>>& distance) {
  const std::size_t n = distance.size();
  struct Active {
    std::size_t node;
    std::vector<std::size_t> members;
  };
  std::vector<Active> active;
  for (std::size_t i = 0; i < n; ++i) active.push_back({i, {i}});

  auto linkage = [&](const Active& x, const Active& y) {
    double sum = 0.0;
    for (std::size_t a : x.members) {
      for (std::size_t b : y.members) sum += distance[a][b];
    }
    return sum / static_cast<double>(x.members.size() * y.members.size());
  };

  std::vector<Merge> merges;
  while (active.size() > 1) {
    std::size_t best_x = 0;
    std::size_t best_y = 1;
    double best = linkage(active[0], active[1]);
    for (std::size_t x = 0; x < active.size(); ++x) {
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        const double d = linkage(active[x], active[y]);
        if (d < best) {
          best = d;
          best_x = x;
          best_y = y;
        }
      }
    }
    Active merged{n + merges.size(), active[best_x].members};
    merged.members.insert(merged.members.end(), active[best_y].members.begin(),
                          active[best_y].members.end());
    std::sort(merged.members.begin(), merged.members.end());
    merges.push_back({active[best_x].node, active[best_y].node, best,
                      merged.members.size()});
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_y));
    active[best_x] = std::move(merged);
  }
  return merges;
}

ClusterResult cluster_systems(std::span<const SystemOutput> outputs,
                              double threshold, std::size_t jobs) {
  if (outputs.size() < 2) {
    throw ValidationError("clustering needs at least 2 systems");
  }
  const std::size_t n = outputs.size();
  ClusterResult result;
  result.similarity = tfidf_similarity(outputs, jobs);

  std::vector<std::vector<double>> distance(n, std::vector<double>(n, 0.0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      distance[a][b] = a == b ? 0.0 : 1.0 - result.similarity.at(a, b);
    }
  }
  result.dendrogram = average_linkage(distance);

  // Average linkage has no inversions, so cutting at the threshold is the
  // same as replaying merges while their distance stays within it.
  std::vector<std::vector<std::size_t>> node_members;
  for (std::size_t i = 0; i < n; ++i) node_members.push_back({i});
  std::vector<bool> absorbed(n + result.dendrogram.size(), false);
  for (const auto& merge : result.dendrogram) {
    if (merge.distance > threshold) break;
    auto members = node_members[merge.left];
    members.insert(members.end(), node_members[merge.right].begin(),
                   node_members[merge.right].end());
    std::sort(members.begin(), members.end());
    absorbed[merge.left] = absorbed[merge.right] = true;
    node_members.push_back(std::move(members));
  }
  for (std::size_t node = 0; node < node_members.size(); ++node) {
    if (absorbed[node]) continue;
    Cluster cluster{node_members[node], node_members[node].front()};
    double best_mean = -1.0;
    for (std::size_t candidate : cluster.members) {
      double sum = 0.0;
      for (std::size_t other : cluster.members) {
        if (other != candidate) sum += result.similarity.at(candidate, other);
      }
      const double mean =
          cluster.members.size() > 1
              ? sum / static_cast<double>(cluster.members.size() - 1)
              : 1.0;
      if (mean > best_mean) {
        best_mean = mean;
        cluster.representative = candidate;
      }
    }
    result.clusters.push_back(std::move(cluster));
  }
  std::sort(result.clusters.begin(), result.clusters.end(),
            [](const Cluster& a, const Cluster& b) {
              return a.members.front() < b.members.front();
            });
  return result;
}

std::string format_cluster_report(const ClusterResult& result) {
  std::vector<std::size_t> cluster_of(result.similarity.size(), 0);
  std::vector<bool> representative(result.similarity.size(), false);
  for (std::size_t c = 0; c < result.clusters.size(); ++c) {
    for (std::size_t m : result.clusters[c].members) cluster_of[m] = c;
    representative[result.clusters[c].representative] = true;
  }
  std::ostringstream out;
  out << "system\tcluster_id\trepresentative\n";
  for (std::size_t i = 0; i < result.similarity.size(); ++i) {
    out << result.similarity.systems[i] << '\t' << cluster_of[i] << '\t'
        << (representative[i] ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string format_similarity_matrix(const SimilarityMatrix& matrix) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << "system";
  for (const auto& name : matrix.systems) out << '\t' << name;
  out << '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out << matrix.systems[i];
    for (std::size_t j = 0; j < matrix.size(); ++j) out << '\t' << matrix.at(i, j);
    out << '\n';
  }
  return out.str();
}

std::string format_dendrogram(const ClusterResult& result) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << "step\tleft\tright\tdistance\tsize\n";
  for (std::size_t k = 0; k < result.dendrogram.size(); ++k) {
    const auto& m = result.dendrogram[k];
    out << k << '\t' << m.left << '\t' << m.right << '\t' << m.distance << '\t'
        << m.size << '\n';
  }
  return out.str();
}

}  // namespace gecomb
