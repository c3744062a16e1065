/* Copyright 2026 The acl2ml Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef ACL2ML_CLUSTER_HPP_
#define ACL2ML_CLUSTER_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace acl2ml {

using Point = std::vector<double>;

enum class Algorithm { KMeans, FarthestFirst };
std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view s);

struct Cluster {
  std::vector<std::size_t> members;  // ascending
  Point centroid;
  std::size_t index = 0;  // rank by minimum member
};

struct Clustering {
  std::vector<Cluster> clusters;
  std::vector<std::size_t> assignment;  // item -> cluster index
  Algorithm algorithm = Algorithm::KMeans;
  std::uint64_t seed = 0;
  // Fewer distinct points than requested clusters.
  bool degenerate = false;

  const Cluster& cluster_of(std::size_t item) const { return clusters[assignment[item]]; }
};

// n = max(1, floor(k / (10 - g))). Throws UsageError unless 1 <= g <= 5.
std::size_t num_clusters(std::size_t k, int granularity);

double distance(const Point& a, const Point& b);


// Lloyd iteration from n distinct seeded starting points. Throws UsageError
// unless 1 <= n <= |points|.
Clustering kmeans(const std::vector<Point>& points, std::size_t n, std::uint64_t seed);
Clustering farthest_first(const std::vector<Point>& points, std::size_t n, std::uint64_t seed);
Clustering farthest_first_from(const std::vector<Point>& points, std::size_t n, std::size_t first);

Clustering run_clustering(Algorithm a, const std::vector<Point>& points, std::size_t n, std::uint64_t seed);

// 1 - d/maxd against the cluster centroid; 1 for singletons and zero spread.
double proximity(const std::vector<Point>& points, const Cluster& c, std::size_t member);

struct StableCluster {
  std::size_t anchor = 0;
  std::vector<std::size_t> members;      // ascending, includes the anchor
  std::map<std::size_t, double> frequency;  // every item ever co-clustered

  bool contains(std::size_t i) const;
};

StableCluster aggregate_runs(const std::vector<Clustering>& runs, std::size_t anchor, double threshold = 0.6);

// `runs` independent clusterings with seeds derived from `seed`, spread over
// worker threads. The result does not depend on the thread count.
std::vector<Clustering> run_many(Algorithm a, const std::vector<Point>& points, std::size_t n, std::size_t runs,
                                 std::uint64_t seed, unsigned threads = 0);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace acl2ml

#endif  // ACL2ML_CLUSTER_HPP_
