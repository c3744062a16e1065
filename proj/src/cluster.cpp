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

#include "acl2ml/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "acl2ml/errors.hpp"

namespace acl2ml {

namespace {

constexpr int kMaxIterations = 100;

void check_n(const std::vector<Point>& points, std::size_t n) {
  if (n == 0 || n > points.size()) {
    throw UsageError("cannot form " + std::to_string(n) + " clusters from " + std::to_string(points.size()) +
                     " items");
  }
}

Point mean_of(const std::vector<Point>& points, const std::vector<std::size_t>& members) {
  Point c(points[members.front()].size(), 0.0);
  for (std::size_t m : members) {
    for (std::size_t d = 0; d < c.size(); ++d) c[d] += points[m][d];
  }
  for (double& x : c) x /= static_cast<double>(members.size());
  return c;
}

std::size_t distinct_points(const std::vector<Point>& points) {
  std::set<Point> s(points.begin(), points.end());
  return s.size();
}

// Relabels clusters by ascending minimum member and fills in centroids.
Clustering finish(const std::vector<Point>& points, const std::vector<std::size_t>& raw, std::size_t n,
                  Algorithm a, std::uint64_t seed) {
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < raw.size(); ++i) groups[raw[i]].push_back(i);
  groups.erase(std::remove_if(groups.begin(), groups.end(), [](const auto& g) { return g.empty(); }),
               groups.end());
  std::sort(groups.begin(), groups.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  Clustering out;
  out.algorithm = a;
  out.seed = seed;
  out.assignment.assign(points.size(), 0);
  for (std::size_t j = 0; j < groups.size(); ++j) {
    Cluster c;
    c.members = groups[j];
    c.centroid = mean_of(points, c.members);
    c.index = j;
    for (std::size_t m : c.members) out.assignment[m] = j;
    out.clusters.push_back(std::move(c));
  }
  out.degenerate = distinct_points(points) < n;
  return out;
}

std::size_t nearest(const Point& p, const std::vector<Point>& centers) {
  std::size_t best = 0;
  double bd = distance(p, centers[0]);
  for (std::size_t c = 1; c < centers.size(); ++c) {
    double d = distance(p, centers[c]);
    if (d < bd) {
      bd = d;
      best = c;
    }
  }
  return best;
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  return a == Algorithm::KMeans ? "kmeans" : "farthest-first";
}

std::optional<Algorithm> parse_algorithm(std::string_view s) {
  if (s == "kmeans" || s == "k-means") return Algorithm::KMeans;
  if (s == "farthest-first" || s == "farthestfirst") return Algorithm::FarthestFirst;
  return std::nullopt;
}

std::size_t num_clusters(std::size_t k, int granularity) {
  if (granularity < 1 || granularity > 5) {
    throw UsageError("granularity must be between 1 and 5, got " + std::to_string(granularity));
  }
  return std::max<std::size_t>(1, k / static_cast<std::size_t>(10 - granularity));
}

double distance(const Point& a, const Point& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed ^ (stream * 0xd1342543de82ef95ULL);
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Clustering kmeans(const std::vector<Point>& points, std::size_t n, std::uint64_t seed) {
  check_n(points, n);
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(derive_seed(seed, 1));
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Point> centers;
  for (std::size_t i = 0; i < n; ++i) centers.push_back(points[order[i]]);

  std::vector<std::size_t> assign(points.size(), n);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::size_t c = nearest(points[i], centers);
      if (c != assign[i]) {
        assign[i] = c;
        changed = true;
      }
    }
    // Refill each empty cluster with the point farthest from its centroid.
    std::vector<std::size_t> sizes(n, 0);
    for (std::size_t c : assign) ++sizes[c];
    for (std::size_t c = 0; c < n; ++c) {
      if (sizes[c] != 0) continue;
      std::size_t far = points.size();
      double fd = -1;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (sizes[assign[i]] < 2) continue;
        double d = distance(points[i], centers[assign[i]]);
        if (d > fd) {
          fd = d;
          far = i;
        }
      }
      if (far == points.size()) break;
      --sizes[assign[far]];
      assign[far] = c;
      sizes[c] = 1;
      changed = true;
    }
    std::vector<std::vector<std::size_t>> groups(n);
    for (std::size_t i = 0; i < points.size(); ++i) groups[assign[i]].push_back(i);
    for (std::size_t c = 0; c < n; ++c) {
      if (!groups[c].empty()) centers[c] = mean_of(points, groups[c]);
    }
    if (!changed) break;
  }
  return finish(points, assign, n, Algorithm::KMeans, seed);
}

Clustering farthest_first_from(const std::vector<Point>& points, std::size_t n, std::size_t first) {
  check_n(points, n);
  if (first >= points.size()) throw UsageError("farthest_first: first center out of range");
  std::vector<std::size_t> chosen{first};
  std::vector<double> near(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) near[i] = distance(points[i], points[first]);
  std::vector<bool> taken(points.size(), false);
  taken[first] = true;
  while (chosen.size() < n) {
    std::size_t best = points.size();
    double bd = -1;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!taken[i] && near[i] > bd) {
        bd = near[i];
        best = i;
      }
    }
    chosen.push_back(best);
    taken[best] = true;
    for (std::size_t i = 0; i < points.size(); ++i) near[i] = std::min(near[i], distance(points[i], points[best]));
  }
  std::vector<Point> centers;
  for (std::size_t c : chosen) centers.push_back(points[c]);
  std::vector<std::size_t> assign(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) assign[i] = nearest(points[i], centers);
  // A center always owns itself, even when it duplicates an earlier one.
  for (std::size_t c = 0; c < chosen.size(); ++c) assign[chosen[c]] = c;
  return finish(points, assign, n, Algorithm::FarthestFirst, first);
}

Clustering farthest_first(const std::vector<Point>& points, std::size_t n, std::uint64_t seed) {
  check_n(points, n);
  std::mt19937_64 rng(derive_seed(seed, 2));
  std::size_t first = std::uniform_int_distribution<std::size_t>(0, points.size() - 1)(rng);
  Clustering c = farthest_first_from(points, n, first);
  c.seed = seed;
  return c;
}

Clustering run_clustering(Algorithm a, const std::vector<Point>& points, std::size_t n, std::uint64_t seed) {
  return a == Algorithm::KMeans ? kmeans(points, n, seed) : farthest_first(points, n, seed);
}

double proximity(const std::vector<Point>& points, const Cluster& c, std::size_t member) {
  if (c.members.size() <= 1) return 1.0;
  double maxd = 0;
  for (std::size_t m : c.members) maxd = std::max(maxd, distance(points[m], c.centroid));
  if (maxd == 0) return 1.0;
  double p = 1.0 - distance(points[member], c.centroid) / maxd;
  return std::clamp(p, 0.0, 1.0);
}

bool StableCluster::contains(std::size_t i) const {
  return std::binary_search(members.begin(), members.end(), i);
}

StableCluster aggregate_runs(const std::vector<Clustering>& runs, std::size_t anchor, double threshold) {
  if (runs.empty()) throw UsageError("aggregate_runs: no runs");
  std::map<std::size_t, std::size_t> counts;
  for (const auto& r : runs) {
    if (anchor >= r.assignment.size()) throw UsageError("aggregate_runs: anchor out of range");
    for (std::size_t m : r.cluster_of(anchor).members) ++counts[m];
  }
  StableCluster s;
  s.anchor = anchor;
  for (const auto& [item, count] : counts) {
    double f = static_cast<double>(count) / static_cast<double>(runs.size());
    s.frequency[item] = f;
    if (f >= threshold || item == anchor) s.members.push_back(item);
  }
  return s;
}

std::vector<Clustering> run_many(Algorithm a, const std::vector<Point>& points, std::size_t n, std::size_t runs,
                                 std::uint64_t seed, unsigned threads) {
  std::vector<Clustering> out(runs);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, runs));
  auto work = [&](std::size_t begin) {
    for (std::size_t r = begin; r < runs; r += threads) out[r] = run_clustering(a, points, n, derive_seed(seed, r + 100));
  };
  if (threads <= 1) {
    work(0);
    return out;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex m;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        work(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(m);
        error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace acl2ml
