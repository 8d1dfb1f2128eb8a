#pragma once

#include <cstdint>
#include <vector>

#include "tcmicp/core.hpp"

namespace tcmicp {

struct PreprocessConfig {
  int k = 8;                    // cluster count
  double seed_radius = 0.0;     // <= 0 resolves to scene_diameter / (2k)
  double outlier_factor = 3.0;  // multiplier on per-cluster median distance
  int max_kmeans_iters = 50;
  std::uint64_t rng_seed = 0;
};

struct SeedSelection {
  std::vector<Point3> seeds;
  // Set when the exclusion radius had to be halved because every candidate
  // fell within r of an existing seed.
  bool radius_relaxed = false;
};

struct Clustering {
  std::vector<Point3> centroids;
  std::vector<int> assignment;  // per-point nearest-centroid index
};

struct OutlierRemoval {
  PointCloud cloud;
  std::size_t removed_count = 0;
};

/// Picks k well-separated seed points: a random point is chosen, everything
/// within radius r of it is excluded from later draws, repeat.
SeedSelection seed_centroids(const PointCloud& cloud, const PreprocessConfig& cfg);

/// Lloyd iterations from the given seeds until assignments stop changing or
/// max_kmeans_iters is reached. An empty cluster keeps its previous centroid.
Clustering kmeans(const PointCloud& cloud, const std::vector<Point3>& seeds,
                  const PreprocessConfig& cfg);

/// Drops every point whose distance to its cluster centroid exceeds
/// outlier_factor times the in-cluster median distance. Survivor order is
/// preserved and the result is never empty.
OutlierRemoval remove_outliers(const PointCloud& cloud, const Clustering& clustering,
                               const PreprocessConfig& cfg);

/// seed_centroids -> kmeans -> remove_outliers, with k clamped to the cloud
/// size so small clouds pass through.
PointCloud preprocess(const PointCloud& cloud, const PreprocessConfig& cfg);

}  // namespace tcmicp
