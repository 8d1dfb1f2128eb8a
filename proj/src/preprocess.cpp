#include "tcmicp/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tcmicp/kdtree.hpp"
#include "tcmicp/rng.hpp"

namespace tcmicp {

namespace {

void validate(const PreprocessConfig& cfg) {
  if (cfg.k < 1) throw std::invalid_argument("preprocess: k must be >= 1");
  if (cfg.outlier_factor <= 0.0)
    throw std::invalid_argument("preprocess: outlier_factor must be > 0");
  if (cfg.max_kmeans_iters < 1)
    throw std::invalid_argument("preprocess: max_kmeans_iters must be >= 1");
}

double median(std::vector<double>& values) {
  const std::size_t n = values.size();
  std::sort(values.begin(), values.end());
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

int nearest_centroid(const Point3& p, const std::vector<Point3>& centroids) {
  int best = 0;
  double best_d = (p - centroids[0]).squaredNorm();
  for (std::size_t c = 1; c < centroids.size(); ++c) {
    const double d = (p - centroids[c]).squaredNorm();
    if (d < best_d) {  // tie keeps the lowest index
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

}  // namespace

SeedSelection seed_centroids(const PointCloud& cloud, const PreprocessConfig& cfg) {
  validate(cfg);
  const std::size_t n = cloud.size();
  const std::size_t k = static_cast<std::size_t>(cfg.k);
  if (k > n) throw std::invalid_argument("seed_centroids: k exceeds cloud size");

  double radius = cfg.seed_radius;
  if (radius <= 0.0) {
    const double diag = n > 1 ? bounding_box(cloud).diagonal() : 0.0;
    radius = diag > 0.0 ? diag / (2.0 * static_cast<double>(cfg.k)) : 1.0;
  }

  const KdTree tree(cloud);
  Rng rng(cfg.rng_seed);
  SeedSelection out;
  out.seeds.reserve(k);

  std::vector<int> seed_indices;
  std::vector<char> excluded(n, 0);
  std::size_t available = n;
  int halvings = 0;

  while (out.seeds.size() < k) {
    if (available == 0) {
      out.radius_relaxed = true;
      ++halvings;
      if (halvings <= 64) {
        radius *= 0.5;
        std::fill(excluded.begin(), excluded.end(), 0);
        for (int si : seed_indices)
          for (int j : tree.radius_search(cloud.points[static_cast<std::size_t>(si)], radius))
            excluded[static_cast<std::size_t>(j)] = 1;
      } else {
        // Duplicate points can never leave any radius; fall back to ignoring
        // distance entirely.
        std::fill(excluded.begin(), excluded.end(), 0);
        for (int si : seed_indices) excluded[static_cast<std::size_t>(si)] = 1;
      }
      available = static_cast<std::size_t>(
          std::count(excluded.begin(), excluded.end(), 0));
      continue;
    }

    std::uniform_int_distribution<std::size_t> pick(0, available - 1);
    std::size_t target = pick(rng);
    std::size_t chosen = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (excluded[i]) continue;
      if (target == 0) {
        chosen = i;
        break;
      }
      --target;
    }

    seed_indices.push_back(static_cast<int>(chosen));
    out.seeds.push_back(cloud.points[chosen]);
    for (int j : tree.radius_search(cloud.points[chosen], radius))
      excluded[static_cast<std::size_t>(j)] = 1;
    excluded[chosen] = 1;
    available = static_cast<std::size_t>(
        std::count(excluded.begin(), excluded.end(), 0));
  }
  return out;
}

Clustering kmeans(const PointCloud& cloud, const std::vector<Point3>& seeds,
                  const PreprocessConfig& cfg) {
  validate(cfg);
  if (cloud.empty()) throw std::invalid_argument("kmeans: empty cloud");
  if (seeds.empty()) throw std::invalid_argument("kmeans: no seeds");

  const std::size_t n = cloud.size();
  const std::size_t k = seeds.size();
  Clustering out;
  out.centroids = seeds;
  out.assignment.assign(n, -1);

  auto assign = [&]() {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const int c = nearest_centroid(cloud.points[i], out.centroids);
      if (c != out.assignment[i]) {
        out.assignment[i] = c;
        changed = true;
      }
    }
    return changed;
  };

  assign();
  for (int iter = 1; iter < cfg.max_kmeans_iters; ++iter) {
    std::vector<Point3> sums(k, Point3::Zero());
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sums[static_cast<std::size_t>(out.assignment[i])] += cloud.points[i];
      ++counts[static_cast<std::size_t>(out.assignment[i])];
    }
    for (std::size_t c = 0; c < k; ++c)
      if (counts[c] > 0) out.centroids[c] = sums[c] / static_cast<double>(counts[c]);
    if (!assign()) break;
  }
  return out;
}

OutlierRemoval remove_outliers(const PointCloud& cloud, const Clustering& clustering,
                               const PreprocessConfig& cfg) {
  validate(cfg);
  const std::size_t n = cloud.size();
  if (clustering.assignment.size() != n)
    throw std::invalid_argument("remove_outliers: assignment size mismatch");
  const std::size_t k = clustering.centroids.size();

  std::vector<double> dist(n);
  std::vector<std::vector<double>> per_cluster(k);
  for (std::size_t i = 0; i < n; ++i) {
    const int c = clustering.assignment[i];
    if (c < 0 || static_cast<std::size_t>(c) >= k)
      throw std::invalid_argument("remove_outliers: assignment index out of range");
    dist[i] = (cloud.points[i] - clustering.centroids[static_cast<std::size_t>(c)]).norm();
    per_cluster[static_cast<std::size_t>(c)].push_back(dist[i]);
  }

  std::vector<double> threshold(k, std::numeric_limits<double>::infinity());
  for (std::size_t c = 0; c < k; ++c)
    if (!per_cluster[c].empty())
      threshold[c] = cfg.outlier_factor * median(per_cluster[c]);

  OutlierRemoval out;
  out.cloud.id = cloud.id;
  out.cloud.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i] > threshold[static_cast<std::size_t>(clustering.assignment[i])]) {
      ++out.removed_count;
    } else {
      out.cloud.points.push_back(cloud.points[i]);
    }
  }

  if (out.cloud.empty()) {
    // Degenerate thresholds must not erase the whole cloud; keep the point
    // closest to its centroid.
    std::size_t keep = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (dist[i] < dist[keep]) keep = i;
    out.cloud.points.push_back(cloud.points[keep]);
    out.removed_count = n - 1;
  }
  return out;
}

PointCloud preprocess(const PointCloud& cloud, const PreprocessConfig& cfg) {
  if (cloud.empty()) throw std::invalid_argument("preprocess: empty cloud");
  PreprocessConfig local = cfg;
  local.k = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(std::max(1, cfg.k)), cloud.size()));
  const SeedSelection seeds = seed_centroids(cloud, local);
  const Clustering clusters = kmeans(cloud, seeds.seeds, local);
  return remove_outliers(cloud, clusters, local).cloud;
}

}  // namespace tcmicp
