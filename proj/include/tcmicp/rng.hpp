#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "tcmicp/core.hpp"

namespace tcmicp {

using Rng = std::mt19937_64;

/// Derives an independent stream seed from a base seed and a salt
/// (splitmix64 finalizer). Keeps every seeded stage decoupled so adding a
/// draw in one stage cannot shift another stage's sequence.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// k distinct indices drawn uniformly from [0, n), returned ascending.
inline std::vector<int> sample_indices(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (k >= n) return idx;
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

/// Order-preserving uniform subsample of at most max_points points.
inline PointCloud subsample(const PointCloud& cloud, std::size_t max_points,
                            std::uint64_t seed) {
  if (cloud.size() <= max_points) return cloud;
  Rng rng(seed);
  const std::vector<int> idx = sample_indices(rng, cloud.size(), max_points);
  PointCloud out;
  out.id = cloud.id;
  out.points.reserve(idx.size());
  for (int i : idx) out.points.push_back(cloud.points[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace tcmicp
