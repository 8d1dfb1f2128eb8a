#pragma once

#include <vector>

#include "tcmicp/core.hpp"

namespace tcmicp {

/// Static KD-tree over a point cloud. Split axis cycles x -> y -> z with
/// depth; queries are exact (they agree with a linear scan, ties broken by
/// the lowest point index). Immutable after construction and safe to query
/// from several threads at once.
class KdTree {
 public:
  struct Hit {
    int index = -1;
    double dist_sq = 0.0;
  };

  explicit KdTree(const PointCloud& cloud, int leaf_size = 16);

  Hit nearest(const Point3& query) const;
  /// Nearest neighbor ignoring one index; used for intra-cloud closest pairs.
  Hit nearest(const Point3& query, int skip_index) const;

  /// Indices of all points with ||p - query|| <= radius, ascending.
  std::vector<int> radius_search(const Point3& query, double radius) const;

  std::size_t size() const { return points_.size(); }
  const Point3& point(int index) const { return points_[static_cast<std::size_t>(index)]; }

 private:
  struct Node {
    int left = -1;       // child node ids; -1 marks a leaf
    int right = -1;
    int begin = 0;       // leaf range into order_
    int end = 0;
    int axis = 0;
    double split = 0.0;
  };

  int build(int begin, int end, int depth);
  void search(int node, const Point3& query, int skip, Hit& best) const;
  void search_radius(int node, const Point3& query, double radius_sq,
                     std::vector<int>& out) const;

  std::vector<Point3> points_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
  int leaf_size_;
};

/// Minimum squared distance over all distinct point pairs, via one
/// nearest-other-point query per point (no O(n^2) scan).
double closest_pair_sq(const PointCloud& cloud);

}  // namespace tcmicp
