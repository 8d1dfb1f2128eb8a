#include "tcmicp/kdtree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace tcmicp {

KdTree::KdTree(const PointCloud& cloud, int leaf_size)
    : points_(cloud.points), leaf_size_(std::max(1, leaf_size)) {
  if (points_.empty()) throw std::invalid_argument("KdTree: empty cloud");
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), 0);
  nodes_.reserve(2 * points_.size() / static_cast<std::size_t>(leaf_size_) + 2);
  root_ = build(0, static_cast<int>(points_.size()), 0);
}

int KdTree::build(int begin, int end, int depth) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  nodes_[id].begin = begin;
  nodes_[id].end = end;
  if (end - begin <= leaf_size_) return id;

  const int axis = depth % 3;
  const int mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](int a, int b) { return points_[a][axis] < points_[b][axis]; });
  const double split = points_[order_[mid]][axis];

  nodes_[id].axis = axis;
  nodes_[id].split = split;
  const int left = build(begin, mid, depth + 1);
  const int right = build(mid, end, depth + 1);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

KdTree::Hit KdTree::nearest(const Point3& query) const { return nearest(query, -1); }

KdTree::Hit KdTree::nearest(const Point3& query, int skip_index) const {
  Hit best;
  best.dist_sq = std::numeric_limits<double>::infinity();
  search(root_, query, skip_index, best);
  return best;
}

void KdTree::search(int node, const Point3& query, int skip, Hit& best) const {
  const Node& n = nodes_[node];
  if (n.left < 0) {
    for (int i = n.begin; i < n.end; ++i) {
      const int idx = order_[i];
      if (idx == skip) continue;
      const double d = (points_[idx] - query).squaredNorm();
      if (d < best.dist_sq || (d == best.dist_sq && idx < best.index)) {
        best.dist_sq = d;
        best.index = idx;
      }
    }
    return;
  }
  const double delta = query[n.axis] - n.split;
  const int near = delta < 0.0 ? n.left : n.right;
  const int far = delta < 0.0 ? n.right : n.left;
  search(near, query, skip, best);
  // Strict comparison: an equally distant point on the far side may carry a
  // lower index, and the tie rule requires it.
  if (delta * delta <= best.dist_sq) search(far, query, skip, best);
}

std::vector<int> KdTree::radius_search(const Point3& query, double radius) const {
  std::vector<int> out;
  if (radius < 0.0) return out;
  search_radius(root_, query, radius * radius, out);
  std::sort(out.begin(), out.end());
  return out;
}

void KdTree::search_radius(int node, const Point3& query, double radius_sq,
                           std::vector<int>& out) const {
  const Node& n = nodes_[node];
  if (n.left < 0) {
    for (int i = n.begin; i < n.end; ++i) {
      const int idx = order_[i];
      if ((points_[idx] - query).squaredNorm() <= radius_sq) out.push_back(idx);
    }
    return;
  }
  const double delta = query[n.axis] - n.split;
  const int near = delta < 0.0 ? n.left : n.right;
  const int far = delta < 0.0 ? n.right : n.left;
  search_radius(near, query, radius_sq, out);
  if (delta * delta <= radius_sq) search_radius(far, query, radius_sq, out);
}

double closest_pair_sq(const PointCloud& cloud) {
  if (cloud.size() < 2)
    throw std::invalid_argument("closest_pair_sq: need at least 2 points");
  const KdTree tree(cloud);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const KdTree::Hit hit = tree.nearest(cloud.points[i], static_cast<int>(i));
    best = std::min(best, hit.dist_sq);
    if (best == 0.0) break;  // duplicate points, cannot improve
  }
  return best;
}

}  // namespace tcmicp
