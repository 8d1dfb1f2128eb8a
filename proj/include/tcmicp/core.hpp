#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcmicp {

using Point3 = Eigen::Vector3d;

/// An ordered set of 3D points. Point order is stable: every operation that
/// filters or transforms a cloud preserves the relative order of survivors.
struct PointCloud {
  std::vector<Point3> points;
  std::string id;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Axis-aligned bounding box, min <= max componentwise.
struct Aabb {
  Point3 min;
  Point3 max;

  double diagonal() const { return (max - min).norm(); }
  Point3 center() const { return 0.5 * (min + max); }
  Point3 extent() const { return max - min; }
};

/// Rigid motion p -> R*p + t with R orthonormal, det(R) = +1.
struct RigidTransform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static RigidTransform identity() { return {}; }

  Point3 operator()(const Point3& p) const { return rotation * p + translation; }
};

// Max-abs entry of R^T R - I must stay below this for a transform to count
// as rigid anywhere in the toolkit.
inline constexpr double kRigidityTol = 1e-9;

bool is_rotation(const Eigen::Matrix3d& r, double tol = kRigidityTol);
void require_rigid(const RigidTransform& t);

RigidTransform compose(const RigidTransform& a, const RigidTransform& b);
RigidTransform inverse(const RigidTransform& t);

/// Angle (radians) of the relative rotation between two transforms, plus the
/// translation gap. Used for comparing a recovered transform to ground truth.
double rotation_angle_between(const RigidTransform& a, const RigidTransform& b);
double translation_distance(const RigidTransform& a, const RigidTransform& b);

PointCloud apply_transform(const PointCloud& cloud, const RigidTransform& t);

Point3 centroid(const PointCloud& cloud);
Aabb bounding_box(const PointCloud& cloud);
Aabb bounding_box(const std::vector<PointCloud>& clouds);

RigidTransform rotation_about_z(double angle_rad);

}  // namespace tcmicp
