#include "tcmicp/core.hpp"

#include <cmath>

namespace tcmicp {

bool is_rotation(const Eigen::Matrix3d& r, double tol) {
  const Eigen::Matrix3d gram = r.transpose() * r - Eigen::Matrix3d::Identity();
  if (gram.cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(r.determinant() - 1.0) <= tol;
}

void require_rigid(const RigidTransform& t) {
  if (!t.rotation.allFinite() || !t.translation.allFinite())
    throw std::invalid_argument("rigid transform has non-finite entries");
  if (!is_rotation(t.rotation))
    throw std::invalid_argument("rotation is not orthonormal with det +1");
}

RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
  RigidTransform out;
  out.rotation = a.rotation * b.rotation;
  out.translation = a.rotation * b.translation + a.translation;
  return out;
}

RigidTransform inverse(const RigidTransform& t) {
  RigidTransform out;
  out.rotation = t.rotation.transpose();
  out.translation = -(out.rotation * t.translation);
  return out;
}

double rotation_angle_between(const RigidTransform& a, const RigidTransform& b) {
  const Eigen::Matrix3d rel = a.rotation * b.rotation.transpose();
  // trace(R) = 1 + 2 cos(theta); clamp against fp drift outside [-1, 1].
  const double c = std::clamp((rel.trace() - 1.0) * 0.5, -1.0, 1.0);
  return std::acos(c);
}

double translation_distance(const RigidTransform& a, const RigidTransform& b) {
  return (a.translation - b.translation).norm();
}

PointCloud apply_transform(const PointCloud& cloud, const RigidTransform& t) {
  if (cloud.empty()) throw std::invalid_argument("apply_transform: empty cloud");
  require_rigid(t);
  PointCloud out;
  out.id = cloud.id;
  out.points.reserve(cloud.size());
  for (const Point3& p : cloud.points) out.points.push_back(t(p));
  return out;
}

Point3 centroid(const PointCloud& cloud) {
  if (cloud.empty()) throw std::invalid_argument("centroid: empty cloud");
  Point3 sum = Point3::Zero();
  for (const Point3& p : cloud.points) sum += p;
  return sum / static_cast<double>(cloud.size());
}

Aabb bounding_box(const PointCloud& cloud) {
  if (cloud.empty()) throw std::invalid_argument("bounding_box: empty cloud");
  Aabb box{cloud.points.front(), cloud.points.front()};
  for (const Point3& p : cloud.points) {
    box.min = box.min.cwiseMin(p);
    box.max = box.max.cwiseMax(p);
  }
  return box;
}

Aabb bounding_box(const std::vector<PointCloud>& clouds) {
  if (clouds.empty()) throw std::invalid_argument("bounding_box: no clouds");
  Aabb box = bounding_box(clouds.front());
  for (std::size_t i = 1; i < clouds.size(); ++i) {
    const Aabb b = bounding_box(clouds[i]);
    box.min = box.min.cwiseMin(b.min);
    box.max = box.max.cwiseMax(b.max);
  }
  return box;
}

RigidTransform rotation_about_z(double angle_rad) {
  RigidTransform t;
  t.rotation = Eigen::AngleAxisd(angle_rad, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  return t;
}

}  // namespace tcmicp
