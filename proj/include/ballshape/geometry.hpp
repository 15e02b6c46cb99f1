#ifndef BALLSHAPE_GEOMETRY_HPP
#define BALLSHAPE_GEOMETRY_HPP

#include <Eigen/Core>
#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace ballshape {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

using VertexId = std::int32_t;

struct Triangle {
  VertexId v[3];
  VertexId operator[](int i) const { return v[i]; }
  VertexId& operator[](int i) { return v[i]; }
};

// Closest point on triangle (a,b,c) to p. Ericson, Real-Time Collision
// Detection, 5.1.5.
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b,
                               const Vec3& c);

// Deterministic pairwise-tree sum; the reduction order depends only on the
// element order, so results are bit-stable across runs and thread counts.
double pairwise_sum(const std::vector<double>& values);

}  // namespace ballshape

#endif  // BALLSHAPE_GEOMETRY_HPP
