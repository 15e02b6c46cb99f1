#ifndef BALLSHAPE_MESH_HPP
#define BALLSHAPE_MESH_HPP

#include <array>
#include <string>
#include <vector>

#include "ballshape/geometry.hpp"

namespace ballshape {

enum class MeshFormat { Off, Obj };

struct MeshMeasures {
  double area = 0.0;
  double volume = 0.0;
  int euler_characteristic = 0;
  int genus = 0;
};

// Closed oriented triangle mesh. Immutable after validation: all members
// are read-only from the outside and every operation on it is a pure read,
// so sharing across threads is safe.
class TriangleMesh {
 public:
  // Validates topology (closed, manifold, orientable), repairs orientation
  // to globally consistent outward, rejects degenerate faces and non-finite
  // coordinates.
  TriangleMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }
  int edge_count() const { return edge_count_; }

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const Vec3& vertex(VertexId v) const { return vertices_[v]; }
  const Triangle& triangle(int t) const { return triangles_[t]; }

  const std::vector<std::vector<VertexId>>& vertex_neighbors() const {
    return vertex_neighbors_;
  }
  const std::vector<std::vector<int>>& vertex_triangles() const {
    return vertex_triangles_;
  }

  double triangle_area(int t) const;
  Vec3 triangle_normal(int t) const;  // unit, outward
  Vec3 triangle_centroid(int t) const;

  double mean_edge_length() const { return mean_edge_length_; }
  double min_edge_length() const { return min_edge_length_; }
  double max_edge_length() const { return max_edge_length_; }

  void bounding_box(Vec3& lo, Vec3& hi) const;
  double bounding_box_diagonal() const;

  // Largest pairwise vertex distance.
  double diameter() const;

  // Mesh with identical connectivity and new vertex positions; re-validates.
  TriangleMesh with_vertices(std::vector<Vec3> new_vertices) const;

 private:
  std::vector<Vec3> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<std::vector<VertexId>> vertex_neighbors_;
  std::vector<std::vector<int>> vertex_triangles_;
  int edge_count_ = 0;
  double mean_edge_length_ = 0.0;
  double min_edge_length_ = 0.0;
  double max_edge_length_ = 0.0;

  void validate_and_repair();
};

MeshMeasures measures(const TriangleMesh& mesh);

// Signed volume by the tetrahedron-fan formula sum det(v0,v1,v2)/6. Used as
// the independent cross-check of the divergence-theorem volume.
double tetrahedron_fan_volume(const TriangleMesh& mesh);

TriangleMesh load_mesh(const std::string& path);
TriangleMesh load_mesh(const std::string& path, MeshFormat format);
void save_mesh(const TriangleMesh& mesh, const std::string& path);

// Symmetric vertex-to-surface Hausdorff distance.
double hausdorff_distance(const TriangleMesh& a, const TriangleMesh& b);

// Volume of the symmetric difference estimated on a grid_res^3 voxel grid
// over the joint bounding box; inside tests by ray parity with jittered
// retries on degenerate hits.
double char_fn_distance(const TriangleMesh& a, const TriangleMesh& b,
                        int grid_res);

bool point_inside_mesh(const TriangleMesh& mesh, const Vec3& point,
                       std::uint64_t seed = 0x5EED);

}  // namespace ballshape

#endif  // BALLSHAPE_MESH_HPP
