#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ballshape/errors.hpp"
#include "ballshape/mesh.hpp"
#include "ballshape/parallel.hpp"
#include "ballshape/spatial_grid.hpp"

namespace ballshape {

namespace {

// Distance from a point to the full triangulated surface. Triangles are
// bucketed by centroid; the search ring grows until the best distance found
// so far rules out all unvisited cells.
class SurfaceDistance {
 public:
  explicit SurfaceDistance(const TriangleMesh& mesh)
      : mesh_(mesh),
        centroids_(make_centroids(mesh)),
        grid_(centroids_, 2.0 * mesh.mean_edge_length()) {
    max_circumradius_ = 0.0;
    for (int f = 0; f < mesh.triangle_count(); ++f) {
      const Vec3 c = centroids_[f];
      for (int k = 0; k < 3; ++k)
        max_circumradius_ = std::max(
            max_circumradius_, (mesh.vertex(mesh.triangle(f)[k]) - c).norm());
    }
  }

  double distance(const Vec3& p) const {
    double best = std::numeric_limits<double>::infinity();
    double radius = 2.0 * grid_.cell_size();
    const double diag = mesh_.bounding_box_diagonal() + max_circumradius_;
    while (true) {
      grid_.for_each_candidate(p, radius, [&](int f) {
        const Vec3 q = closest_point_on_triangle(
            p, mesh_.vertex(mesh_.triangle(f)[0]),
            mesh_.vertex(mesh_.triangle(f)[1]),
            mesh_.vertex(mesh_.triangle(f)[2]));
        best = std::min(best, (q - p).norm());
      });
      // A triangle not yet visited has centroid farther than `radius` from
      // p, hence surface distance > radius - max_circumradius.
      if (best <= radius - max_circumradius_) return best;
      if (radius > diag + max_circumradius_) return best;
      radius *= 2.0;
    }
  }

 private:
  static std::vector<Vec3> make_centroids(const TriangleMesh& mesh) {
    std::vector<Vec3> c(mesh.triangle_count());
    for (int f = 0; f < mesh.triangle_count(); ++f)
      c[f] = mesh.triangle_centroid(f);
    return c;
  }

  const TriangleMesh& mesh_;
  std::vector<Vec3> centroids_;
  PointGrid grid_;
  double max_circumradius_;
};

double directed_hausdorff(const TriangleMesh& from, const TriangleMesh& to) {
  const SurfaceDistance dist(to);
  const int nv = from.vertex_count();
  std::vector<double> per_vertex(nv, 0.0);
  parallel_for(0, static_cast<std::size_t>(nv), [&](std::size_t i) {
    per_vertex[i] = dist.distance(from.vertex(static_cast<VertexId>(i)));
  });
  double best = 0.0;
  for (double d : per_vertex) best = std::max(best, d);
  return best;
}

// Moller-Trumbore with an explicit degeneracy band around edges and grazing
// configurations; a degenerate hit invalidates the whole ray so the caller
// can jitter and retry.
bool ray_hits_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a,
                       const Vec3& b, const Vec3& c, bool& degenerate) {
  const Vec3 e1 = b - a, e2 = c - a;
  const Vec3 pvec = dir.cross(e2);
  const double det = e1.dot(pvec);
  if (std::abs(det) < 1e-12 * e1.norm() * e2.norm()) return false;  // parallel
  const double inv = 1.0 / det;
  const Vec3 tvec = origin - a;
  const double u = tvec.dot(pvec) * inv;
  const Vec3 qvec = tvec.cross(e1);
  const double v = dir.dot(qvec) * inv;
  const double t = e2.dot(qvec) * inv;
  const double edge_tol = 1e-10;
  if (u < -edge_tol || v < -edge_tol || u + v > 1.0 + edge_tol) return false;
  if (t <= 0.0) return false;
  if (u < edge_tol || v < edge_tol || u + v > 1.0 - edge_tol || t < edge_tol) {
    degenerate = true;
    return false;
  }
  return true;
}

// Parity-based inside test. Primary rays travel along +x and use 2D (y,z)
// buckets; jittered retry rays fall back to the full triangle list.
class InsideTester {
 public:
  explicit InsideTester(const TriangleMesh& mesh) : mesh_(mesh) {
    mesh.bounding_box(lo_, hi_);
    const double span = std::max(hi_.y() - lo_.y(), hi_.z() - lo_.z());
    res_ = 64;
    cell_ = std::max(span / res_, 1e-30);
    buckets_.assign(static_cast<std::size_t>(res_) * res_, {});
    for (int f = 0; f < mesh.triangle_count(); ++f) {
      double ymin = 1e300, ymax = -1e300, zmin = 1e300, zmax = -1e300;
      for (int k = 0; k < 3; ++k) {
        const Vec3& p = mesh.vertex(mesh.triangle(f)[k]);
        ymin = std::min(ymin, p.y());
        ymax = std::max(ymax, p.y());
        zmin = std::min(zmin, p.z());
        zmax = std::max(zmax, p.z());
      }
      for (int iy = coord(ymin, 1); iy <= coord(ymax, 1); ++iy)
        for (int iz = coord(zmin, 2); iz <= coord(zmax, 2); ++iz)
          buckets_[iz * res_ + iy].push_back(f);
    }
  }

  bool inside(const Vec3& p, std::uint64_t seed) const {
    if (p.x() < lo_.x() || p.x() > hi_.x() || p.y() < lo_.y() ||
        p.y() > hi_.y() || p.z() < lo_.z() || p.z() > hi_.z())
      return false;
    {
      bool degenerate = false;
      int crossings = 0;
      const Vec3 dir(1.0, 0.0, 0.0);
      const auto& bucket =
          buckets_[coord(p.z(), 2) * res_ + coord(p.y(), 1)];
      for (int f : bucket) {
        if (ray_hits_triangle(p, dir, mesh_.vertex(mesh_.triangle(f)[0]),
                              mesh_.vertex(mesh_.triangle(f)[1]),
                              mesh_.vertex(mesh_.triangle(f)[2]), degenerate))
          ++crossings;
        if (degenerate) break;
      }
      if (!degenerate) return (crossings % 2) == 1;
    }
    // Jittered retries over the full list.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int attempt = 0; attempt < 3; ++attempt) {
      Vec3 dir(unit(rng), unit(rng), unit(rng));
      while (dir.norm() < 1e-3) dir = Vec3(unit(rng), unit(rng), unit(rng));
      dir.normalize();
      bool degenerate = false;
      int crossings = 0;
      for (int f = 0; f < mesh_.triangle_count(); ++f) {
        if (ray_hits_triangle(p, dir, mesh_.vertex(mesh_.triangle(f)[0]),
                              mesh_.vertex(mesh_.triangle(f)[1]),
                              mesh_.vertex(mesh_.triangle(f)[2]), degenerate))
          ++crossings;
        if (degenerate) break;
      }
      if (!degenerate) return (crossings % 2) == 1;
    }
    throw InsideTestAmbiguousError("ray parity degenerate after 3 retries");
  }

 private:
  int coord(double x, int axis) const {
    const double origin = axis == 1 ? lo_.y() : lo_.z();
    const int c = static_cast<int>(std::floor((x - origin) / cell_));
    return std::clamp(c, 0, res_ - 1);
  }

  const TriangleMesh& mesh_;
  Vec3 lo_, hi_;
  int res_;
  double cell_;
  std::vector<std::vector<int>> buckets_;
};

}  // namespace

double hausdorff_distance(const TriangleMesh& a, const TriangleMesh& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

bool point_inside_mesh(const TriangleMesh& mesh, const Vec3& point,
                       std::uint64_t seed) {
  return InsideTester(mesh).inside(point, seed);
}

double char_fn_distance(const TriangleMesh& a, const TriangleMesh& b,
                        int grid_res) {
  if (grid_res < 16) throw DomainError("char_fn_distance needs grid_res >= 16");
  Vec3 lo_a, hi_a, lo_b, hi_b;
  a.bounding_box(lo_a, hi_a);
  b.bounding_box(lo_b, hi_b);
  Vec3 lo = lo_a.cwiseMin(lo_b);
  Vec3 hi = hi_a.cwiseMax(hi_b);
  const Vec3 pad = 1e-3 * (hi - lo);
  lo -= pad;
  hi += pad;
  const Vec3 step = (hi - lo) / grid_res;
  const double cell_volume = step.x() * step.y() * step.z();

  const InsideTester in_a(a);
  const InsideTester in_b(b);
  const std::size_t n = static_cast<std::size_t>(grid_res);
  std::vector<std::int64_t> per_slab(n, 0);
  std::vector<char> failed(n, 0);
  parallel_for(0, n, [&](std::size_t iz) {
    std::int64_t count = 0;
    try {
      for (int iy = 0; iy < grid_res; ++iy)
        for (int ix = 0; ix < grid_res; ++ix) {
          const Vec3 p = lo + Vec3((ix + 0.5) * step.x(), (iy + 0.5) * step.y(),
                                   (iz + 0.5) * step.z());
          const std::uint64_t seed =
              0x5EED ^ (static_cast<std::uint64_t>(iz) << 40) ^
              (static_cast<std::uint64_t>(iy) << 20) ^
              static_cast<std::uint64_t>(ix);
          if (in_a.inside(p, seed) != in_b.inside(p, seed + 1)) ++count;
        }
    } catch (const InsideTestAmbiguousError&) {
      failed[iz] = 1;
    }
    per_slab[iz] = count;
  });
  for (char f : failed)
    if (f) throw InsideTestAmbiguousError("voxel inside test failed");
  std::int64_t total = 0;
  for (std::int64_t c : per_slab) total += c;
  return static_cast<double>(total) * cell_volume;
}

}  // namespace ballshape
