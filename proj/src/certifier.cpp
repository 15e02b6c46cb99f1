#include "ballshape/certifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>

#include "ballshape/errors.hpp"
#include "ballshape/parallel.hpp"

namespace ballshape {

namespace {

struct SideClearance {
  double inner = std::numeric_limits<double>::infinity();
  double outer = std::numeric_limits<double>::infinity();
};

// Per-vertex tangent ball clearances against all vertices and all
// triangle-interior closest points. Vertices are scanned exactly; triangle
// closest points enter the minimum whenever they can fall within
// epsilon + 2*tolerance of the ball centre (a centroid/extent bound prunes
// the rest), so pass/fail, the violation list, and every clearance at
// tangency scale are exact while far-away faces never pay for the full
// point-to-triangle test.
class ClearanceScanner {
 public:
  explicit ClearanceScanner(const TriangleMesh& mesh) : mesh_(mesh) {
    const int nt = mesh.triangle_count();
    tri_.resize(static_cast<std::size_t>(nt) * 3);
    centroids_.resize(nt);
    extents_.resize(nt);
    for (int f = 0; f < nt; ++f) {
      for (int k = 0; k < 3; ++k) tri_[3 * f + k] = mesh.vertex(mesh.triangle(f)[k]);
      centroids_[f] = mesh.triangle_centroid(f);
      double ext = 0.0;
      for (int k = 0; k < 3; ++k)
        ext = std::max(ext, (tri_[3 * f + k] - centroids_[f]).norm());
      extents_[f] = ext;
    }
  }

  // Smallest |y - center| - epsilon over surface samples y excluding the
  // tangency vertex x itself. With fail_fast, returns as soon as the
  // clearance is known to be below -tolerance.
  double clearance(const Vec3& center, double epsilon, double tolerance,
                   VertexId x, bool fail_fast) const {
    double best2 = std::numeric_limits<double>::infinity();
    const Vec3& px = mesh_.vertex(x);
    const int nv = mesh_.vertex_count();
    const double fail2 =
        fail_fast ? std::pow(std::max(0.0, epsilon - 2.0 * tolerance), 2)
                  : -1.0;
    for (VertexId v = 0; v < nv; ++v) {
      if (v == x) continue;
      const double d2 = (mesh_.vertex(v) - center).squaredNorm();
      if (d2 < best2) {
        best2 = d2;
        if (d2 < fail2) return std::sqrt(d2) - epsilon;
      }
    }
    double best = std::sqrt(best2);
    const int nt = mesh_.triangle_count();
    const double cutoff = std::min(best, epsilon + 2.0 * tolerance) + 1e-12;
    for (int f = 0; f < nt; ++f) {
      const double cd2 = (centroids_[f] - center).squaredNorm();
      const double reach = cutoff + extents_[f];
      if (cd2 >= reach * reach) continue;
      const Vec3 q = closest_point_on_triangle(center, tri_[3 * f],
                                               tri_[3 * f + 1],
                                               tri_[3 * f + 2]);
      if ((q - px).squaredNorm() <= 1e-24) continue;  // the tangency point
      const double d = (q - center).norm();
      if (d < best) {
        best = d;
        if (fail_fast && best - epsilon < -2.0 * tolerance)
          return best - epsilon;
      }
    }
    return best - epsilon;
  }

 private:
  const TriangleMesh& mesh_;
  std::vector<Vec3> tri_;
  std::vector<Vec3> centroids_;
  std::vector<double> extents_;
};

Certificate run_certification(const TriangleMesh& mesh,
                              const CurvatureField& field, double epsilon,
                              double tolerance, bool fail_fast) {
  if (!(epsilon > 0.0)) throw DomainError("certify needs epsilon > 0");
  if (tolerance < 0.0) tolerance = 1e-2 * mesh.mean_edge_length();
  if (field.vertex_count() != mesh.vertex_count())
    throw DomainError("curvature field does not match the mesh");

  Certificate cert;
  cert.epsilon = epsilon;
  cert.tolerance = tolerance;

  const int nv = mesh.vertex_count();
  const ClearanceScanner scanner(mesh);
  std::vector<SideClearance> clearances(nv);
  std::atomic<bool> failed{false};
  parallel_for(0, static_cast<std::size_t>(nv), [&](std::size_t i) {
    if (fail_fast && failed.load(std::memory_order_relaxed)) return;
    const VertexId v = static_cast<VertexId>(i);
    const Vec3& x = mesh.vertex(v);
    const Vec3& n = field.normal[v];
    clearances[i].inner =
        scanner.clearance(x - epsilon * n, epsilon, tolerance, v, fail_fast);
    clearances[i].outer =
        scanner.clearance(x + epsilon * n, epsilon, tolerance, v, fail_fast);
    if (std::min(clearances[i].inner, clearances[i].outer) < -tolerance)
      failed.store(true, std::memory_order_relaxed);
  });

  cert.min_clearance = std::numeric_limits<double>::infinity();
  for (int i = 0; i < nv; ++i) {
    cert.min_clearance = std::min(cert.min_clearance, clearances[i].inner);
    cert.min_clearance = std::min(cert.min_clearance, clearances[i].outer);
    if (clearances[i].inner < -tolerance)
      cert.violations.push_back(
          {static_cast<VertexId>(i), BallSide::Inner, clearances[i].inner});
    if (clearances[i].outer < -tolerance)
      cert.violations.push_back(
          {static_cast<VertexId>(i), BallSide::Outer, clearances[i].outer});
  }
  std::sort(cert.violations.begin(), cert.violations.end(),
            [](const BallViolation& a, const BallViolation& b) {
              if (a.clearance != b.clearance) return a.clearance < b.clearance;
              if (a.vertex != b.vertex) return a.vertex < b.vertex;
              return static_cast<int>(a.side) < static_cast<int>(b.side);
            });
  cert.passed = cert.min_clearance >= -tolerance;

  // Edge-based discrete echo of the 1/eps normal Lipschitz bound.
  double lip = 0.0;
  for (VertexId v = 0; v < nv; ++v)
    for (VertexId w : mesh.vertex_neighbors()[v]) {
      if (w <= v) continue;
      const double num = (field.normal[v] - field.normal[w]).norm();
      const double den = (mesh.vertex(v) - mesh.vertex(w)).norm();
      lip = std::max(lip, epsilon * num / den);
    }
  cert.lipschitz_max = lip;
  cert.kappa_bound_max = curvature_bound_check(field, epsilon);
  return cert;
}

}  // namespace

Certificate certify_ball_condition(const TriangleMesh& mesh,
                                   const CurvatureField& field, double epsilon,
                                   double tolerance) {
  return run_certification(mesh, field, epsilon, tolerance, false);
}

Certificate probe_ball_condition(const TriangleMesh& mesh,
                                 const CurvatureField& field, double epsilon,
                                 double tolerance) {
  return run_certification(mesh, field, epsilon, tolerance, true);
}

double estimate_reach(const TriangleMesh& mesh, const CurvatureField& field,
                      double tolerance) {
  double lo = mesh.min_edge_length();
  double hi = 0.5 * mesh.bounding_box_diagonal();
  if (!(lo < hi)) throw DomainError("degenerate bracket in estimate_reach");

  auto passes = [&](double eps) {
    return probe_ball_condition(mesh, field, eps, tolerance).passed;
  };
  if (!passes(lo))
    throw NoCertifiableEpsilonError(
        "mesh fails the ball condition even at the minimum edge length");
  if (passes(hi)) return hi;
  while ((hi - lo) > 1e-3 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (passes(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double global_inequality_check(const TriangleMesh& mesh,
                               const CurvatureField& field, double epsilon) {
  if (!(epsilon > 0.0))
    throw DomainError("global_inequality_check needs epsilon > 0");
  const int nv = mesh.vertex_count();
  double worst = 0.0;
  auto ratio = [&](VertexId a, VertexId x) {
    const Vec3 d = mesh.vertex(x) - mesh.vertex(a);
    const double r2 = d.squaredNorm();
    if (r2 <= 0.0) return 0.0;
    return 2.0 * epsilon * std::abs(d.dot(field.normal[a])) / r2;
  };
  if (nv <= 5000) {
    std::vector<double> per_vertex(nv, 0.0);
    parallel_for(0, static_cast<std::size_t>(nv), [&](std::size_t i) {
      double best = 0.0;
      for (VertexId x = 0; x < nv; ++x)
        if (x != static_cast<VertexId>(i))
          best = std::max(best, ratio(static_cast<VertexId>(i), x));
      per_vertex[i] = best;
    });
    for (double r : per_vertex) worst = std::max(worst, r);
  } else {
    std::mt19937_64 rng(0x5EED);
    std::uniform_int_distribution<int> pick(0, nv - 1);
    for (long k = 0; k < 1000000; ++k) {
      const VertexId a = pick(rng);
      VertexId x = pick(rng);
      if (x == a) continue;
      worst = std::max(worst, ratio(a, x));
    }
  }
  return worst;
}

double curvature_bound_check(const CurvatureField& field, double epsilon) {
  return epsilon * field.max_abs_kappa();
}

double discretization_tolerance(const TriangleMesh& mesh,
                                const CurvatureField& field) {
  return std::max(
      1e-2 * mesh.mean_edge_length(),
      0.25 * field.max_abs_kappa() * std::pow(mesh.max_edge_length(), 2));
}

}  // namespace ballshape
