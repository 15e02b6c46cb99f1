#include "ballshape/charts.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "ballshape/constants.hpp"
#include "ballshape/errors.hpp"
#include "ballshape/parallel.hpp"

namespace ballshape {

namespace {

// Compactly supported Wendland weight on t = d/r in [0,1].
double wendland(double t) {
  if (t >= 1.0) return 0.0;
  const double s = 1.0 - t;
  const double s2 = s * s;
  return s2 * s2 * (4.0 * t + 1.0);
}

Vec3 any_orthogonal(const Vec3& n) {
  int axis = 0;
  double best = std::abs(n.x());
  if (std::abs(n.y()) < best) {
    axis = 1;
    best = std::abs(n.y());
  }
  if (std::abs(n.z()) < best) axis = 2;
  Vec3 e = Vec3::Zero();
  e[axis] = 1.0;
  return (e - e.dot(n) * n).normalized();
}

VertexFrame make_frame(VertexId v, const Vec3& normal) {
  VertexFrame f;
  f.vertex_id = v;
  f.normal = normal;
  f.t1 = any_orthogonal(normal);
  f.t2 = normal.cross(f.t1);
  return f;
}

// Vertices within Euclidean `radius` of the center, gathered by breadth-first
// search over edges so that nothing leaks across spatial gaps.
std::vector<VertexId> gather_neighbors(const TriangleMesh& mesh,
                                       VertexId center, double radius) {
  const Vec3& c = mesh.vertex(center);
  const double r2 = radius * radius;
  std::vector<VertexId> result;
  std::vector<char> seen(mesh.vertex_count(), 0);
  std::queue<VertexId> frontier;
  seen[center] = 1;
  frontier.push(center);
  while (!frontier.empty()) {
    const VertexId v = frontier.front();
    frontier.pop();
    for (VertexId w : mesh.vertex_neighbors()[v]) {
      if (seen[w]) continue;
      seen[w] = 1;
      if ((mesh.vertex(w) - c).squaredNorm() <= r2) {
        result.push_back(w);
        frontier.push(w);
      }
    }
  }
  return result;
}

struct FitResult {
  Vec2 b;
  Mat2 A;
  double residual_rms;
};

// Weighted least squares of w = b.x' + x'.A x'/2 over the neighbor offsets
// in the given frame. Offsets are scaled by 1/radius for conditioning, and
// the system is solved by QR on the weighted rows: squaring into normal
// equations would push the rounding floor above the frame-alignment
// tolerance on near-minimal stencils.
FitResult solve_quadratic(const Vec3& center, const std::vector<Vec3>& points,
                          const VertexFrame& frame, double radius,
                          bool check_condition) {
  using Vec5 = Eigen::Matrix<double, 5, 1>;
  const int n = static_cast<int>(points.size());
  Eigen::Matrix<double, Eigen::Dynamic, 5> A(n, 5);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    const Vec3 d = points[i] - center;
    const double u = d.dot(frame.t1) / radius;
    const double v = d.dot(frame.t2) / radius;
    const double w = d.dot(frame.normal) / radius;
    const double sw = std::sqrt(wendland(d.norm() / radius));
    A.row(i) << sw * u, sw * v, sw * 0.5 * u * u, sw * u * v,
        sw * 0.5 * v * v;
    rhs[i] = sw * w;
  }
  Eigen::ColPivHouseholderQR<Eigen::Matrix<double, Eigen::Dynamic, 5>> qr(A);
  if (check_condition) {
    // |R00/R44| estimates cond(A); the gate 1e6 matches a normal-equation
    // condition of 1e12.
    const auto& R = qr.matrixR();
    const double hi = std::abs(R(0, 0));
    const double lo = std::abs(R(4, 4));
    if (!(lo > 0.0) || hi / lo > 1e6)
      throw IllConditionedFitError(
          "normal equations condition > 1e12 at vertex " +
          std::to_string(frame.vertex_id));
  }
  const Vec5 sol = qr.solve(rhs);
  FitResult out;
  out.b = Vec2(sol[0], sol[1]);  // dimensionless: d(w)/d(u) at origin
  out.A << sol[2], sol[3], sol[3], sol[4];
  out.A /= radius;  // back to units of curvature
  double ss = 0.0;
  for (const Vec3& p : points) {
    const Vec3 d = p - center;
    const Vec2 x(d.dot(frame.t1), d.dot(frame.t2));
    const double w = d.dot(frame.normal);
    const double res = out.b.dot(x) + 0.5 * x.dot(out.A * x) - w;
    ss += res * res;
  }
  out.residual_rms = std::sqrt(ss / points.size());
  return out;
}

}  // namespace

LocalChart fit_chart_points(const Vec3& center,
                            const std::vector<Vec3>& neighbors,
                            const VertexFrame& seed, double radius,
                            bool check_condition) {
  // The alignment iteration contracts linearly (factor ~ kappa * radius per
  // step), so a tight gradient tolerance needs more than a handful of
  // rounds from a coarse seed.
  const double tol = 1e-8 * radius;
  VertexFrame frame = seed;
  FitResult fit{};
  int iterations = 0;
  for (; iterations < 12; ++iterations) {
    fit = solve_quadratic(center, neighbors, frame, radius, check_condition);
    if (fit.b.norm() <= tol) break;
    // Rotate the frame so the fitted graph normal becomes the frame normal.
    const Vec3 n_new =
        (frame.normal - fit.b.x() * frame.t1 - fit.b.y() * frame.t2)
            .normalized();
    frame.normal = n_new;
    frame.t1 = (frame.t1 - frame.t1.dot(n_new) * n_new).normalized();
    frame.t2 = n_new.cross(frame.t1);
  }
  if (fit.b.norm() > tol)
    throw IllConditionedFitError("frame alignment did not converge at vertex " +
                                 std::to_string(seed.vertex_id));
  LocalChart chart;
  chart.frame = frame;
  chart.radius = radius;
  chart.c = 0.0;
  chart.b = fit.b;  // dimensionless gradient, below tolerance
  chart.A = fit.A;
  chart.residual_rms = fit.residual_rms;
  chart.neighbor_count = static_cast<int>(neighbors.size());
  chart.align_iterations = iterations;
  return chart;
}

namespace {

LocalChart fit_chart_core(const TriangleMesh& mesh, VertexId vertex,
                          const VertexFrame& frame,
                          const std::vector<VertexId>& neighbors,
                          double radius) {
  std::vector<Vec3> points;
  points.reserve(neighbors.size());
  for (VertexId id : neighbors) points.push_back(mesh.vertex(id));
  return fit_chart_points(mesh.vertex(vertex), points, frame, radius, true);
}

// Angle-weighted average of incident triangle normals.
VertexFrame seed_frame(const TriangleMesh& mesh, VertexId v) {
  Vec3 sum = Vec3::Zero();
  for (int f : mesh.vertex_triangles()[v]) {
    const Triangle& t = mesh.triangle(f);
    int k = 0;
    while (t[k] != v) ++k;
    const Vec3& p = mesh.vertex(v);
    const Vec3 e1 = (mesh.vertex(t[(k + 1) % 3]) - p).normalized();
    const Vec3 e2 = (mesh.vertex(t[(k + 2) % 3]) - p).normalized();
    const double angle = std::acos(std::clamp(e1.dot(e2), -1.0, 1.0));
    sum += angle * mesh.triangle_normal(f);
  }
  if (sum.norm() < 1e-12)
    throw ZeroNormalError("incident normals cancel at vertex " +
                          std::to_string(v));
  return make_frame(v, sum.normalized());
}

}  // namespace

std::vector<VertexFrame> estimate_frames(const TriangleMesh& mesh) {
  const int nv = mesh.vertex_count();
  std::vector<VertexFrame> frames(nv);
  for (VertexId v = 0; v < nv; ++v) frames[v] = seed_frame(mesh, v);
  return frames;
}

double default_chart_radius(const TriangleMesh& mesh, VertexId vertex) {
  // Median distance to the 2-ring.
  std::vector<double> dists;
  const Vec3& c = mesh.vertex(vertex);
  std::vector<VertexId> ring1 = mesh.vertex_neighbors()[vertex];
  std::vector<char> seen(mesh.vertex_count(), 0);
  seen[vertex] = 1;
  for (VertexId v : ring1) seen[v] = 1;
  std::vector<VertexId> ring2;
  for (VertexId v : ring1)
    for (VertexId w : mesh.vertex_neighbors()[v])
      if (!seen[w]) {
        seen[w] = 1;
        ring2.push_back(w);
      }
  for (VertexId v : ring1) dists.push_back((mesh.vertex(v) - c).norm());
  for (VertexId v : ring2) dists.push_back((mesh.vertex(v) - c).norm());
  std::nth_element(dists.begin(), dists.begin() + dists.size() / 2,
                   dists.end());
  const double median = dists[dists.size() / 2];
  // The fit bias grows like radius^2, so the undersampling floor is kept as
  // small as the >= 6 neighbor requirement allows.
  return std::max(median, 2.5 * mesh.mean_edge_length());
}

LocalChart fit_chart(const TriangleMesh& mesh, VertexId vertex, double radius) {
  if (!(radius > 0.0)) throw DomainError("fit_chart needs radius > 0");
  const VertexFrame frame = seed_frame(mesh, vertex);

  // The ring also grows on conditioning failures: a one-ring stencil sits
  // nearly on a conic, which is rank-deficient for a 5-coefficient quadric.
  double r = radius;
  for (int attempt = 0;; ++attempt) {
    const std::vector<VertexId> neighbors = gather_neighbors(mesh, vertex, r);
    if (static_cast<int>(neighbors.size()) >= 6) {
      try {
        return fit_chart_core(mesh, vertex, frame, neighbors, r);
      } catch (const IllConditionedFitError&) {
        if (attempt >= 3) throw;
      }
    } else if (attempt >= 3) {
      throw InsufficientNeighborsError(
          "fewer than 6 neighbors within radius at vertex " +
          std::to_string(vertex));
    }
    r *= 1.5;
  }
}

LocalChart fit_chart_with_stencil(const TriangleMesh& mesh, VertexId vertex,
                                  const VertexFrame& seed,
                                  const std::vector<VertexId>& stencil,
                                  double radius) {
  if (static_cast<int>(stencil.size()) < 6)
    throw InsufficientNeighborsError("stencil smaller than 6 at vertex " +
                                     std::to_string(vertex));
  return fit_chart_core(mesh, vertex, seed, stencil, radius);
}

FundamentalForms fundamental_forms(const LocalChart& chart) {
  FundamentalForms out;
  const Vec2& b = chart.b;
  const double q = 1.0 + b.squaredNorm();
  out.g = Mat2::Identity() + b * b.transpose();
  out.g_inv = Mat2::Identity() - (b * b.transpose()) / q;
  if (!(out.g.determinant() > 0.0 && out.g.trace() > 0.0))
    throw NonSpdError("at chart vertex " +
                      std::to_string(chart.frame.vertex_id));
  out.b = chart.A / std::sqrt(q);
  out.h = -out.g_inv * out.b;
  out.H = out.h.trace();
  out.K = out.h.determinant();
  const double disc = std::max(0.0, out.H * out.H - 4.0 * out.K);
  const double root = std::sqrt(disc);
  out.kappa1 = 0.5 * (out.H - root);
  out.kappa2 = 0.5 * (out.H + root);
  const Mat2 hs = 0.5 * (out.h + out.h.transpose());
  Eigen::SelfAdjointEigenSolver<Mat2> eig(hs);
  out.dir1 = eig.eigenvectors().col(0);  // eigenvalues ascending
  out.dir2 = eig.eigenvectors().col(1);
  return out;
}

double CurvatureField::max_abs_kappa() const {
  double best = 0.0;
  for (std::size_t i = 0; i < kappa1.size(); ++i)
    best = std::max(best, std::max(std::abs(kappa1[i]), std::abs(kappa2[i])));
  return best;
}

namespace {

// Core field build; `radii` empty selects the adaptive per-vertex radius
// clamped to radius_cap.
CurvatureField curvature_field_core(const TriangleMesh& mesh,
                                    const std::vector<double>& radii,
                                    double radius_cap) {
  const int nv = mesh.vertex_count();
  const std::vector<VertexFrame> seeds = estimate_frames(mesh);

  CurvatureField field;
  field.normal.resize(nv);
  field.kappa1.resize(nv);
  field.kappa2.resize(nv);
  field.H.resize(nv);
  field.K.resize(nv);
  field.lumped_area.resize(nv);
  field.dir1.resize(nv);
  field.dir2.resize(nv);
  field.diagnostics.resize(nv);
  field.stencil.resize(nv);

  std::vector<std::string> failures(nv);
  parallel_for(0, static_cast<std::size_t>(nv), [&](std::size_t i) {
    const VertexId v = static_cast<VertexId>(i);
    try {
      double radius = radii.empty()
                          ? std::min(default_chart_radius(mesh, v), radius_cap)
                          : radii[i];
      std::vector<VertexId> neighbors;
      LocalChart chart;
      for (int attempt = 0;; ++attempt) {
        neighbors = gather_neighbors(mesh, v, radius);
        if (static_cast<int>(neighbors.size()) >= 6) {
          try {
            chart = fit_chart_with_stencil(mesh, v, seeds[i], neighbors,
                                           radius);
            break;
          } catch (const IllConditionedFitError&) {
            if (attempt >= 3) throw;
          }
        } else if (attempt >= 3) {
          throw InsufficientNeighborsError(
              "fewer than 6 neighbors within radius at vertex " +
              std::to_string(v));
        }
        radius *= 1.5;
      }
      const FundamentalForms forms = fundamental_forms(chart);
      field.normal[i] = chart.frame.normal;
      field.kappa1[i] = forms.kappa1;
      field.kappa2[i] = forms.kappa2;
      field.H[i] = forms.H;
      field.K[i] = forms.K;
      field.dir1[i] = forms.dir1.x() * chart.frame.t1 +
                      forms.dir1.y() * chart.frame.t2;
      field.dir2[i] = forms.dir2.x() * chart.frame.t1 +
                      forms.dir2.y() * chart.frame.t2;
      field.diagnostics[i] = {chart.radius, chart.neighbor_count,
                              chart.residual_rms, chart.align_iterations};
      field.stencil[i] = std::move(neighbors);
    } catch (const Error& e) {
      failures[i] = e.what();
    }
  });
  for (int i = 0; i < nv; ++i)
    if (!failures[i].empty())
      throw IllConditionedFitError("curvature field failed: " + failures[i]);

  for (int f = 0; f < mesh.triangle_count(); ++f) {
    const double third = mesh.triangle_area(f) / 3.0;
    for (int k = 0; k < 3; ++k) field.lumped_area[mesh.triangle(f)[k]] += third;
  }
  return field;
}

}  // namespace

CurvatureField curvature_field(const TriangleMesh& mesh,
                               std::optional<double> epsilon_hint) {
  double radius_cap = std::numeric_limits<double>::infinity();
  if (epsilon_hint) {
    if (!(*epsilon_hint > 0.0))
      throw DomainError("epsilon_hint must be positive");
    radius_cap = radii_table(*epsilon_hint).chart_radius;
  }
  return curvature_field_core(mesh, {}, radius_cap);
}

CurvatureField curvature_field_fixed_radii(const TriangleMesh& mesh,
                                           const std::vector<double>& radii) {
  if (static_cast<int>(radii.size()) != mesh.vertex_count())
    throw DomainError("radius list does not match the mesh");
  return curvature_field_core(mesh, radii,
                              std::numeric_limits<double>::infinity());
}

double normal_curvature(const CurvatureField& field, const TriangleMesh& mesh,
                        VertexId vertex, const Vec3& V) {
  (void)mesh;
  const Vec3& n = field.normal[vertex];
  const Vec3 tangential = V - V.dot(n) * n;
  if (tangential.norm() <= 1e-10)
    throw TangentDegenerateError("direction parallel to the normal at vertex " +
                                 std::to_string(vertex));
  const Vec3 v = tangential.normalized();
  const double c1 = v.dot(field.dir1[vertex]);
  const double c2 = v.dot(field.dir2[vertex]);
  return field.kappa1[vertex] * c1 * c1 + field.kappa2[vertex] * c2 * c2;
}

}  // namespace ballshape
