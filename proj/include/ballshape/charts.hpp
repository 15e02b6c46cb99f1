#ifndef BALLSHAPE_CHARTS_HPP
#define BALLSHAPE_CHARTS_HPP

#include <optional>
#include <vector>

#include "ballshape/mesh.hpp"

namespace ballshape {

// Direct orthonormal frame centred at a vertex: (t1, t2, normal) is
// right-handed and normal points outward.
struct VertexFrame {
  VertexId vertex_id = -1;
  Vec3 normal = Vec3::UnitZ();
  Vec3 t1 = Vec3::UnitX();
  Vec3 t2 = Vec3::UnitY();
};

// Quadratic graph phi(x') = c + b.x' + x'.A x'/2 fitted in the vertex frame.
// The frame is aligned so that phi(0) = 0 and grad phi(0) = 0: c is zero by
// construction and |b| <= 1e-8 * radius on every accepted chart.
struct LocalChart {
  VertexFrame frame;
  double radius = 0.0;
  double c = 0.0;
  Vec2 b = Vec2::Zero();
  Mat2 A = Mat2::Zero();
  double residual_rms = 0.0;
  int neighbor_count = 0;
  int align_iterations = 0;
};

struct FundamentalForms {
  Mat2 g = Mat2::Identity();      // first fundamental form
  Mat2 g_inv = Mat2::Identity();
  Mat2 b = Mat2::Zero();          // second fundamental form coefficients
  Mat2 h = Mat2::Zero();          // Weingarten matrix -g_inv * b
  double kappa1 = 0.0;            // principal curvatures, kappa1 <= kappa2
  double kappa2 = 0.0;
  double H = 0.0;                 // kappa1 + kappa2
  double K = 0.0;                 // kappa1 * kappa2
  Vec2 dir1 = Vec2::UnitX();      // principal directions in the chart basis
  Vec2 dir2 = Vec2::UnitY();
};

struct ChartDiagnostics {
  double radius = 0.0;
  int neighbor_count = 0;
  double residual_rms = 0.0;
  int align_iterations = 0;
};

struct CurvatureField {
  std::vector<Vec3> normal;
  std::vector<double> kappa1, kappa2, H, K, lumped_area;
  std::vector<Vec3> dir1, dir2;  // principal directions in R^3
  std::vector<ChartDiagnostics> diagnostics;
  std::vector<std::vector<VertexId>> stencil;  // fit neighbors per vertex

  int vertex_count() const { return static_cast<int>(H.size()); }
  double max_abs_kappa() const;
};

std::vector<VertexFrame> estimate_frames(const TriangleMesh& mesh);

LocalChart fit_chart(const TriangleMesh& mesh, VertexId vertex, double radius);

// Fit with a frozen neighbor set; used for finite differencing so the energy
// stays a smooth function of vertex positions while stencils are fixed.
LocalChart fit_chart_with_stencil(const TriangleMesh& mesh, VertexId vertex,
                                  const VertexFrame& seed,
                                  const std::vector<VertexId>& stencil,
                                  double radius);

// Position-level fit; `check_condition` may be disabled on re-fits of a
// chart whose base fit already passed the conditioning gate.
LocalChart fit_chart_points(const Vec3& center,
                            const std::vector<Vec3>& neighbors,
                            const VertexFrame& seed, double radius,
                            bool check_condition = true);

FundamentalForms fundamental_forms(const LocalChart& chart);

CurvatureField curvature_field(const TriangleMesh& mesh,
                               std::optional<double> epsilon_hint = {});

// Same fit with prescribed per-vertex radii. The adaptive radius is only
// piecewise-smooth in the vertex positions (ring medians switch), so a
// shape optimization freezes the radii once to keep its energy C^1.
CurvatureField curvature_field_fixed_radii(const TriangleMesh& mesh,
                                           const std::vector<double>& radii);

// II(v,v) for the unit tangent projection v of V at the given vertex.
double normal_curvature(const CurvatureField& field, const TriangleMesh& mesh,
                        VertexId vertex, const Vec3& V);

// Adaptive chart radius: max(2-ring median distance, 3 * mean edge length).
double default_chart_radius(const TriangleMesh& mesh, VertexId vertex);

}  // namespace ballshape

#endif  // BALLSHAPE_CHARTS_HPP
