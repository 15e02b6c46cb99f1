#ifndef BALLSHAPE_CERTIFIER_HPP
#define BALLSHAPE_CERTIFIER_HPP

#include <string>
#include <vector>

#include "ballshape/charts.hpp"
#include "ballshape/mesh.hpp"

namespace ballshape {

enum class BallSide { Inner, Outer };

struct BallViolation {
  VertexId vertex = -1;
  BallSide side = BallSide::Inner;
  double clearance = 0.0;
};

// Outcome of the discrete epsilon-ball check. For every vertex x with outward
// normal n, the surface must stay out of the open balls of radius epsilon
// centred at x -/+ epsilon*n up to `tolerance`:
// min over surface samples y of |y - (x ± eps n)| - eps >= -tolerance.
struct Certificate {
  double epsilon = 0.0;
  bool passed = false;
  double min_clearance = 0.0;
  std::vector<BallViolation> violations;  // sorted by clearance ascending
  double lipschitz_max = 0.0;   // max over edges of eps*|n_x - n_y|/|x - y|
  double kappa_bound_max = 0.0; // eps * max |principal curvature|
  double tolerance = 0.0;
};

// Negative `tolerance` selects the default 1e-2 * mean edge length.
Certificate certify_ball_condition(const TriangleMesh& mesh,
                                   const CurvatureField& field, double epsilon,
                                   double tolerance = -1.0);

// Pass/fail only: scanning stops at the first definite violation, so failing
// probes return quickly. min_clearance and the violation list are partial.
Certificate probe_ball_condition(const TriangleMesh& mesh,
                                 const CurvatureField& field, double epsilon,
                                 double tolerance = -1.0);

// Largest certified epsilon, located by bisection between the minimum edge
// length and half the bounding-box diagonal, to 1e-3 relative.
double estimate_reach(const TriangleMesh& mesh, const CurvatureField& field,
                      double tolerance = -1.0);

// Max over sampled vertex pairs of 2*eps*|<x-a|n_a>| / |x-a|^2. Full O(V^2)
// for V <= 5000, otherwise 10^6 pairs drawn with the fixed seed 0x5EED.
double global_inequality_check(const TriangleMesh& mesh,
                               const CurvatureField& field, double epsilon);

// eps * max |kappa| over the field.
double curvature_bound_check(const CurvatureField& field, double epsilon);

// Certification tolerance covering the full discretization gap: the secant
// surface dips below the smooth one by up to kappa*h^2/6 at face centres,
// which exceeds the resolution-tied default (1e-2 * mean edge) on coarse
// high-curvature meshes.
double discretization_tolerance(const TriangleMesh& mesh,
                                const CurvatureField& field);

}  // namespace ballshape

#endif  // BALLSHAPE_CERTIFIER_HPP
