#ifndef BALLSHAPE_OPTIMIZER_HPP
#define BALLSHAPE_OPTIMIZER_HPP

#include <cstdint>
#include <vector>

#include "ballshape/certifier.hpp"
#include "ballshape/functionals.hpp"
#include "ballshape/mesh.hpp"
#include "ballshape/shapes.hpp"

namespace ballshape {

struct OptimizerConfig {
  double epsilon = 0.3;        // admissible-class parameter
  double step = 0.05;          // initial step, units of length
  int max_iters = 200;
  double fd_step = -1.0;       // < 0: default 1e-6 * bbox diagonal
  double al_mu = 10.0;         // penalty weight
  double al_mu_growth = 2.0;   // applied when the violation stalls
  int al_update_every = 10;    // accepted steps between multiplier updates
  double reach_slack = 0.02;   // iterates certify at epsilon*(1 - slack)
  double armijo_c = 1e-4;
  double step_shrink = 0.5;
  double min_step = 1e-10;
  double grad_tol = 1e-6;
  std::uint64_t seed = 0;
};

struct TraceRow {
  int iteration = 0;
  double energy = 0.0;
  double augmented_energy = 0.0;
  std::vector<double> violations;   // signed for Equal, clipped for LessEqual
  std::vector<double> multipliers;
  double penalty_mu = 0.0;
  double step = 0.0;
  bool accepted = false;
  // min_clearance + tolerance of the certificate at epsilon*(1-slack);
  // nonnegative iff the iterate certifies.
  double certified_epsilon_margin = 0.0;
};

struct OptimizationTrace {
  std::vector<TraceRow> rows;
  std::string termination;  // "max_iters" | "min_step" | "grad_tol"
};

struct MinimizeResult {
  TriangleMesh mesh;
  OptimizationTrace trace;
};

// d(evaluate)/d(vertex coordinates). Area and Volume use the standard
// discrete analytic formulas; everything else central finite differences
// with chart re-fits restricted to the stencils that contain the moved
// vertex.
std::vector<Vec3> shape_gradient(const TriangleMesh& mesh,
                                 const CurvatureField& field,
                                 const FunctionalSpec& spec, double fd_step);

// Augmented-Lagrangian projected-free descent: equality constraints carry
// multipliers, inequality constraints a quadratic penalty; a step is
// accepted only if the Armijo test passes and the candidate certifies the
// ball condition at epsilon*(1 - reach_slack).
MinimizeResult minimize(const TriangleMesh& initial,
                        const FunctionalSpec& objective,
                        const ConstraintSpec& constraints,
                        const OptimizerConfig& config);

struct ContinuityRow {
  int index = 0;
  double hausdorff = 0.0;  // to the last element of the sequence
  double char_fn = 0.0;
  double value = 0.0;
  double gap = 0.0;        // |value - value(last)|
};

// Evaluates the spec along a mesh sequence; the last element acts as the
// limit. Distances are reported, not enforced.
std::vector<ContinuityRow> continuity_experiment(
    const std::vector<TriangleMesh>& sequence, const FunctionalSpec& spec,
    int char_fn_grid = 32);

}  // namespace ballshape

#endif  // BALLSHAPE_OPTIMIZER_HPP
