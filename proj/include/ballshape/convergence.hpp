#ifndef BALLSHAPE_CONVERGENCE_HPP
#define BALLSHAPE_CONVERGENCE_HPP

#include <string>
#include <vector>

#include "ballshape/functionals.hpp"
#include "ballshape/mesh.hpp"
#include "ballshape/shapes.hpp"

namespace ballshape {

// Converging mesh families realised as concrete generators. The limit
// element is built alongside the sequence: amp = 0 for a perturbation decay,
// the finest level for a refinement family.
struct PerturbationDecayFamily {
  PerturbedSphere base;            // amp is overridden by the schedule
  std::vector<double> amp_schedule;  // strictly decreasing, >= 3 entries
};

struct RefinementFamily {
  ShapeSpec base;                  // subdivision level is overridden
  std::vector<int> levels;         // strictly increasing, >= 3 entries
};

struct SequenceSpec {
  bool is_refinement = false;
  PerturbationDecayFamily decay;
  RefinementFamily refinement;
  std::vector<FunctionalSpec> functionals;
  std::vector<std::string> functional_names;
  double epsilon = 0.3;            // per-element certification level
  int char_fn_grid = 32;
};

struct SequenceRow {
  int index = 0;
  double hausdorff = 0.0;           // distance to the limit element
  double char_fn = 0.0;
  double normal_deviation = 0.0;    // max over nearest-vertex pairs
  std::vector<double> values;       // one per functional
  std::vector<double> gaps;         // |value - limit value|
};

struct SequenceReport {
  std::vector<SequenceRow> rows;
  std::vector<double> limit_values;
  std::vector<std::string> functional_names;
  std::vector<bool> gap_monotone;   // trend over the last half of the rows
};

SequenceReport run_sequence(const SequenceSpec& spec);

}  // namespace ballshape

#endif  // BALLSHAPE_CONVERGENCE_HPP
