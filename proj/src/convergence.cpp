#include "ballshape/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ballshape/certifier.hpp"
#include "ballshape/charts.hpp"
#include "ballshape/errors.hpp"
#include "ballshape/spatial_grid.hpp"

namespace ballshape {

namespace {

std::vector<TriangleMesh> build_sequence(const SequenceSpec& spec,
                                         TriangleMesh& limit) {
  std::vector<TriangleMesh> seq;
  if (spec.is_refinement) {
    const auto& fam = spec.refinement;
    if (fam.levels.size() < 3)
      throw DomainError("refinement family needs >= 3 levels");
    for (std::size_t i = 1; i < fam.levels.size(); ++i)
      if (fam.levels[i] <= fam.levels[i - 1])
        throw DomainError("refinement levels must increase strictly");
    for (int level : fam.levels) {
      ShapeSpec s = fam.base;
      std::visit(
          [level](auto& shape) {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Icosphere> ||
                          std::is_same_v<T, Ellipsoid> ||
                          std::is_same_v<T, PerturbedSphere>)
              shape.subdiv = level;
            else
              throw DomainError("refinement family needs a subdividable base");
          },
          s);
      seq.push_back(generate(s));
    }
    limit = seq.back();
  } else {
    const auto& fam = spec.decay;
    if (fam.amp_schedule.size() < 3)
      throw DomainError("decay family needs >= 3 amplitudes");
    for (std::size_t i = 1; i < fam.amp_schedule.size(); ++i)
      if (fam.amp_schedule[i] >= fam.amp_schedule[i - 1])
        throw DomainError("amplitude schedule must decrease strictly");
    for (double amp : fam.amp_schedule) {
      PerturbedSphere s = fam.base;
      s.amp = amp;
      seq.push_back(generate(s));
    }
    PerturbedSphere zero = fam.base;
    zero.amp = 0.0;
    limit = generate(zero);
  }
  return seq;
}

double max_normal_deviation(const TriangleMesh& mesh,
                            const CurvatureField& field,
                            const TriangleMesh& limit,
                            const CurvatureField& limit_field) {
  // Nearest-vertex pairing from the element to the limit.
  const PointGrid grid(limit.vertices(), 2.0 * limit.mean_edge_length());
  double worst = 0.0;
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const Vec3& p = mesh.vertex(v);
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    double radius = 2.0 * limit.mean_edge_length();
    while (best < 0) {
      grid.for_each_candidate(p, radius, [&](int i) {
        const double d2 = (limit.vertex(i) - p).squaredNorm();
        if (d2 < best_d2) {
          best_d2 = d2;
          best = i;
        }
      });
      radius *= 2.0;
      if (radius > 4.0 * limit.bounding_box_diagonal()) break;
    }
    if (best < 0) {
      // Degenerate fallback; scan everything.
      for (int i = 0; i < limit.vertex_count(); ++i) {
        const double d2 = (limit.vertex(i) - p).squaredNorm();
        if (d2 < best_d2) {
          best_d2 = d2;
          best = i;
        }
      }
    }
    worst = std::max(worst,
                     (field.normal[v] - limit_field.normal[best]).norm());
  }
  return worst;
}

}  // namespace

SequenceReport run_sequence(const SequenceSpec& spec) {
  TriangleMesh limit = generate(Icosphere{1.0, 0});
  const std::vector<TriangleMesh> seq = build_sequence(spec, limit);
  const CurvatureField limit_field = curvature_field(limit);

  SequenceReport report;
  report.functional_names = spec.functional_names;
  for (const FunctionalSpec& f : spec.functionals)
    report.limit_values.push_back(evaluate(limit, limit_field, f));

  for (std::size_t i = 0; i < seq.size(); ++i) {
    const CurvatureField field = curvature_field(seq[i]);
    // Discretization-gap tolerance: coarse refinement levels deviate from
    // the smooth surface by O(kappa h^2), beyond the resolution default.
    const Certificate cert = certify_ball_condition(
        seq[i], field, spec.epsilon, discretization_tolerance(seq[i], field));
    if (!cert.passed)
      throw ElementNotCertifiedError("sequence element " + std::to_string(i) +
                                     " fails at epsilon = " +
                                     std::to_string(spec.epsilon));
    SequenceRow row;
    row.index = static_cast<int>(i);
    row.hausdorff = hausdorff_distance(seq[i], limit);
    row.char_fn = char_fn_distance(seq[i], limit, spec.char_fn_grid);
    row.normal_deviation =
        max_normal_deviation(seq[i], field, limit, limit_field);
    for (std::size_t k = 0; k < spec.functionals.size(); ++k) {
      row.values.push_back(evaluate(seq[i], field, spec.functionals[k]));
      row.gaps.push_back(std::abs(row.values[k] - report.limit_values[k]));
    }
    report.rows.push_back(std::move(row));
  }

  // Monotone-trend flags over the last half of the rows.
  const std::size_t half = report.rows.size() / 2;
  for (std::size_t k = 0; k < spec.functionals.size(); ++k) {
    bool monotone = true;
    for (std::size_t i = std::max<std::size_t>(half, 1);
         i < report.rows.size(); ++i)
      if (report.rows[i].gaps[k] > report.rows[i - 1].gaps[k]) {
        monotone = false;
        break;
      }
    report.gap_monotone.push_back(monotone);
  }
  return report;
}

}  // namespace ballshape
