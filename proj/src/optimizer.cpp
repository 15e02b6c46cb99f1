#include "ballshape/optimizer.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <thread>

#include "ballshape/errors.hpp"
#include "ballshape/parallel.hpp"

namespace ballshape {

namespace {

bool is_measure_kind(const FunctionalSpec& spec) {
  return spec.kind == FunctionalKind::Area ||
         spec.kind == FunctionalKind::Volume;
}

std::vector<Vec3> analytic_area_gradient(const TriangleMesh& mesh) {
  std::vector<Vec3> grad(mesh.vertex_count(), Vec3::Zero());
  for (int f = 0; f < mesh.triangle_count(); ++f) {
    const Triangle& t = mesh.triangle(f);
    const Vec3 n = mesh.triangle_normal(f);
    for (int k = 0; k < 3; ++k) {
      const Vec3& p = mesh.vertex(t[(k + 1) % 3]);
      const Vec3& q = mesh.vertex(t[(k + 2) % 3]);
      grad[t[k]] += 0.5 * (p - q).cross(n);
    }
  }
  return grad;
}

std::vector<Vec3> analytic_volume_gradient(const TriangleMesh& mesh) {
  std::vector<Vec3> grad(mesh.vertex_count(), Vec3::Zero());
  for (int f = 0; f < mesh.triangle_count(); ++f) {
    const Triangle& t = mesh.triangle(f);
    for (int k = 0; k < 3; ++k) {
      const Vec3& p = mesh.vertex(t[(k + 1) % 3]);
      const Vec3& q = mesh.vertex(t[(k + 2) % 3]);
      grad[t[k]] += p.cross(q) / 6.0;
    }
  }
  return grad;
}

// Curvature-energy evaluator over frozen fit stencils. Supports perturbing
// one vertex at a time: only charts whose stencil contains the vertex and
// lumped areas of its triangle ring are recomputed.
class EnergyModel {
 public:
  EnergyModel(const TriangleMesh& mesh, const CurvatureField& field,
              std::vector<FunctionalSpec> specs)
      : mesh_(mesh), specs_(std::move(specs)) {
    const int nv = mesh.vertex_count();
    positions_ = mesh.vertices();
    radius_.resize(nv);
    frames_.resize(nv);
    stencil_ = field.stencil;
    for (int v = 0; v < nv; ++v) {
      radius_[v] = field.diagnostics[v].radius;
      VertexFrame f;
      f.vertex_id = v;
      f.normal = field.normal[v];
      f.t1 = field.dir1[v];
      f.t2 = f.normal.cross(f.t1);
      frames_[v] = f;
    }
    // Reverse stencils: charts affected by moving a given vertex.
    chart_deps_.assign(nv, {});
    for (int i = 0; i < nv; ++i) {
      chart_deps_[i].push_back(i);
      for (VertexId j : stencil_[i]) chart_deps_[j].push_back(i);
    }
    // Vertices whose lumped area changes when a given vertex moves.
    area_deps_.assign(nv, {});
    for (int j = 0; j < nv; ++j) {
      area_deps_[j].push_back(j);
      for (VertexId w : mesh.vertex_neighbors()[j]) area_deps_[j].push_back(w);
    }

    const int m = static_cast<int>(specs_.size());
    contrib_.assign(m, std::vector<std::array<double, 3>>(
                           nv, {0.0, 0.0, 0.0}));
    sums_.assign(m, {0.0, 0.0, 0.0});
    state_.normal = field.normal;
    state_.H = field.H;
    state_.K = field.K;
    state_.area = field.lumped_area;
    for (int s = 0; s < m; ++s) {
      for (int v = 0; v < nv; ++v) {
        set_contribution(s, v);
        for (int k = 0; k < 3; ++k) sums_[s][k] += contrib_[s][v][k];
      }
    }
  }

  int spec_count() const { return static_cast<int>(specs_.size()); }

  // Energies with vertex j displaced to `pos`; the model state is restored
  // before returning.
  void perturbed_energies(VertexId j, const Vec3& pos,
                          std::vector<double>& out) {
    const Vec3 saved = positions_[j];
    positions_[j] = pos;

    const int m = spec_count();
    out.assign(m, 0.0);
    std::array<std::array<double, 3>, 3> delta{};  // per spec
    std::vector<std::array<double, 3>> sums(m);
    for (int s = 0; s < m; ++s) sums[s] = sums_[s];

    // Recompute charts that depend on j.
    scratch_changed_.clear();
    for (VertexId i : chart_deps_[j]) {
      VertexState st;
      refit_vertex(i, st);
      scratch_changed_.push_back({i, st});
    }
    // Lumped areas around j (union with chart deps handled below).
    for (VertexId i : area_deps_[j]) {
      bool present = false;
      for (auto& [v, st] : scratch_changed_)
        if (v == i) {
          st.area = lumped_area(i);
          present = true;
          break;
        }
      if (!present) {
        VertexState st;
        st.normal = state_.normal[i];
        st.H = state_.H[i];
        st.K = state_.K[i];
        st.area = lumped_area(i);
        scratch_changed_.push_back({i, st});
      }
    }

    for (const auto& [i, st] : scratch_changed_) {
      for (int s = 0; s < m; ++s) {
        double now[3] = {0.0, 0.0, 0.0};
        integral_contributions(specs_[s], positions_[i], st.normal, st.H,
                               st.K, st.area, i, now);
        for (int k = 0; k < 3; ++k)
          sums[s][k] += now[k] - contrib_[s][i][k];
      }
    }
    for (int s = 0; s < m; ++s) out[s] = integral_combine(specs_[s], sums[s].data());

    positions_[j] = saved;
    (void)delta;
  }

  // Base energies for the unperturbed mesh (same accumulation path).
  void base_energies(std::vector<double>& out) const {
    const int m = spec_count();
    out.assign(m, 0.0);
    for (int s = 0; s < m; ++s) {
      double sums[3] = {sums_[s][0], sums_[s][1], sums_[s][2]};
      out[s] = integral_combine(specs_[s], sums);
    }
  }

 private:
  struct VertexState {
    Vec3 normal = Vec3::UnitZ();
    double H = 0.0, K = 0.0, area = 0.0;
  };

  struct FieldArrays {
    std::vector<Vec3> normal;
    std::vector<double> H, K, area;
  };

  void refit_vertex(VertexId i, VertexState& st) {
    scratch_points_.clear();
    for (VertexId id : stencil_[i]) scratch_points_.push_back(positions_[id]);
    const LocalChart chart = fit_chart_points(
        positions_[i], scratch_points_, frames_[i], radius_[i], false);
    const FundamentalForms forms = fundamental_forms(chart);
    st.normal = chart.frame.normal;
    st.H = forms.H;
    st.K = forms.K;
    st.area = lumped_area(i);
  }

  double lumped_area(VertexId i) const {
    double area = 0.0;
    for (int f : mesh_.vertex_triangles()[i]) {
      const Triangle& t = mesh_.triangle(f);
      const Vec3& a = positions_[t[0]];
      const Vec3& b = positions_[t[1]];
      const Vec3& c = positions_[t[2]];
      area += 0.5 * (b - a).cross(c - a).norm() / 3.0;
    }
    return area;
  }

  void set_contribution(int s, VertexId v) {
    double out[3] = {0.0, 0.0, 0.0};
    integral_contributions(specs_[s], positions_[v], state_.normal[v],
                           state_.H[v], state_.K[v], state_.area[v], v, out);
    contrib_[s][v] = {out[0], out[1], out[2]};
  }

  const TriangleMesh& mesh_;
  std::vector<FunctionalSpec> specs_;
  std::vector<Vec3> positions_;
  std::vector<double> radius_;
  std::vector<VertexFrame> frames_;
  std::vector<std::vector<VertexId>> stencil_;
  std::vector<std::vector<VertexId>> chart_deps_;
  std::vector<std::vector<VertexId>> area_deps_;
  std::vector<std::vector<std::array<double, 3>>> contrib_;
  std::vector<std::array<double, 3>> sums_;
  FieldArrays state_;
  std::vector<std::pair<VertexId, VertexState>> scratch_changed_;
  std::vector<Vec3> scratch_points_;
};

double default_fd_step(const TriangleMesh& mesh, double fd_step) {
  return fd_step > 0.0 ? fd_step : 1e-6 * mesh.bounding_box_diagonal();
}

// Weighted finite-difference gradient of several curvature specs at once;
// vertices are split across threads, each with its own model instance.
std::vector<Vec3> fd_gradient(const TriangleMesh& mesh,
                              const CurvatureField& field,
                              const std::vector<FunctionalSpec>& specs,
                              const std::vector<double>& weights,
                              double fd_step) {
  const int nv = mesh.vertex_count();
  std::vector<Vec3> grad(nv, Vec3::Zero());
  const int workers =
      std::max(1, std::min(thread_count(), nv / 64 + 1));
  std::vector<std::thread> threads;
  auto run_range = [&](int lo, int hi) {
    EnergyModel model(mesh, field, specs);
    std::vector<double> plus, minus;
    for (int j = lo; j < hi; ++j) {
      for (int c = 0; c < 3; ++c) {
        Vec3 p = mesh.vertex(j);
        p[c] += fd_step;
        model.perturbed_energies(j, p, plus);
        p[c] -= 2.0 * fd_step;
        model.perturbed_energies(j, p, minus);
        double g = 0.0;
        for (std::size_t s = 0; s < specs.size(); ++s)
          g += weights[s] * (plus[s] - minus[s]);
        grad[j][c] = g / (2.0 * fd_step);
      }
    }
  };
  if (workers <= 1) {
    run_range(0, nv);
  } else {
    const int chunk = (nv + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int lo = w * chunk;
      if (lo >= nv) break;
      threads.emplace_back(run_range, lo, std::min(nv, lo + chunk));
    }
    for (auto& th : threads) th.join();
  }
  return grad;
}

}  // namespace

std::vector<Vec3> shape_gradient(const TriangleMesh& mesh,
                                 const CurvatureField& field,
                                 const FunctionalSpec& spec, double fd_step) {
  if (spec.kind == FunctionalKind::Area) return analytic_area_gradient(mesh);
  if (spec.kind == FunctionalKind::Volume)
    return analytic_volume_gradient(mesh);
  return fd_gradient(mesh, field, {spec}, {1.0},
                     default_fd_step(mesh, fd_step));
}

// ---------------------------------------------------------------------------
// minimize
// ---------------------------------------------------------------------------

namespace {

struct ConstraintValue {
  double raw = 0.0;        // functional value
  double violation = 0.0;  // signed for Equal, max(0, .) for LessEqual
};

std::vector<ConstraintValue> constraint_values(const TriangleMesh& mesh,
                                               const CurvatureField& field,
                                               const ConstraintSpec& cons) {
  std::vector<ConstraintValue> out;
  out.reserve(cons.constraints.size());
  for (const Constraint& c : cons.constraints) {
    ConstraintValue v;
    v.raw = evaluate(mesh, field, c.functional);
    const double diff = v.raw - c.target;
    v.violation =
        c.relation == ConstraintRelation::Equal ? diff : std::max(0.0, diff);
    out.push_back(v);
  }
  return out;
}

double augmented_energy(double energy,
                        const std::vector<ConstraintValue>& values,
                        const ConstraintSpec& cons,
                        const std::vector<double>& lambda, double mu) {
  double aug = energy;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double c = values[k].violation;
    if (cons.constraints[k].relation == ConstraintRelation::Equal)
      aug += lambda[k] * c + 0.5 * mu * c * c;
    else
      aug += 0.5 * mu * c * c;
  }
  return aug;
}

// Topology guard: fixed connectivity keeps the Euler characteristic exact,
// and a genus change would move the Gauss integral by a 4*pi quantum, far
// beyond the curvature-fit wobble. Checked against the initial integral so
// static discretization bias does not false-alarm.
// Fit-based curvature energies are blind to oscillations below the chart
// radius, so a raw finite-difference gradient carries grid-scale components
// that roughen the surface without lowering the energy; the certification
// filter then blocks all but vanishing steps. The descent direction is
// therefore the normal-speed field of the gradient, smoothed over vertex
// rings. Armijo still measures the true energy along it.
std::vector<Vec3> smoothed_normal_direction(const TriangleMesh& mesh,
                                            const CurvatureField& field,
                                            const std::vector<Vec3>& grad) {
  const int nv = mesh.vertex_count();
  std::vector<double> speed(nv);
  for (int v = 0; v < nv; ++v) speed[v] = -grad[v].dot(field.normal[v]);
  std::vector<double> next(nv);
  for (int pass = 0; pass < 3; ++pass) {
    for (int v = 0; v < nv; ++v) {
      double sum = speed[v];
      const auto& nbrs = mesh.vertex_neighbors()[v];
      for (VertexId w : nbrs) sum += speed[w];
      next[v] = sum / (1.0 + nbrs.size());
    }
    speed.swap(next);
  }
  std::vector<Vec3> dir(nv);
  for (int v = 0; v < nv; ++v) dir[v] = speed[v] * field.normal[v];
  return dir;
}

void check_gauss_bonnet(const TriangleMesh& mesh, const CurvatureField& field,
                        int genus, double initial_gauss) {
  if (measures(mesh).genus != genus)
    throw DomainError("genus changed during optimization");
  const double got = evaluate(mesh, field, FunctionalSpec::gauss_integral());
  if (std::abs(got - initial_gauss) > 2.0 * M_PI)
    throw DomainError("Gauss integral drifted by " +
                      std::to_string(got - initial_gauss) +
                      ", a topology-scale jump");
}

}  // namespace

MinimizeResult minimize(const TriangleMesh& initial,
                        const FunctionalSpec& objective,
                        const ConstraintSpec& constraints,
                        const OptimizerConfig& config) {
  // Isoperimetric gate on paired area/volume equality constraints.
  {
    double A0 = -1.0, V0 = -1.0;
    for (const Constraint& c : constraints.constraints) {
      if (c.relation != ConstraintRelation::Equal) continue;
      if (c.functional.kind == FunctionalKind::Area) A0 = c.target;
      if (c.functional.kind == FunctionalKind::Volume) V0 = c.target;
    }
    if (A0 > 0.0 && V0 > 0.0) {
      const IsoperimetricStatus st = isoperimetric_check(A0, V0);
      if (st == IsoperimetricStatus::Infeasible)
        throw InfeasibleConstraintsError(
            "A0^3 < 36 pi V0^2: no surface satisfies both constraints");
      if (st == IsoperimetricStatus::OnlyBall)
        throw InfeasibleConstraintsError(
            "A0^3 = 36 pi V0^2: the round ball is the only admissible shape");
    }
  }

  const double eps = config.epsilon;
  const double eps_slack = eps * (1.0 - config.reach_slack);
  const double fd = default_fd_step(initial, config.fd_step);

  TriangleMesh mesh = initial;
  CurvatureField field = curvature_field(mesh);
  // Chart radii are frozen for the whole run up to a global sqrt(area)
  // rescale. Fully adaptive radii are only piecewise-smooth in the vertex
  // positions (their kinks make the finite-difference gradient inconsistent
  // with the line-search energy), while fully frozen radii let the descent
  // cheat by shrinking the surface into the fit's smoothing bias. The
  // rescale's own energy sensitivity enters the gradient analytically
  // through the area gradient.
  std::vector<double> radii0(mesh.vertex_count());
  for (int v = 0; v < mesh.vertex_count(); ++v)
    radii0[v] = field.diagnostics[v].radius;
  const double area0 = measures(mesh).area;
  auto scaled_radii = [&](const TriangleMesh& m, double factor = 1.0) {
    const double s = std::sqrt(measures(m).area / area0) * factor;
    std::vector<double> r(radii0);
    for (double& x : r) x *= s;
    return r;
  };
  {
    const Certificate cert =
        certify_ball_condition(mesh, field, eps, discretization_tolerance(mesh, field));
    if (!cert.passed)
      throw InitialMeshNotCertifiedError(
          "initial mesh fails the ball condition at epsilon = " +
          std::to_string(eps));
  }
  const int genus0 = measures(mesh).genus;
  const double gauss0 =
      evaluate(mesh, field, FunctionalSpec::gauss_integral());
  const double diameter0 = mesh.diameter();

  const std::size_t n_cons = constraints.constraints.size();
  std::vector<double> lambda(n_cons, 0.0);
  double mu = config.al_mu;
  double last_update_violation = std::numeric_limits<double>::infinity();

  OptimizationTrace trace;
  auto record = [&](int iter, double energy, double aug,
                    const std::vector<ConstraintValue>& values, double step,
                    bool accepted, double margin) {
    TraceRow row;
    row.iteration = iter;
    row.energy = energy;
    row.augmented_energy = aug;
    for (const auto& v : values) row.violations.push_back(v.violation);
    row.multipliers = lambda;
    row.penalty_mu = mu;
    row.step = step;
    row.accepted = accepted;
    row.certified_epsilon_margin = margin;
    trace.rows.push_back(row);
  };

  double energy = evaluate(mesh, field, objective);
  std::vector<ConstraintValue> values =
      constraint_values(mesh, field, constraints);
  double aug = augmented_energy(energy, values, constraints, lambda, mu);
  {
    const Certificate c0 = certify_ball_condition(mesh, field, eps_slack,
                                                  discretization_tolerance(mesh, field));
    record(0, energy, aug, values, 0.0, true,
           c0.min_clearance + c0.tolerance);
  }

  double step = config.step;
  int accepted_since_update = 0;

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    // Assemble the gradient of the augmented energy.
    std::vector<FunctionalSpec> fd_specs;
    std::vector<double> fd_weights;
    std::vector<Vec3> grad(mesh.vertex_count(), Vec3::Zero());
    auto add_term = [&](const FunctionalSpec& spec, double weight) {
      if (weight == 0.0) return;
      if (is_measure_kind(spec)) {
        const std::vector<Vec3> g = spec.kind == FunctionalKind::Area
                                        ? analytic_area_gradient(mesh)
                                        : analytic_volume_gradient(mesh);
        for (int v = 0; v < mesh.vertex_count(); ++v) grad[v] += weight * g[v];
      } else {
        fd_specs.push_back(spec);
        fd_weights.push_back(weight);
      }
    };
    add_term(objective, 1.0);
    for (std::size_t k = 0; k < n_cons; ++k) {
      const Constraint& c = constraints.constraints[k];
      const double w =
          c.relation == ConstraintRelation::Equal
              ? lambda[k] + mu * values[k].violation
              : mu * values[k].violation;
      add_term(c.functional, w);
    }
    if (!fd_specs.empty()) {
      const std::vector<Vec3> g =
          fd_gradient(mesh, field, fd_specs, fd_weights, fd);
      for (int v = 0; v < mesh.vertex_count(); ++v) grad[v] += g[v];

      // d(energy)/d(radius scale) term of the sqrt(area) rescale:
      // radii = radii0 * sqrt(A/A0), so dE/dx += dE/du * gradA / (2A)
      // with u the relative radius factor.
      const double du = 1e-4;
      const CurvatureField f_plus =
          curvature_field_fixed_radii(mesh, scaled_radii(mesh, 1.0 + du));
      const CurvatureField f_minus =
          curvature_field_fixed_radii(mesh, scaled_radii(mesh, 1.0 - du));
      double dEdu = 0.0;
      for (std::size_t s = 0; s < fd_specs.size(); ++s)
        dEdu += fd_weights[s] *
                (evaluate(mesh, f_plus, fd_specs[s]) -
                 evaluate(mesh, f_minus, fd_specs[s])) /
                (2.0 * du);
      if (dEdu != 0.0) {
        const double area_now = measures(mesh).area;
        const std::vector<Vec3> ga = analytic_area_gradient(mesh);
        const double c = dEdu / (2.0 * area_now);
        for (int v = 0; v < mesh.vertex_count(); ++v) grad[v] += c * ga[v];
      }
    }

    double grad_inf = 0.0;
    for (const Vec3& g : grad)
      grad_inf = std::max(grad_inf, g.cwiseAbs().maxCoeff());
    if (grad_inf < config.grad_tol) {
      trace.termination = "grad_tol";
      return {mesh, trace};
    }

    // Descent direction: ring-smoothed normal speeds; the raw gradient is
    // the fallback when the smoothed field loses the descent property.
    std::vector<Vec3> dir = smoothed_normal_direction(mesh, field, grad);
    double dir_dd = 0.0, dir_inf = 0.0;
    for (int v = 0; v < mesh.vertex_count(); ++v) {
      dir_dd += grad[v].dot(dir[v]);
      dir_inf = std::max(dir_inf, dir[v].cwiseAbs().maxCoeff());
    }
    if (!(dir_dd < 0.0) || !(dir_inf > 0.0)) {
      dir_dd = 0.0;
      dir_inf = grad_inf;
      for (int v = 0; v < mesh.vertex_count(); ++v) {
        dir[v] = -grad[v];
        dir_dd -= grad[v].squaredNorm();
      }
    }

    // Backtracking line search with the certification filter.
    const bool debug = std::getenv("BALLSHAPE_OPT_DEBUG") != nullptr;
    bool accepted = false;
    int shrinks = 0;
    double margin = std::numeric_limits<double>::quiet_NaN();
    while (shrinks <= 25) {
      std::vector<Vec3> candidate = mesh.vertices();
      const double scale = step / dir_inf;
      for (int v = 0; v < mesh.vertex_count(); ++v)
        candidate[v] += scale * dir[v];
      TriangleMesh trial_mesh = mesh.with_vertices(std::move(candidate));
      // A trial mesh whose charts cannot be fitted is simply a rejected
      // step, like one that fails certification.
      CurvatureField trial_field;
      try {
        trial_field = curvature_field_fixed_radii(trial_mesh,
                                                  scaled_radii(trial_mesh));
      } catch (const Error&) {
        step *= config.step_shrink;
        ++shrinks;
        if (step < config.min_step) break;
        continue;
      }
      const double trial_energy = evaluate(trial_mesh, trial_field, objective);
      const std::vector<ConstraintValue> trial_values =
          constraint_values(trial_mesh, trial_field, constraints);
      const double trial_aug = augmented_energy(trial_energy, trial_values,
                                                constraints, lambda, mu);
      const double required = -config.armijo_c * (step / dir_inf) * dir_dd;
      if (debug)
        std::fprintf(stderr,
                     "[opt] iter %d step %.3e aug %.12g trial %.12g req %.3e "
                     "ginf %.3e\n",
                     iter, step, aug, trial_aug, required, grad_inf);
      if (trial_aug <= aug - required) {
        const Certificate cert = certify_ball_condition(
            trial_mesh, trial_field, eps_slack,
            discretization_tolerance(trial_mesh, trial_field));
        if (cert.passed) {
          mesh = std::move(trial_mesh);
          field = std::move(trial_field);
          energy = trial_energy;
          values = trial_values;
          aug = trial_aug;
          margin = cert.min_clearance + cert.tolerance;
          accepted = true;
          break;
        }
      }
      step *= config.step_shrink;
      ++shrinks;
      if (step < config.min_step) break;
    }

    record(iter, energy, aug, values, step, accepted, margin);

    if (!accepted) {
      if (step < config.min_step) {
        trace.termination = "min_step";
        return {mesh, trace};
      }
      throw StalledError("no certifiable step after 25 shrinks at iteration " +
                         std::to_string(iter));
    }

    check_gauss_bonnet(mesh, field, genus0, gauss0);
    if (mesh.diameter() > 10.0 * diameter0)
      throw DomainError("diameter exceeded 10x the initial diameter");

    step = std::min(step * 2.0, config.step);

    // Multiplier update.
    if (n_cons > 0 && ++accepted_since_update >= config.al_update_every) {
      accepted_since_update = 0;
      double worst = 0.0;
      for (std::size_t k = 0; k < n_cons; ++k) {
        const Constraint& c = constraints.constraints[k];
        if (c.relation == ConstraintRelation::Equal)
          lambda[k] += mu * values[k].violation;
        worst = std::max(worst, std::abs(values[k].violation));
      }
      if (worst > 0.25 * last_update_violation) mu *= config.al_mu_growth;
      last_update_violation = worst;
      aug = augmented_energy(energy, values, constraints, lambda, mu);
    }
  }
  trace.termination = "max_iters";
  return {mesh, trace};
}

std::vector<ContinuityRow> continuity_experiment(
    const std::vector<TriangleMesh>& sequence, const FunctionalSpec& spec,
    int char_fn_grid) {
  if (sequence.size() < 2)
    throw DomainError("continuity_experiment needs at least 2 meshes");
  const TriangleMesh& limit = sequence.back();
  const CurvatureField limit_field = curvature_field(limit);
  const double limit_value = evaluate(limit, limit_field, spec);

  std::vector<ContinuityRow> rows;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    ContinuityRow row;
    row.index = static_cast<int>(i);
    const CurvatureField f = curvature_field(sequence[i]);
    row.value = evaluate(sequence[i], f, spec);
    row.gap = std::abs(row.value - limit_value);
    row.hausdorff = hausdorff_distance(sequence[i], limit);
    row.char_fn = char_fn_distance(sequence[i], limit, char_fn_grid);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ballshape
