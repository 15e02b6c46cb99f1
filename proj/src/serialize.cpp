#include "ballshape/serialize.hpp"

#include <fstream>

#include "ballshape/errors.hpp"

namespace ballshape {

Json to_json(const RadiiTable& t) {
  return Json{{"epsilon", t.epsilon},
              {"f_inv", t.f_inv},
              {"g_inv", t.g_inv},
              {"f_eta_inv", t.f_eta_inv},
              {"chart_radius", t.chart_radius},
              {"lipschitz_L", t.lipschitz_L}};
}

Json to_json(const Certificate& cert) {
  Json violations = Json::array();
  for (const BallViolation& v : cert.violations)
    violations.push_back(
        {{"vertex", v.vertex},
         {"side", v.side == BallSide::Inner ? "inner" : "outer"},
         {"clearance", v.clearance}});
  return Json{{"epsilon", cert.epsilon},
              {"passed", cert.passed},
              {"min_clearance", cert.min_clearance},
              {"violations", violations},
              {"lipschitz_max", cert.lipschitz_max},
              {"kappa_bound_max", cert.kappa_bound_max},
              {"tolerance", cert.tolerance}};
}

Json to_json(const TraceRow& row) {
  return Json{{"iteration", row.iteration},
              {"energy", row.energy},
              {"augmented_energy", row.augmented_energy},
              {"violations", row.violations},
              {"multipliers", row.multipliers},
              {"penalty_mu", row.penalty_mu},
              {"step", row.step},
              {"accepted", row.accepted},
              {"certified_epsilon_margin", row.certified_epsilon_margin}};
}

Json to_json(const OptimizationTrace& trace) {
  Json rows = Json::array();
  for (const TraceRow& row : trace.rows) rows.push_back(to_json(row));
  return rows;
}

Json to_json(const SequenceReport& report) {
  Json rows = Json::array();
  for (const SequenceRow& r : report.rows)
    rows.push_back({{"index", r.index},
                    {"hausdorff", r.hausdorff},
                    {"char_fn", r.char_fn},
                    {"normal_deviation", r.normal_deviation},
                    {"values", r.values},
                    {"gaps", r.gaps}});
  return Json{{"rows", rows},
              {"limit_values", report.limit_values},
              {"functionals", report.functional_names},
              {"gap_monotone", report.gap_monotone}};
}

Json field_to_json(const CurvatureField& field) {
  Json rows = Json::array();
  for (int v = 0; v < field.vertex_count(); ++v)
    rows.push_back({{"vertex", v},
                    {"H", field.H[v]},
                    {"K", field.K[v]},
                    {"kappa1", field.kappa1[v]},
                    {"kappa2", field.kappa2[v]},
                    {"area", field.lumped_area[v]}});
  return rows;
}

std::string field_to_csv(const CurvatureField& field) {
  std::string out = "vertex,H,K,kappa1,kappa2,area\n";
  char buf[256];
  for (int v = 0; v < field.vertex_count(); ++v) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", v,
                  field.H[v], field.K[v], field.kappa1[v], field.kappa2[v],
                  field.lumped_area[v]);
    out += buf;
  }
  return out;
}

namespace {

FunctionalKind kind_from_string(const std::string& s) {
  if (s == "area") return FunctionalKind::Area;
  if (s == "volume") return FunctionalKind::Volume;
  if (s == "willmore") return FunctionalKind::Willmore;
  if (s == "helfrich") return FunctionalKind::Helfrich;
  if (s == "canham_helfrich") return FunctionalKind::CanhamHelfrich;
  if (s == "gauss_integral") return FunctionalKind::GaussIntegral;
  if (s == "mean_integral") return FunctionalKind::MeanIntegral;
  if (s == "vesicle") return FunctionalKind::VesicleEnergy;
  if (s == "generic") return FunctionalKind::Generic;
  throw ParseError("unknown functional kind: " + s);
}

}  // namespace

FunctionalSpec functional_from_json(const Json& j) {
  FunctionalSpec spec;
  spec.kind = kind_from_string(j.at("kind").get<std::string>());
  spec.k_b = j.value("k_b", 1.0);
  spec.H0 = j.value("H0", 0.0);
  spec.k_G = j.value("k_G", 0.0);
  spec.k_m = j.value("k_m", 0.0);
  spec.M0 = j.value("M0", 0.0);
  if (j.contains("j0")) spec.j0 = Expression::parse(j.at("j0"));
  if (j.contains("j1")) spec.j1 = Expression::parse(j.at("j1"));
  if (j.contains("j2")) spec.j2 = Expression::parse(j.at("j2"));
  return spec;
}

ConstraintSpec constraints_from_json(const Json& j) {
  ConstraintSpec spec;
  const Json& list = j.is_array() ? j : j.at("constraints");
  for (const Json& c : list) {
    Constraint out;
    out.functional = functional_from_json(c.at("functional"));
    const std::string rel = c.value("relation", "equal");
    if (rel == "equal") out.relation = ConstraintRelation::Equal;
    else if (rel == "less_equal") out.relation = ConstraintRelation::LessEqual;
    else throw ParseError("unknown constraint relation: " + rel);
    out.target = c.at("target").get<double>();
    out.tolerance = c.value("tolerance", 1e-3);
    spec.constraints.push_back(std::move(out));
  }
  return spec;
}

OptimizerConfig optimizer_config_from_json(const Json& j) {
  OptimizerConfig c;
  c.epsilon = j.value("epsilon", c.epsilon);
  c.step = j.value("step", c.step);
  c.max_iters = j.value("max_iters", c.max_iters);
  c.fd_step = j.value("fd_step", c.fd_step);
  c.al_mu = j.value("al_mu", c.al_mu);
  c.al_mu_growth = j.value("al_mu_growth", c.al_mu_growth);
  c.al_update_every = j.value("al_update_every", c.al_update_every);
  c.reach_slack = j.value("reach_slack", c.reach_slack);
  c.armijo_c = j.value("armijo_c", c.armijo_c);
  c.step_shrink = j.value("step_shrink", c.step_shrink);
  c.min_step = j.value("min_step", c.min_step);
  c.grad_tol = j.value("grad_tol", c.grad_tol);
  c.seed = j.value("seed", c.seed);
  return c;
}

ShapeSpec shape_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "icosphere")
    return Icosphere{j.value("radius", 1.0), j.value("subdiv", 3)};
  if (kind == "torus")
    return Torus{j.value("R", 2.0), j.value("r", 0.5), j.value("nu", 64),
                 j.value("nv", 32)};
  if (kind == "ellipsoid")
    return Ellipsoid{j.value("a", 1.0), j.value("b", 1.0), j.value("c", 1.0),
                     j.value("subdiv", 3)};
  if (kind == "perturbed_sphere")
    return PerturbedSphere{j.value("radius", 1.0), j.value("amp", 0.0),
                           j.value("mode", 2), j.value("subdiv", 3)};
  throw ParseError("unknown shape kind: " + kind);
}

SequenceSpec sequence_spec_from_json(const Json& j) {
  SequenceSpec spec;
  const std::string family = j.at("family").get<std::string>();
  if (family == "perturbation_decay") {
    spec.is_refinement = false;
    const ShapeSpec base = shape_from_json(j.at("base"));
    if (!std::holds_alternative<PerturbedSphere>(base) &&
        !std::holds_alternative<Icosphere>(base))
      throw ParseError("decay family needs a sphere-like base");
    if (std::holds_alternative<PerturbedSphere>(base))
      spec.decay.base = std::get<PerturbedSphere>(base);
    else {
      const Icosphere& s = std::get<Icosphere>(base);
      spec.decay.base = PerturbedSphere{s.radius, 0.0, j.value("mode", 2),
                                        s.subdiv};
    }
    if (j.contains("mode")) spec.decay.base.mode = j.at("mode").get<int>();
    spec.decay.amp_schedule =
        j.at("amps").get<std::vector<double>>();
  } else if (family == "refinement") {
    spec.is_refinement = true;
    spec.refinement.base = shape_from_json(j.at("base"));
    spec.refinement.levels = j.at("levels").get<std::vector<int>>();
  } else {
    throw ParseError("unknown sequence family: " + family);
  }
  for (const Json& f : j.at("functionals")) {
    spec.functionals.push_back(functional_from_json(f));
    spec.functional_names.push_back(f.at("kind").get<std::string>());
  }
  spec.epsilon = j.value("epsilon", 0.3);
  spec.char_fn_grid = j.value("grid_res", 32);
  return spec;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json_file(const Json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace ballshape
