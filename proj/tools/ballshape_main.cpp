// Command-line front end: generate | certify | reach | eval | minimize |
// converge | radii. Machine-readable output is JSON on stdout or in files;
// diagnostics go to stderr. Exit codes: 0 success, 1 domain failure
// (not certified, infeasible, ...), 2 I/O or parse failure.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "ballshape/certifier.hpp"
#include "ballshape/charts.hpp"
#include "ballshape/constants.hpp"
#include "ballshape/convergence.hpp"
#include "ballshape/errors.hpp"
#include "ballshape/functionals.hpp"
#include "ballshape/mesh.hpp"
#include "ballshape/optimizer.hpp"
#include "ballshape/parallel.hpp"
#include "ballshape/serialize.hpp"
#include "ballshape/shapes.hpp"

namespace {

using namespace ballshape;

bool g_quiet = false;

void progress(const std::string& msg) {
  if (!g_quiet) std::fprintf(stderr, "%s\n", msg.c_str());
}

int run(int argc, char** argv) {
  CLI::App app{"geometry toolkit for surfaces under the uniform ball condition"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_flag("--quiet", g_quiet, "suppress progress output");
  app.add_option("--threads", threads, "cap on worker threads");

  // generate
  auto* cmd_gen = app.add_subcommand("generate", "write a primitive mesh");
  std::string gen_kind, gen_out;
  double gen_radius = 1.0, gen_R = 2.0, gen_r = 0.5;
  double gen_a = 1.0, gen_b = 1.0, gen_c = 1.0, gen_amp = 0.0;
  int gen_subdiv = 3, gen_nu = 64, gen_nv = 32, gen_mode = 2;
  cmd_gen->add_option("kind", gen_kind,
                      "icosphere | torus | ellipsoid | perturbed_sphere")
      ->required();
  cmd_gen->add_option("--out", gen_out, "output path (.off or .obj)")
      ->required();
  cmd_gen->add_option("--radius", gen_radius);
  cmd_gen->add_option("--subdiv", gen_subdiv);
  cmd_gen->add_option("--R", gen_R, "torus major radius");
  cmd_gen->add_option("--r", gen_r, "torus minor radius");
  cmd_gen->add_option("--nu", gen_nu);
  cmd_gen->add_option("--nv", gen_nv);
  cmd_gen->add_option("--a", gen_a);
  cmd_gen->add_option("--b", gen_b);
  cmd_gen->add_option("--c", gen_c);
  cmd_gen->add_option("--amp", gen_amp);
  cmd_gen->add_option("--mode", gen_mode);

  // certify
  auto* cmd_cert = app.add_subcommand("certify", "check the ball condition");
  std::string cert_mesh, cert_out;
  double cert_eps = 0.0, cert_tol = -1.0;
  cmd_cert->add_option("--mesh", cert_mesh)->required();
  cmd_cert->add_option("--epsilon", cert_eps)->required();
  cmd_cert->add_option("--tolerance", cert_tol);
  cmd_cert->add_option("--out", cert_out, "also write the certificate here");

  // reach
  auto* cmd_reach = app.add_subcommand("reach", "estimate the reach");
  std::string reach_mesh;
  double reach_tol = -1.0;
  cmd_reach->add_option("--mesh", reach_mesh)->required();
  cmd_reach->add_option("--tolerance", reach_tol);

  // eval
  auto* cmd_eval = app.add_subcommand("eval", "evaluate a functional");
  std::string eval_mesh, eval_kind, eval_spec, eval_field;
  double eval_H0 = 0.0, eval_kb = 1.0, eval_kG = 0.0, eval_km = 0.0,
         eval_M0 = 0.0;
  cmd_eval->add_option("--mesh", eval_mesh)->required();
  cmd_eval->add_option("--kind", eval_kind,
                       "area | volume | willmore | helfrich | canham_helfrich"
                       " | gauss_integral | mean_integral | vesicle");
  cmd_eval->add_option("--spec", eval_spec, "FunctionalSpec JSON file");
  cmd_eval->add_option("--H0", eval_H0);
  cmd_eval->add_option("--k_b", eval_kb);
  cmd_eval->add_option("--k_G", eval_kG);
  cmd_eval->add_option("--k_m", eval_km);
  cmd_eval->add_option("--M0", eval_M0);
  cmd_eval->add_option("--field", eval_field,
                       "dump the curvature field (.json or .csv)");

  // minimize
  auto* cmd_min = app.add_subcommand("minimize", "constrained descent");
  std::string min_mesh, min_obj, min_cons, min_cfg, min_out, min_trace;
  cmd_min->add_option("--mesh", min_mesh)->required();
  cmd_min->add_option("--objective", min_obj)->required();
  cmd_min->add_option("--constraints", min_cons);
  cmd_min->add_option("--config", min_cfg);
  cmd_min->add_option("--out", min_out)->required();
  cmd_min->add_option("--trace", min_trace);

  // converge
  auto* cmd_conv = app.add_subcommand("converge", "sequence experiment");
  std::string conv_spec, conv_out;
  cmd_conv->add_option("--spec", conv_spec)->required();
  cmd_conv->add_option("--out", conv_out)->required();

  // radii
  auto* cmd_radii = app.add_subcommand("radii", "paper constants for epsilon");
  double radii_eps = 1.0;
  cmd_radii->add_option("--epsilon", radii_eps)->required();

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) set_thread_count(threads);

  if (cmd_gen->parsed()) {
    ShapeSpec spec = Icosphere{gen_radius, gen_subdiv};
    if (gen_kind == "icosphere") spec = Icosphere{gen_radius, gen_subdiv};
    else if (gen_kind == "torus") spec = Torus{gen_R, gen_r, gen_nu, gen_nv};
    else if (gen_kind == "ellipsoid")
      spec = Ellipsoid{gen_a, gen_b, gen_c, gen_subdiv};
    else if (gen_kind == "perturbed_sphere")
      spec = PerturbedSphere{gen_radius, gen_amp, gen_mode, gen_subdiv};
    else throw DomainError("unknown shape kind: " + gen_kind);
    const TriangleMesh mesh = generate(spec);
    save_mesh(mesh, gen_out);
    const MeshMeasures m = measures(mesh);
    std::cout << Json{{"vertices", mesh.vertex_count()},
                      {"triangles", mesh.triangle_count()},
                      {"area", m.area},
                      {"volume", m.volume},
                      {"genus", m.genus}}
                     .dump()
              << '\n';
    return 0;
  }

  if (cmd_cert->parsed()) {
    const TriangleMesh mesh = load_mesh(cert_mesh);
    progress("fitting curvature field");
    const CurvatureField field = curvature_field(mesh);
    const Certificate cert =
        certify_ball_condition(mesh, field, cert_eps, cert_tol);
    const Json j = to_json(cert);
    if (!cert_out.empty()) write_json_file(j, cert_out);
    std::cout << j.dump() << '\n';
    return cert.passed ? 0 : 1;
  }

  if (cmd_reach->parsed()) {
    const TriangleMesh mesh = load_mesh(reach_mesh);
    progress("fitting curvature field");
    const CurvatureField field = curvature_field(mesh);
    const double reach = estimate_reach(mesh, field, reach_tol);
    std::cout << Json{{"reach", reach}}.dump() << '\n';
    return 0;
  }

  if (cmd_eval->parsed()) {
    const TriangleMesh mesh = load_mesh(eval_mesh);
    progress("fitting curvature field");
    const CurvatureField field = curvature_field(mesh);
    if (!eval_field.empty()) {
      if (eval_field.size() > 4 &&
          eval_field.substr(eval_field.size() - 4) == ".csv") {
        std::ofstream out(eval_field);
        if (!out) throw IoError("cannot write " + eval_field);
        out << field_to_csv(field);
      } else {
        write_json_file(field_to_json(field), eval_field);
      }
    }
    std::optional<FunctionalSpec> spec;
    if (!eval_spec.empty()) {
      spec = functional_from_json(load_json_file(eval_spec));
    } else if (!eval_kind.empty()) {
      Json j{{"kind", eval_kind}, {"H0", eval_H0}, {"k_b", eval_kb},
             {"k_G", eval_kG},    {"k_m", eval_km}, {"M0", eval_M0}};
      spec = functional_from_json(j);
    }
    if (spec) {
      const double value = evaluate(mesh, field, *spec);
      std::cout << Json{{"value", value}}.dump() << '\n';
    } else if (eval_field.empty()) {
      throw DomainError("eval needs --kind, --spec, or --field");
    }
    return 0;
  }

  if (cmd_min->parsed()) {
    const TriangleMesh mesh = load_mesh(min_mesh);
    const FunctionalSpec objective =
        functional_from_json(load_json_file(min_obj));
    ConstraintSpec constraints;
    if (!min_cons.empty())
      constraints = constraints_from_json(load_json_file(min_cons));
    OptimizerConfig config;
    if (!min_cfg.empty())
      config = optimizer_config_from_json(load_json_file(min_cfg));
    progress("minimizing");
    const MinimizeResult result =
        minimize(mesh, objective, constraints, config);
    save_mesh(result.mesh, min_out);
    if (!min_trace.empty()) write_json_file(to_json(result.trace), min_trace);
    const TraceRow& last = result.trace.rows.back();
    std::cout << Json{{"energy", last.energy},
                      {"iterations", last.iteration},
                      {"termination", result.trace.termination}}
                     .dump()
              << '\n';
    return 0;
  }

  if (cmd_conv->parsed()) {
    const SequenceSpec spec =
        sequence_spec_from_json(load_json_file(conv_spec));
    progress("running sequence");
    const SequenceReport report = run_sequence(spec);
    const Json j = to_json(report);
    write_json_file(j, conv_out);
    // CSV mirror alongside the JSON report.
    std::string csv_path = conv_out;
    const auto dot = csv_path.find_last_of('.');
    csv_path = (dot == std::string::npos ? csv_path : csv_path.substr(0, dot)) +
               ".csv";
    std::ofstream csv(csv_path);
    if (!csv) throw IoError("cannot write " + csv_path);
    csv << "index,hausdorff,char_fn,normal_deviation";
    for (const std::string& name : report.functional_names)
      csv << ',' << name << ',' << name << "_gap";
    csv << '\n';
    char buf[64];
    for (const SequenceRow& row : report.rows) {
      csv << row.index;
      auto emit = [&](double x) {
        std::snprintf(buf, sizeof(buf), ",%.17g", x);
        csv << buf;
      };
      emit(row.hausdorff);
      emit(row.char_fn);
      emit(row.normal_deviation);
      for (std::size_t k = 0; k < row.values.size(); ++k) {
        emit(row.values[k]);
        emit(row.gaps[k]);
      }
      csv << '\n';
    }
    std::cout << j.dump() << '\n';
    return 0;
  }

  if (cmd_radii->parsed()) {
    std::cout << to_json(radii_table(radii_eps)).dump() << '\n';
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
