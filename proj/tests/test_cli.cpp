// End-to-end checks of the command-line front end: spawns the real binary,
// parses its JSON output, and verifies the documented exit codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

using Json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(BALLSHAPE_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
    result.out.append(buf.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("generate then eval computes the sphere Willmore energy") {
  const RunResult gen = run_cli(
      "generate icosphere --radius 1 --subdiv 4 --out /tmp/bs_cli_s.off");
  CHECK(gen.exit_code == 0);
  const Json meta = Json::parse(gen.out);
  CHECK(meta.at("vertices") == 2562);
  CHECK(meta.at("genus") == 0);

  const RunResult eval =
      run_cli("eval --mesh /tmp/bs_cli_s.off --kind willmore");
  CHECK(eval.exit_code == 0);
  const double value = Json::parse(eval.out).at("value");
  CHECK(value == doctest::Approx(4.0 * kPi).epsilon(0.02));
}

TEST_CASE("eval output is byte-identical across runs") {
  run_cli("generate icosphere --radius 1 --subdiv 3 --out /tmp/bs_cli_d.off");
  const RunResult a = run_cli("eval --mesh /tmp/bs_cli_d.off --kind willmore");
  const RunResult b = run_cli("eval --mesh /tmp/bs_cli_d.off --kind willmore");
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("certify exit codes reflect the verdict") {
  run_cli("generate icosphere --radius 1 --subdiv 4 --out /tmp/bs_cli_c.off");
  const RunResult pass =
      run_cli("--quiet certify --mesh /tmp/bs_cli_c.off --epsilon 0.5");
  CHECK(pass.exit_code == 0);
  CHECK(Json::parse(pass.out).at("passed") == true);

  const RunResult fail =
      run_cli("--quiet certify --mesh /tmp/bs_cli_c.off --epsilon 1.1");
  CHECK(fail.exit_code == 1);
  const Json cert = Json::parse(fail.out);
  CHECK(cert.at("passed") == false);
  CHECK(!cert.at("violations").empty());
}

TEST_CASE("radii reports the paper constants") {
  const RunResult r = run_cli("radii --epsilon 1");
  CHECK(r.exit_code == 0);
  const Json table = Json::parse(r.out);
  CHECK(table.at("f_inv").get<double>() < 0.5);
  CHECK(table.at("g_inv").get<double>() < 1.0 / 32.0);
  CHECK(table.at("chart_radius").get<double>() > 0.0);
}

TEST_CASE("reach locates the unit sphere radius scale") {
  run_cli("generate icosphere --radius 1 --subdiv 3 --out /tmp/bs_cli_r.off");
  const RunResult r = run_cli("--quiet reach --mesh /tmp/bs_cli_r.off");
  CHECK(r.exit_code == 0);
  const double reach = Json::parse(r.out).at("reach");
  CHECK(reach > 0.2);
  CHECK(reach < 1.1);
}

TEST_CASE("eval --field dumps a curvature table") {
  run_cli("generate icosphere --radius 1 --subdiv 2 --out /tmp/bs_cli_f.off");
  const RunResult r = run_cli(
      "eval --mesh /tmp/bs_cli_f.off --field /tmp/bs_cli_field.csv "
      "--kind gauss_integral");
  CHECK(r.exit_code == 0);
  std::ifstream csv("/tmp/bs_cli_field.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "vertex,H,K,kappa1,kappa2,area");
  int lines = 0;
  std::string line;
  while (std::getline(csv, line)) ++lines;
  CHECK(lines == 162);
}

TEST_CASE("minimize runs end to end with constraints from files") {
  run_cli("generate icosphere --radius 1 --subdiv 2 --out /tmp/bs_cli_m.off");
  {
    std::ofstream obj("/tmp/bs_cli_obj.json");
    obj << R"({"kind": "willmore"})";
  }
  {
    std::ofstream cfg("/tmp/bs_cli_cfg.json");
    cfg << R"({"epsilon": 0.4, "max_iters": 5, "step": 0.01})";
  }
  const RunResult r = run_cli(
      "--quiet minimize --mesh /tmp/bs_cli_m.off --objective "
      "/tmp/bs_cli_obj.json --config /tmp/bs_cli_cfg.json --out "
      "/tmp/bs_cli_min.off --trace /tmp/bs_cli_trace.json");
  CHECK(r.exit_code == 0);
  const Json summary = Json::parse(r.out);
  CHECK(summary.contains("energy"));
  std::ifstream trace_in("/tmp/bs_cli_trace.json");
  const Json trace = Json::parse(trace_in);
  CHECK(trace.is_array());
  CHECK(!trace.empty());
  CHECK(trace[0].contains("augmented_energy"));
}

TEST_CASE("converge writes the report and the CSV mirror") {
  {
    std::ofstream spec("/tmp/bs_cli_seq.json");
    spec << R"({
      "family": "perturbation_decay",
      "base": {"kind": "icosphere", "radius": 1.0, "subdiv": 3},
      "mode": 2,
      "amps": [0.08, 0.04, 0.02],
      "functionals": [{"kind": "area"}, {"kind": "gauss_integral"}],
      "epsilon": 0.5,
      "grid_res": 24
    })";
  }
  const RunResult r = run_cli(
      "--quiet converge --spec /tmp/bs_cli_seq.json --out /tmp/bs_cli_rep.json");
  // grid_res 24 is below the documented floor of 16? no: above; run passes.
  CHECK(r.exit_code == 0);
  std::ifstream rep("/tmp/bs_cli_rep.json");
  const Json report = Json::parse(rep);
  CHECK(report.at("rows").size() == 3);
  std::ifstream csv("/tmp/bs_cli_rep.csv");
  CHECK(csv.good());
}

TEST_CASE("domain and parse failures map to exit codes 1 and 2") {
  CHECK(run_cli("eval --mesh /nonexistent.off --kind area").exit_code == 2);
  CHECK(run_cli("radii --epsilon -1").exit_code == 1);
  {
    std::ofstream bad("/tmp/bs_cli_bad.off");
    bad << "OFF\n4 4 6\nnot numbers\n";
  }
  CHECK(run_cli("eval --mesh /tmp/bs_cli_bad.off --kind area").exit_code == 2);
  CHECK(run_cli("generate icosphere --radius 1 --out /tmp/x.off --bogus 1")
            .exit_code != 0);
}

TEST_CASE("help is available for every subcommand") {
  for (const char* sub :
       {"generate", "certify", "reach", "eval", "minimize", "converge",
        "radii"}) {
    const RunResult r = run_cli(std::string(sub) + " --help");
    CHECK(r.exit_code == 0);
    CHECK(!r.out.empty());
  }
}
