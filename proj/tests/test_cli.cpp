#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "support.hpp"

// Spawns the installed CLI binary and checks outputs, exit codes and the
// determinism contract.

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "oscnet_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& label) {
  const fs::path out = scratch_dir() / (label + ".out");
  const fs::path err = scratch_dir() / (label + ".err");
  const std::string cmd = std::string(OSCNET_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path p = scratch_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << content;
  return p;
}

fs::path k2_file() {
  static const fs::path p = write_file("k2.edges", "1 2 1.0\n");
  return p;
}

fs::path p3_file() {
  static const fs::path p = write_file("p3.edges", "1 2 1.0\n2 3 1.0\n");
  return p;
}

fs::path sixnode_file() {
  static const fs::path p =
      write_file("six.edges", testsupport::sixnode_edge_list());
  return p;
}

}  // namespace

TEST_CASE("spectrum of the two-node graph") {
  const RunResult r = run_cli("spectrum --graph " + k2_file().string(), "spec_k2");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j.size() == 2);
  CHECK(std::abs(j[0]["lambda"].get<double>()) < 1e-10);
  CHECK(j[0]["omega"].get<double>() == 0.0);
  CHECK(j[1]["lambda"].get<double>() == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(j[1]["omega"].get<double>() ==
        doctest::Approx(1.4142135623730951).epsilon(1e-10));
}

TEST_CASE("spectrum of the path graph is 0, 1, 3") {
  const RunResult r = run_cli("spectrum --graph " + p3_file().string(), "spec_p3");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j.size() == 3);
  CHECK(std::abs(j[0]["lambda"].get<double>()) < 1e-10);
  CHECK(j[1]["lambda"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(j[2]["lambda"].get<double>() == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("directed cycle with a complex spectrum exits 2") {
  const fs::path cyc = write_file("cyc3.edges", "1 2 1.0\n2 3 1.0\n3 1 1.0\n");
  const RunResult r =
      run_cli("spectrum --directed --graph " + cyc.string(), "spec_cyc3");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("not real") != std::string::npos);
}

TEST_CASE("directed graph with a real spectrum still decomposes") {
  const fs::path tree =
      write_file("tree.edges", "1 2 2.0\n2 1 1.0\n2 3 1.0\n3 2 2.0\n");
  const RunResult r =
      run_cli("spectrum --directed --graph " + tree.string(), "spec_tree");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j.size() == 3);
  CHECK(j[2]["lambda"].get<double>() == doctest::Approx(4.0).epsilon(1e-8));
}

TEST_CASE("simulate: impulse lands on the second node at t1 = pi/sqrt(2)") {
  const RunResult r = run_cli(
      "simulate --graph " + k2_file().string() +
          " --solver boson --init delta:1 --t0 0 --t1 2.2214414690791831 "
          "--samples 3 --format json",
      "sim_k2");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["solver"] == "boson");
  const auto& last = j["states"][2];
  // packed layout: [plus_1, minus_1, plus_2, minus_2], init is delta/2
  CHECK(std::abs(last[0][0].get<double>()) < 1e-10);
  CHECK(std::abs(last[0][1].get<double>()) < 1e-10);
  CHECK(last[2][0].get<double>() == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("simulate: fermion and boson re_sum agree on a regular graph") {
  const std::string common = " --generate cycle:4 --init delta:2 --t0 0 --t1 5 --samples 6 --format csv";
  const RunResult rb = run_cli("simulate --solver boson" + common, "sim_reg_b");
  const RunResult rf = run_cli("simulate --solver fermion" + common, "sim_reg_f");
  REQUIRE(rb.exit_code == 0);
  REQUIRE(rf.exit_code == 0);

  auto re_sum_column = [](const std::string& csv) {
    std::vector<double> vals;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      const auto pos = line.rfind(',');
      const auto pos2 = line.rfind(',', pos - 1);
      vals.push_back(std::stod(line.substr(pos2 + 1, pos - pos2 - 1)));
    }
    return vals;
  };
  const auto vb = re_sum_column(rb.out);
  const auto vf = re_sum_column(rf.out);
  REQUIRE(vb.size() == vf.size());
  for (std::size_t i = 0; i < vb.size(); ++i)
    CHECK(vf[i] == doctest::Approx(vb[i]).epsilon(1e-10));
}

TEST_CASE("simulate: a single sample at t = 0 echoes the initial condition") {
  const RunResult r = run_cli(
      "simulate --graph " + p3_file().string() +
          " --init delta:2 --t0 0 --t1 0 --samples 1 --format csv",
      "sim_echo");
  REQUIRE(r.exit_code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,node,re_plus,im_plus,re_minus,im_minus,re_sum,im_sum");

  auto fields = [](const std::string& row) {
    std::vector<double> vals;
    std::istringstream fs(row);
    std::string cell;
    while (std::getline(fs, cell, ',')) vals.push_back(std::stod(cell));
    return vals;
  };
  std::getline(in, line);
  const auto node1 = fields(line);
  REQUIRE(node1.size() == 8);
  CHECK(node1[1] == 1.0);
  for (std::size_t c = 2; c < 8; ++c) CHECK(std::abs(node1[c]) <= 1e-12);
  std::getline(in, line);
  const auto node2 = fields(line);
  CHECK(node2[1] == 2.0);
  CHECK(node2[2] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(node2[4] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(node2[6] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("identical runs produce byte-identical output files") {
  const std::string base = "simulate --graph " + sixnode_file().string() +
                           " --solver fermion --init delta:1 --t0 0 --t1 8 "
                           "--samples 17 --format csv --out ";
  const fs::path out1 = scratch_dir() / "det1.csv";
  const fs::path out2 = scratch_dir() / "det2.csv";
  REQUIRE(run_cli(base + out1.string(), "det1").exit_code == 0);
  REQUIRE(run_cli(base + out2.string(), "det2").exit_code == 0);
  const std::string a = slurp(out1), b = slurp(out2);
  CHECK(!a.empty());
  CHECK(a == b);

  const RunResult s1 = run_cli("spectrum --graph " + sixnode_file().string(), "det3");
  const RunResult s2 = run_cli("spectrum --graph " + sixnode_file().string(), "det4");
  CHECK(s1.out == s2.out);
}

TEST_CASE("verify passes on the path graph with the fermion solver") {
  const RunResult r = run_cli(
      "verify --graph " + p3_file().string() + " --solver fermion --init delta:1",
      "verify_p3");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["pass"] == true);
  for (const auto& report : j["reports"]) CHECK(report["pass"] == true);
  for (const auto& check : j["oracle"]) CHECK(check["pass"] == true);
}

TEST_CASE("verify on the six-node graph reports a genuine solver difference") {
  const RunResult r = run_cli(
      "verify --graph " + sixnode_file().string() + " --init delta:1 --t1 10 --samples 21",
      "verify_six");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["solver_difference"]["max"].get<double>() > 1e-3);
}

TEST_CASE("an unreachable tolerance override fails verification with exit 3") {
  const RunResult r = run_cli(
      "verify --graph " + p3_file().string() +
          " --solver boson --init delta:1 --tol-residual 1e-16",
      "verify_fail");
  CHECK(r.exit_code == 3);
  const json j = json::parse(r.out);
  CHECK(j["pass"] == false);
}

TEST_CASE("sparsity report on the path and the complete graph") {
  const RunResult r =
      run_cli("sparsity --graph " + p3_file().string(), "sparsity_p3");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["pattern_H_equals_L"] == true);
  for (const auto& rep : j["reports"]) {
    if (rep["matrix"] == "L") CHECK(rep["nnz_offdiag"] == 4);
    if (rep["matrix"] == "sqrtL") CHECK(rep["nnz_offdiag"] == 6);
    if (rep["matrix"] == "H") CHECK(rep["nnz_offdiag"] == 4);
  }

  const RunResult rk4c = run_cli("sparsity --generate complete:4", "sparsity_k4");
  REQUIRE(rk4c.exit_code == 0);
  const json jk = json::parse(rk4c.out);
  std::size_t nnz_l = 0, nnz_sqrt = 0;
  for (const auto& rep : jk["reports"]) {
    if (rep["matrix"] == "L") nnz_l = rep["nnz_offdiag"].get<std::size_t>();
    if (rep["matrix"] == "sqrtL") nnz_sqrt = rep["nnz_offdiag"].get<std::size_t>();
  }
  CHECK(nnz_l == 12);
  CHECK(nnz_sqrt == nnz_l);
}

TEST_CASE("usage and validation errors exit 1") {
  CHECK(run_cli("simulate", "err_nograph").exit_code == 1);
  CHECK(run_cli("spectrum --graph /nonexistent/file", "err_nofile").exit_code == 1);
  CHECK(run_cli("simulate --generate cycle:4 --init delta:9", "err_badnode").exit_code == 1);
  CHECK(run_cli("simulate --generate cycle:4 --solver tachyon", "err_solver").exit_code == 1);
  CHECK(run_cli("nonsense", "err_cmd").exit_code == 1);
  CHECK(run_cli("simulate --generate cycle:4 --t0 2 --t1 1", "err_grid").exit_code == 1);
}

TEST_CASE("initial conditions load from a JSON file") {
  const fs::path init = write_file("init.json",
                                   R"({"plus": [[1.0, 0.0], [0.0, 0.5], [0.0, 0.0]],
                                       "minus": [[1.0, 0.0], [0.0, -0.5], [0.0, 0.0]]})");
  const RunResult r = run_cli(
      "simulate --graph " + p3_file().string() + " --init " + init.string() +
          " --t0 0 --t1 0 --samples 1 --format json",
      "init_file");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["states"][0][0][0].get<double>() == doctest::Approx(1.0));
  CHECK(j["states"][0][2][1].get<double>() == doctest::Approx(0.5));
  CHECK(j["states"][0][3][1].get<double>() == doctest::Approx(-0.5));
}

TEST_CASE("drift-exciting file init fails only the first-order fermion residual") {
  // x+(0) != x-(0) with a nonzero degree-weighted mean difference excites
  // the zero mode's linear drift, which the closed form omits by
  // construction; the wave and component equations still hold.
  const fs::path init = write_file("drift.json",
                                   R"({"plus": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
                                       "minus": [[0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]})");
  const RunResult r = run_cli(
      "verify --graph " + p3_file().string() + " --solver fermion --init " +
          init.string(),
      "verify_drift");
  CHECK(r.exit_code == 3);
  const json j = json::parse(r.out);
  CHECK(j["pass"] == false);
  for (const auto& report : j["reports"]) {
    if (report["equation"] == "fermion") {
      CHECK(report["pass"] == false);
    } else {
      CHECK(report["pass"] == true);
    }
  }
}

TEST_CASE("config file supplies defaults and flags override it") {
  const fs::path cfg = write_file("run.json",
                                  R"({"generate": "cycle:5", "solver": "boson",
                                      "init": "delta:1", "t0": 0.0, "t1": 4.0,
                                      "samples": 5, "format": "csv"})");
  const RunResult from_cfg =
      run_cli("simulate --config " + cfg.string(), "cfg_plain");
  REQUIRE(from_cfg.exit_code == 0);
  // 5 samples x 5 nodes + header
  CHECK(std::count(from_cfg.out.begin(), from_cfg.out.end(), '\n') == 26);

  const RunResult overridden =
      run_cli("simulate --config " + cfg.string() + " --samples 2", "cfg_override");
  REQUIRE(overridden.exit_code == 0);
  CHECK(std::count(overridden.out.begin(), overridden.out.end(), '\n') == 11);
}

TEST_CASE("eigenmode preset stays stationary in shape under the boson solver") {
  const RunResult r = run_cli(
      "simulate --generate path:4 --init eigenmode:0 --t0 0 --t1 3 --samples 4 "
      "--format json",
      "eigenmode");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  // zero mode: constant in time
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t slot = 0; slot < 8; ++slot) {
      CHECK(j["states"][k][slot][0].get<double>() ==
            doctest::Approx(j["states"][0][slot][0].get<double>()).epsilon(1e-10));
      CHECK(std::abs(j["states"][k][slot][1].get<double>()) < 1e-10);
    }
}
