// oscnet: spectra, closed-form trajectories, residual verification and
// sparsity reports for the network oscillation model.
//
// Exit codes: 0 success, 1 usage/validation error, 2 non-real spectrum,
// 3 verification failure.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "oscnet/errors.hpp"
#include "oscnet/graph.hpp"
#include "oscnet/io.hpp"
#include "oscnet/oracle.hpp"
#include "oscnet/solvers.hpp"
#include "oscnet/spectral.hpp"

namespace {

using nlohmann::json;
using namespace oscnet;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNonRealSpectrum = 2;
constexpr int kExitVerifyFailed = 3;

struct RunConfig {
  std::string graph_path;
  std::string generate_spec;  // KIND:N[:W[:K]]
  bool directed = false;
  std::string solver;  // "boson", "fermion", or "" = both (verify only)
  std::string init = "delta:1";
  double t0 = 0.0;
  double t1 = 5.0;
  int samples = 11;
  std::string format = "csv";
  std::string out_path;
  double tol_zero = kDefaultZeroTol;
  std::optional<double> tol_residual;
};

Graph graph_from_config(const RunConfig& cfg) {
  if (!cfg.graph_path.empty() && !cfg.generate_spec.empty())
    throw ValidationError("use either --graph or --generate, not both");
  if (!cfg.graph_path.empty())
    return Graph::load_edge_list(cfg.graph_path, cfg.directed);
  if (cfg.generate_spec.empty())
    throw ValidationError("no graph source: pass --graph or --generate");

  std::vector<std::string> parts;
  std::stringstream ss(cfg.generate_spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() < 2 || parts.size() > 4)
    throw ValidationError("--generate expects KIND:N[:W[:K]]");
  try {
    const GraphKind kind = graph_kind_from_string(parts[0]);
    const int n = std::stoi(parts[1]);
    const double w = parts.size() > 2 ? std::stod(parts[2]) : 1.0;
    const int ring_degree = parts.size() > 3 ? std::stoi(parts[3]) : 2;
    return Graph::generate(kind, n, w, ring_degree);
  } catch (const std::invalid_argument&) {
    throw ValidationError("--generate: malformed number in '" +
                          cfg.generate_spec + "'");
  }
}

SpinorState initial_state(const RunConfig& cfg, const OperatorSet& ops,
                          const SpectralDecomposition& sd) {
  const std::size_t n = ops.n;
  const auto colon = cfg.init.find(':');
  const std::string head = cfg.init.substr(0, colon);

  if (head == "uniform") {
    if (colon != std::string::npos)
      throw ValidationError("uniform preset takes no argument");
    return SpinorState::from_real_position(Vec(n, 1.0));
  }
  if (head == "delta") {
    if (colon == std::string::npos)
      throw ValidationError("delta preset needs a node id, e.g. delta:1");
    const int node = std::stoi(cfg.init.substr(colon + 1));
    if (node < 1 || static_cast<std::size_t>(node) > n)
      throw ValidationError("delta preset: node id out of range");
    Vec x0(n, 0.0);
    x0[static_cast<std::size_t>(node - 1)] = 1.0;
    return SpinorState::from_real_position(x0);
  }
  if (head == "eigenmode") {
    if (colon == std::string::npos)
      throw ValidationError("eigenmode preset needs a mode index, e.g. eigenmode:1");
    const int mode = std::stoi(cfg.init.substr(colon + 1));
    if (mode < 0 || static_cast<std::size_t>(mode) >= n)
      throw ValidationError("eigenmode preset: mode index out of range");
    Vec x0(n);
    for (std::size_t i = 0; i < n; ++i)
      x0[i] = sd.P(i, static_cast<std::size_t>(mode));
    return SpinorState::from_real_position(x0);
  }
  // anything else is a file path
  SpinorState s = io::load_initial_state(cfg.init);
  if (s.size() != n)
    throw ValidationError("initial state file has wrong dimension");
  return s;
}

std::vector<double> time_grid(const RunConfig& cfg) {
  if (cfg.samples < 1) throw ValidationError("--samples must be >= 1");
  if (cfg.t1 < cfg.t0) throw ValidationError("--t1 must be >= --t0");
  if (cfg.samples > 1 && !(cfg.t1 > cfg.t0))
    throw ValidationError("--t1 must exceed --t0 when samples > 1");
  return linspace(cfg.t0, cfg.t1, static_cast<std::size_t>(cfg.samples));
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file: " + cfg.out_path);
  out << text;
}

int cmd_spectrum(const RunConfig& cfg) {
  const Graph g = graph_from_config(cfg);
  const OperatorSet ops = build_operators(g);
  const SpectralDecomposition sd =
      eigendecompose(ops.L, !g.directed(), cfg.tol_zero);
  emit(cfg, io::spectrum_json(sd).dump(2) + "\n");
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg) {
  const Graph g = graph_from_config(cfg);
  const OperatorSet ops = build_operators(g);
  const SpectralDecomposition sd =
      eigendecompose(ops.L, !g.directed(), cfg.tol_zero);
  const SpinorState init = initial_state(cfg, ops, sd);
  const std::vector<double> times = time_grid(cfg);

  const std::string solver = cfg.solver.empty() ? "boson" : cfg.solver;
  Trajectory traj;
  if (solver == "boson") {
    traj = solve_boson(sd, init, times);
  } else if (solver == "fermion") {
    traj = solve_fermion(ops, sd, init, times);
  } else {
    throw ValidationError("--solver must be boson or fermion");
  }

  if (cfg.format == "csv") {
    emit(cfg, io::trajectory_csv(traj));
  } else if (cfg.format == "json") {
    emit(cfg, io::trajectory_json(traj).dump(2) + "\n");
  } else {
    throw ValidationError("--format must be csv or json");
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  const Graph g = graph_from_config(cfg);
  OperatorSet ops = build_operators(g);
  const SpectralDecomposition sd =
      eigendecompose(ops.L, !g.directed(), cfg.tol_zero);
  attach_sqrt(ops, sd);
  const SpinorState init = initial_state(cfg, ops, sd);
  const std::vector<double> times = time_grid(cfg);
  const double t_end = times.back();

  std::vector<std::string> solvers;
  if (cfg.solver.empty()) {
    solvers = {"boson", "fermion"};
  } else if (cfg.solver == "boson" || cfg.solver == "fermion") {
    solvers = {cfg.solver};
  } else {
    throw ValidationError("--solver must be boson or fermion");
  }

  json result;
  result["graph"] = {{"nodes", g.node_count()}, {"directed", g.directed()}};
  json reports = json::array();
  json oracle_checks = json::array();
  bool all_pass = true;

  auto scaled_tol = [&cfg](EquationTag tag) {
    return cfg.tol_residual.value_or(default_tolerance(tag));
  };
  auto run_residual = [&](const Trajectory& traj, EquationTag tag) {
    const ResidualReport r = residual_check(traj, ops, tag, default_step(tag),
                                            scaled_tol(tag));
    json jr = io::residual_report_json(r);
    jr["solver"] = to_string(traj.tag);
    reports.push_back(std::move(jr));
    all_pass = all_pass && r.pass;
  };

  Trajectory boson_traj, fermion_traj;
  const double oracle_h = 1e-3;
  const double oracle_tol = 1e-6;

  for (const std::string& solver : solvers) {
    if (solver == "boson") {
      boson_traj = solve_boson(sd, init, times);
      run_residual(boson_traj, EquationTag::boson);
      run_residual(boson_traj, EquationTag::wave);

      const CVec integrated = rk4_integrate(boson_generator(ops),
                                            init.pack(), t_end, oracle_h);
      const double err = max_abs_diff(integrated, boson_traj.states.back().pack());
      const bool pass = err <= oracle_tol;
      oracle_checks.push_back({{"solver", "boson"},
                               {"t", t_end},
                               {"max_error", err},
                               {"tolerance", oracle_tol},
                               {"pass", pass}});
      all_pass = all_pass && pass;
    } else {
      fermion_traj = solve_fermion(ops, sd, init, times);
      run_residual(fermion_traj, EquationTag::fermion);
      run_residual(fermion_traj, EquationTag::wave);
      run_residual(fermion_traj, EquationTag::component_plus);
      run_residual(fermion_traj, EquationTag::component_minus);

      const CVec integrated = rk4_integrate(fermion_generator(ops),
                                            init.pack(), t_end, oracle_h);
      const double err =
          max_abs_diff(integrated, fermion_traj.states.back().pack());
      const bool pass = err <= oracle_tol;
      oracle_checks.push_back({{"solver", "fermion"},
                               {"t", t_end},
                               {"max_error", err},
                               {"tolerance", oracle_tol},
                               {"pass", pass}});
      all_pass = all_pass && pass;
    }
  }

  if (solvers.size() == 2) {
    double diff = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k)
      diff = std::max(diff, max_abs_diff(fermion_traj.states[k].pack(),
                                         boson_traj.states[k].pack()));
    result["solver_difference"] = {{"max", diff}};
  }

  result["reports"] = std::move(reports);
  result["oracle"] = std::move(oracle_checks);
  result["pass"] = all_pass;
  emit(cfg, result.dump(2) + "\n");
  return all_pass ? kExitOk : kExitVerifyFailed;
}

int cmd_sparsity(const RunConfig& cfg) {
  const Graph g = graph_from_config(cfg);
  OperatorSet ops = build_operators(g);
  const SpectralDecomposition sd =
      eigendecompose(ops.L, !g.directed(), cfg.tol_zero);
  attach_sqrt(ops, sd);
  const Matrix hhat = build_hamiltonian(ops).Hhat;

  auto entry = [](const std::string& name, const Matrix& m) {
    const std::size_t n = m.rows();
    const std::size_t nnz = nnz_offdiag(m);
    const double slots = static_cast<double>(n) * static_cast<double>(n - 1);
    return json{{"matrix", name},
                {"n", n},
                {"nnz_offdiag", nnz},
                {"density", slots > 0 ? static_cast<double>(nnz) / slots : 0.0}};
  };

  json result;
  result["reports"] = json::array({entry("L", ops.L), entry("sqrtL", *ops.sqrtL),
                                   entry("H", ops.H), entry("Hhat", hhat)});
  const bool pattern_ok = same_offdiag_pattern(ops.H, ops.L);
  result["pattern_H_equals_L"] = pattern_ok;
  emit(cfg, result.dump(2) + "\n");
  return pattern_ok ? kExitOk : kExitVerifyFailed;
}

void apply_config_file(const std::string& path, CLI::App& app, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }

  auto unset = [&app](const std::string& flag) {
    const CLI::Option* opt = app.get_option_no_throw(flag);
    return opt == nullptr || opt->count() == 0;
  };
  if (j.contains("graph") && unset("--graph")) cfg.graph_path = j["graph"];
  if (j.contains("generate") && unset("--generate")) cfg.generate_spec = j["generate"];
  if (j.contains("directed") && unset("--directed")) cfg.directed = j["directed"];
  if (j.contains("solver") && unset("--solver")) cfg.solver = j["solver"];
  if (j.contains("init") && unset("--init")) cfg.init = j["init"];
  if (j.contains("t0") && unset("--t0")) cfg.t0 = j["t0"];
  if (j.contains("t1") && unset("--t1")) cfg.t1 = j["t1"];
  if (j.contains("samples") && unset("--samples")) cfg.samples = j["samples"];
  if (j.contains("format") && unset("--format")) cfg.format = j["format"];
  if (j.contains("out") && unset("--out")) cfg.out_path = j["out"];
  if (j.contains("tol_zero") && unset("--tol-zero")) cfg.tol_zero = j["tol_zero"];
  if (j.contains("tol_residual") && unset("--tol-residual"))
    cfg.tol_residual = j["tol_residual"].get<double>();
}

void add_common_options(CLI::App* sub, RunConfig& cfg, std::string& config_path) {
  sub->add_option("--graph", cfg.graph_path, "edge list file (src dst weight)");
  sub->add_option("--generate", cfg.generate_spec,
                  "generate a graph, KIND:N[:W[:K]] with KIND in "
                  "{path,cycle,complete,d_regular_ring}");
  sub->add_flag("--directed", cfg.directed, "treat the edge list as directed");
  sub->add_option("--solver", cfg.solver, "boson | fermion");
  sub->add_option("--init", cfg.init,
                  "initial condition: delta:NODE | uniform | eigenmode:MU | "
                  "JSON file path");
  sub->add_option("--t0", cfg.t0, "grid start time");
  sub->add_option("--t1", cfg.t1, "grid end time");
  sub->add_option("--samples", cfg.samples, "number of grid samples");
  sub->add_option("--format", cfg.format, "csv | json");
  sub->add_option("--out", cfg.out_path, "output file (default stdout)");
  sub->add_option("--tol-zero", cfg.tol_zero, "zero-mode eigenvalue tolerance");
  sub->add_option("--tol-residual", [&cfg](const CLI::results_t& res) {
      cfg.tol_residual = std::stod(res[0]);
      return true;
    }, "override residual-check tolerances");
  sub->add_option("--config", config_path, "JSON config file; flags override it");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"network oscillation model: spectra, closed-form solvers, "
               "verification"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;

  CLI::App* spectrum =
      app.add_subcommand("spectrum", "eigenvalues and frequencies of L");
  CLI::App* simulate =
      app.add_subcommand("simulate", "evaluate a closed-form trajectory");
  CLI::App* verify =
      app.add_subcommand("verify", "residual and oracle checks");
  CLI::App* sparsity =
      app.add_subcommand("sparsity", "off-diagonal patterns of L, sqrtL, H, Hhat");

  for (CLI::App* sub : {spectrum, simulate, verify, sparsity})
    add_common_options(sub, cfg, config_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!config_path.empty()) apply_config_file(config_path, *sub, cfg);

    if (sub == spectrum) return cmd_spectrum(cfg);
    if (sub == simulate) return cmd_simulate(cfg);
    if (sub == verify) return cmd_verify(cfg);
    return cmd_sparsity(cfg);
  } catch (const NonRealSpectrumError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonRealSpectrum;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
