#include "oscnet/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "oscnet/errors.hpp"

namespace oscnet::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  out << "t,node,re_plus,im_plus,re_minus,im_minus,re_sum,im_sum\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const SpinorState& s = traj.states[k];
    for (std::size_t i = 0; i < s.size(); ++i) {
      const cplx sum = s.plus[i] + s.minus[i];
      out << format_double(traj.times[k]) << ',' << (i + 1) << ','
          << format_double(s.plus[i].real()) << ','
          << format_double(s.plus[i].imag()) << ','
          << format_double(s.minus[i].real()) << ','
          << format_double(s.minus[i].imag()) << ','
          << format_double(sum.real()) << ',' << format_double(sum.imag())
          << '\n';
    }
  }
  return out.str();
}

namespace {

nlohmann::json complex_pair(const cplx& c) {
  return nlohmann::json::array({c.real(), c.imag()});
}

}  // namespace

nlohmann::json trajectory_json(const Trajectory& traj) {
  nlohmann::json j;
  j["solver"] = to_string(traj.tag);
  j["times"] = traj.times;
  nlohmann::json states = nlohmann::json::array();
  for (const SpinorState& s : traj.states) {
    nlohmann::json state = nlohmann::json::array();
    for (const cplx& c : s.pack()) state.push_back(complex_pair(c));
    states.push_back(std::move(state));
  }
  j["states"] = std::move(states);
  return j;
}

nlohmann::json spectrum_json(const SpectralDecomposition& sd) {
  nlohmann::json j = nlohmann::json::array();
  for (std::size_t mu = 0; mu < sd.size(); ++mu)
    j.push_back({{"lambda", sd.lambda[mu]}, {"omega", sd.omega[mu]}});
  return j;
}

nlohmann::json residual_report_json(const ResidualReport& report) {
  return {{"equation", to_string(report.equation)},
          {"times", report.times},
          {"max_residual", report.max_residual},
          {"tolerance", report.tolerance},
          {"pass", report.pass}};
}

namespace {

CVec parse_complex_vector(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw ParseError(std::string("initial state: missing array '") + key + "'");
  CVec v;
  for (const auto& entry : j[key]) {
    if (!entry.is_array() || entry.size() != 2)
      throw ParseError(std::string("initial state: entries of '") + key +
                       "' must be [re, im] pairs");
    v.emplace_back(entry[0].get<double>(), entry[1].get<double>());
  }
  return v;
}

}  // namespace

SpinorState parse_initial_state(const nlohmann::json& j) {
  SpinorState s;
  s.plus = parse_complex_vector(j, "plus");
  s.minus = parse_complex_vector(j, "minus");
  if (s.plus.size() != s.minus.size())
    throw ParseError("initial state: plus and minus have different lengths");
  if (s.plus.empty()) throw ParseError("initial state: empty vectors");
  return s;
}

SpinorState load_initial_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open initial state file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_initial_state(j);
}

}  // namespace oscnet::io
