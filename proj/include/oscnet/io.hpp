#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "oscnet/oracle.hpp"
#include "oscnet/solvers.hpp"
#include "oscnet/spectral.hpp"

// Wire formats. Complex numbers are always [re, im] pairs in JSON; floating
// point text uses %.17g so identical runs produce identical bytes.

namespace oscnet::io {

// header: t,node,re_plus,im_plus,re_minus,im_minus,re_sum,im_sum
std::string trajectory_csv(const Trajectory& traj);

// {"solver": ..., "times": [...], "states": [[[re,im] x 2n] ...]} with the
// packed interleaved layout.
nlohmann::json trajectory_json(const Trajectory& traj);

// ascending [{"lambda": ..., "omega": ...}, ...]
nlohmann::json spectrum_json(const SpectralDecomposition& sd);

nlohmann::json residual_report_json(const ResidualReport& report);

// {"plus": [[re,im], ...], "minus": [[re,im], ...]}
SpinorState parse_initial_state(const nlohmann::json& j);
SpinorState load_initial_state(const std::string& path);

std::string format_double(double v);

}  // namespace oscnet::io
