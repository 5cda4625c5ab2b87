#pragma once

#include <string>
#include <vector>

#include "oscnet/operators.hpp"
#include "oscnet/solvers.hpp"

// Independent verification machinery. Everything here works from the
// operator matrices directly (never from the spectral decomposition), so the
// integrators and residual checkers share no code path with the closed-form
// solvers they are used to check.

namespace oscnet {

// Classical fixed-step RK4 for dy/dt = M y with round(t_end/h) steps; the
// sub-step remainder is absorbed into the effective step. More than 1e8
// steps is rejected.
CVec rk4_integrate(const CMatrix& m, const CVec& y0, double t_end, double h);

// RK4 on the first-order system (x', v') = (v, -L x).
std::pair<CVec, CVec> wave_integrate(const Matrix& l, const CVec& x0,
                                     const CVec& v0, double t_end, double h);

enum class EquationTag { wave, boson, fermion, component_plus, component_minus };

std::string to_string(EquationTag tag);

struct ResidualReport {
  EquationTag equation = EquationTag::wave;
  std::vector<double> times;
  double max_residual = 0.0;
  double tolerance = 0.0;  // already scaled by (1 + max|x|)
  bool pass = false;
};

// Central finite differences and the step/tolerance defaults used everywhere.
double default_step(EquationTag tag);       // 1e-3 second order, 1e-4 first
double default_tolerance(EquationTag tag);  // 1e-5 second order, 1e-6 first

// Central-difference residual of the tagged equation over the trajectory's
// sample times. The center value comes from the stored states (so corrupted
// samples are detected); neighbors are re-evaluated through traj.eval.
// The boson tag needs ops.sqrtL attached.
ResidualReport residual_check(const Trajectory& traj, const OperatorSet& ops,
                              EquationTag which, double h, double tol);

inline ResidualReport residual_check(const Trajectory& traj,
                                     const OperatorSet& ops, EquationTag which) {
  return residual_check(traj, ops, which, default_step(which),
                        default_tolerance(which));
}

// -i * (Hhat or sqrtL (x) diag(+1,-1)) as the complex generator matrix for
// rk4_integrate, i.e. the right-hand side of the first-order equations.
CMatrix fermion_generator(const OperatorSet& ops);
CMatrix boson_generator(const OperatorSet& ops);  // needs ops.sqrtL

}  // namespace oscnet
