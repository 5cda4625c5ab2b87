#pragma once

#include <functional>
#include <string>
#include <vector>

#include "oscnet/operators.hpp"
#include "oscnet/spectral.hpp"

namespace oscnet {

// 2n-dimensional spinor state split into its n-dimensional halves. The
// packed layout interleaves components as (x+_1, x-_1, x+_2, x-_2, ...),
// matching the Kronecker convention of kron_spinor.
struct SpinorState {
  CVec plus;
  CVec minus;

  std::size_t size() const { return plus.size(); }

  CVec pack() const;
  static SpinorState unpack(const CVec& packed);

  // x+(0) = x-(0) = x0/2: the reconstructed wave solution starts at x0 with
  // zero initial velocity.
  static SpinorState from_real_position(const Vec& x0);
};

enum class SolverTag { boson, fermion, oracle };

std::string to_string(SolverTag tag);

// Time grid plus per-time states. `eval` re-evaluates the generating closed
// form at arbitrary t (used by the finite-difference residual checkers).
struct Trajectory {
  std::vector<double> times;
  std::vector<SpinorState> states;
  SolverTag tag = SolverTag::oracle;
  SpinorState initial;
  std::function<SpinorState(double)> eval;
};

// x+-(t) = P exp(-+ i Omega t) P^-1 x+-(0).
Trajectory solve_boson(const SpectralDecomposition& sd, const SpinorState& init,
                       std::vector<double> times);

// Closed form of the first-order 2n-dimensional equation driven by the
// Hamiltonian: cosine part through the ab/ba projectors, sine part through
// a/b with the Omega and mho weights. The zero mode contributes no
// linear-in-t term (mho is zero there); see README for the consequences.
Trajectory solve_fermion(const OperatorSet& ops, const SpectralDecomposition& sd,
                         const SpinorState& init, std::vector<double> times);

// The two component solutions evaluated from (x+(0) +- x-(0))/2 directly;
// packing them reproduces solve_fermion up to rounding (tested at 1e-12).
struct SplitComponents {
  std::vector<double> times;
  std::vector<CVec> plus;
  std::vector<CVec> minus;
};

SplitComponents fermion_split_components(const OperatorSet& ops,
                                         const SpectralDecomposition& sd,
                                         const SpinorState& init,
                                         std::vector<double> times);

// x(t) = x+(t) + x-(t) per sample.
std::vector<CVec> reconstruct_wave(const Trajectory& traj);

// d/dt of the reconstructed wave solution at t = 0, used to hand matched
// initial data to the wave-equation integrator.
CVec initial_wave_velocity_boson(const SpectralDecomposition& sd,
                                 const SpinorState& init);
CVec initial_wave_velocity_fermion(const OperatorSet& ops,
                                   const SpectralDecomposition& sd,
                                   const SpinorState& init);

}  // namespace oscnet
