#include "oscnet/oracle.hpp"

#include <cmath>
#include <utility>

#include "oscnet/errors.hpp"

namespace oscnet {

namespace {

// Nearest whole number of steps; the sub-step remainder of t_end/h is
// absorbed by using h_eff = t_end/steps.
long long step_count(double t_end, double h) {
  if (!(h > 0.0)) throw ValidationError("integrator step must be positive");
  if (t_end < 0.0) throw ValidationError("integration horizon must be >= 0");
  if (t_end == 0.0) return 0;
  const long long steps = std::max(1LL, std::llround(t_end / h));
  if (steps > 100000000LL)
    throw ValidationError("integrator would need more than 1e8 steps");
  return steps;
}

}  // namespace

CVec rk4_integrate(const CMatrix& m, const CVec& y0, double t_end, double h) {
  const long long steps = step_count(t_end, h);
  const std::size_t n = y0.size();
  if (m.rows() != n || m.cols() != n)
    throw ValidationError("rk4_integrate: dimension mismatch");
  if (steps > 0) h = t_end / static_cast<double>(steps);

  const auto& k = kern::active();
  CVec y = y0, k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (long long s = 0; s < steps; ++s) {
    k.gemv_z(n, n, m.data(), y.data(), k1.data());
    tmp = y;
    k.axpy_z(n, cplx(0.5 * h, 0), k1.data(), tmp.data());
    k.gemv_z(n, n, m.data(), tmp.data(), k2.data());
    tmp = y;
    k.axpy_z(n, cplx(0.5 * h, 0), k2.data(), tmp.data());
    k.gemv_z(n, n, m.data(), tmp.data(), k3.data());
    tmp = y;
    k.axpy_z(n, cplx(h, 0), k3.data(), tmp.data());
    k.gemv_z(n, n, m.data(), tmp.data(), k4.data());
    k.axpy_z(n, cplx(h / 6.0, 0), k1.data(), y.data());
    k.axpy_z(n, cplx(h / 3.0, 0), k2.data(), y.data());
    k.axpy_z(n, cplx(h / 3.0, 0), k3.data(), y.data());
    k.axpy_z(n, cplx(h / 6.0, 0), k4.data(), y.data());
  }
  return y;
}

std::pair<CVec, CVec> wave_integrate(const Matrix& l, const CVec& x0,
                                     const CVec& v0, double t_end, double h) {
  const long long steps = step_count(t_end, h);
  const std::size_t n = x0.size();
  if (l.rows() != n || l.cols() != n || v0.size() != n)
    throw ValidationError("wave_integrate: dimension mismatch");
  if (steps > 0) h = t_end / static_cast<double>(steps);

  const auto& k = kern::active();
  CVec x = x0, v = v0;
  CVec kx1(n), kx2(n), kx3(n), kx4(n), kv1(n), kv2(n), kv3(n), kv4(n), tx(n);

  auto accel = [&](const CVec& pos, CVec& out) {
    k.gemv_dz(n, n, l.data(), pos.data(), out.data());
    for (std::size_t i = 0; i < n; ++i) out[i] = -out[i];
  };

  for (long long s = 0; s < steps; ++s) {
    kx1 = v;
    accel(x, kv1);

    tx = x;
    k.axpy_z(n, cplx(0.5 * h, 0), kx1.data(), tx.data());
    kx2 = v;
    k.axpy_z(n, cplx(0.5 * h, 0), kv1.data(), kx2.data());
    accel(tx, kv2);

    tx = x;
    k.axpy_z(n, cplx(0.5 * h, 0), kx2.data(), tx.data());
    kx3 = v;
    k.axpy_z(n, cplx(0.5 * h, 0), kv2.data(), kx3.data());
    accel(tx, kv3);

    tx = x;
    k.axpy_z(n, cplx(h, 0), kx3.data(), tx.data());
    kx4 = v;
    k.axpy_z(n, cplx(h, 0), kv3.data(), kx4.data());
    accel(tx, kv4);

    k.axpy_z(n, cplx(h / 6.0, 0), kx1.data(), x.data());
    k.axpy_z(n, cplx(h / 3.0, 0), kx2.data(), x.data());
    k.axpy_z(n, cplx(h / 3.0, 0), kx3.data(), x.data());
    k.axpy_z(n, cplx(h / 6.0, 0), kx4.data(), x.data());
    k.axpy_z(n, cplx(h / 6.0, 0), kv1.data(), v.data());
    k.axpy_z(n, cplx(h / 3.0, 0), kv2.data(), v.data());
    k.axpy_z(n, cplx(h / 3.0, 0), kv3.data(), v.data());
    k.axpy_z(n, cplx(h / 6.0, 0), kv4.data(), v.data());
  }
  return {std::move(x), std::move(v)};
}

std::string to_string(EquationTag tag) {
  switch (tag) {
    case EquationTag::wave: return "wave";
    case EquationTag::boson: return "boson";
    case EquationTag::fermion: return "fermion";
    case EquationTag::component_plus: return "component_plus";
    case EquationTag::component_minus: return "component_minus";
  }
  return "unknown";
}

double default_step(EquationTag tag) {
  switch (tag) {
    case EquationTag::boson:
    case EquationTag::fermion:
      return 1e-4;
    default:
      return 1e-3;
  }
}

double default_tolerance(EquationTag tag) {
  switch (tag) {
    case EquationTag::boson:
    case EquationTag::fermion:
      return 1e-6;
    default:
      return 1e-5;
  }
}

namespace {

CVec wave_of(const SpinorState& s) {
  CVec x(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) x[i] = s.plus[i] + s.minus[i];
  return x;
}

// the two coupling matrices of the component second-order equations:
//   M1 = D - (A + (sqrt D)^-1 A sqrt D)/2,  M2 = (A - (sqrt D)^-1 A sqrt D)/2
std::pair<Matrix, Matrix> component_matrices(const OperatorSet& ops) {
  Matrix conj = ops.A;  // (sqrt D)^-1 A sqrt D
  conj.scale_rows(ops.inv_sqrt_deg);
  conj.scale_cols(ops.sqrt_deg);

  Matrix m1(ops.n, ops.n), m2(ops.n, ops.n);
  for (std::size_t i = 0; i < ops.n; ++i)
    for (std::size_t j = 0; j < ops.n; ++j) {
      const double avg = 0.5 * (ops.A(i, j) + conj(i, j));
      m1(i, j) = (i == j ? ops.deg[i] : 0.0) - avg;
      m2(i, j) = 0.5 * (ops.A(i, j) - conj(i, j));
    }
  return {std::move(m1), std::move(m2)};
}

double max_abs_residual(const CVec& r) {
  double v = 0.0;
  for (const cplx& c : r) v = std::max(v, std::abs(c));
  return v;
}

}  // namespace

ResidualReport residual_check(const Trajectory& traj, const OperatorSet& ops,
                              EquationTag which, double h, double tol) {
  if (!traj.eval)
    throw ValidationError("residual_check: trajectory has no evaluator");
  if (traj.states.empty())
    throw ValidationError("residual_check: empty trajectory");

  ResidualReport report;
  report.equation = which;
  report.times = traj.times;

  double max_res = 0.0;
  double max_state = 0.0;

  Matrix m1, m2;
  if (which == EquationTag::component_plus || which == EquationTag::component_minus)
    std::tie(m1, m2) = component_matrices(ops);
  Matrix hhat;
  if (which == EquationTag::fermion) hhat = build_hamiltonian(ops).Hhat;
  if (which == EquationTag::boson && !ops.sqrtL.has_value())
    throw ValidationError("residual_check(boson): ops.sqrtL not attached");

  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    const SpinorState& center = traj.states[k];
    const SpinorState fwd = traj.eval(t + h);
    const SpinorState bwd = traj.eval(t - h);

    CVec residual;
    switch (which) {
      case EquationTag::wave: {
        // D2 x + L x with x = x+ + x-
        const CVec xc = wave_of(center), xf = wave_of(fwd), xb = wave_of(bwd);
        CVec lx = matvec(ops.L, xc);
        residual.resize(xc.size());
        for (std::size_t i = 0; i < xc.size(); ++i)
          residual[i] = (xf[i] - 2.0 * xc[i] + xb[i]) / (h * h) + lx[i];
        max_state = std::max(max_state, max_abs(xc));
        break;
      }
      case EquationTag::boson: {
        // +i d/dt x+ - sqrtL x+  and  -i d/dt x- - sqrtL x-
        const Matrix& sq = *ops.sqrtL;
        const CVec sp = matvec(sq, center.plus);
        const CVec sm = matvec(sq, center.minus);
        residual.resize(2 * center.size());
        for (std::size_t i = 0; i < center.size(); ++i) {
          const cplx dp = (fwd.plus[i] - bwd.plus[i]) / (2.0 * h);
          const cplx dm = (fwd.minus[i] - bwd.minus[i]) / (2.0 * h);
          residual[2 * i] = cplx(0, 1) * dp - sp[i];
          residual[2 * i + 1] = cplx(0, -1) * dm - sm[i];
        }
        max_state = std::max({max_state, max_abs(center.plus), max_abs(center.minus)});
        break;
      }
      case EquationTag::fermion: {
        // i d/dt xhat - Hhat xhat on the packed 2n state
        const CVec xc = center.pack(), xf = fwd.pack(), xb = bwd.pack();
        const CVec hx = matvec(hhat, xc);
        residual.resize(xc.size());
        for (std::size_t i = 0; i < xc.size(); ++i)
          residual[i] = cplx(0, 1) * (xf[i] - xb[i]) / (2.0 * h) - hx[i];
        max_state = std::max(max_state, max_abs(xc));
        break;
      }
      case EquationTag::component_plus:
      case EquationTag::component_minus: {
        // D2 u + M1 u - M2 w, with (u, w) = (x+, x-) or swapped
        const bool plus_side = which == EquationTag::component_plus;
        const CVec& uc = plus_side ? center.plus : center.minus;
        const CVec& wc = plus_side ? center.minus : center.plus;
        const CVec& uf = plus_side ? fwd.plus : fwd.minus;
        const CVec& ub = plus_side ? bwd.plus : bwd.minus;
        const CVec m1u = matvec(m1, uc);
        const CVec m2w = matvec(m2, wc);
        residual.resize(uc.size());
        for (std::size_t i = 0; i < uc.size(); ++i)
          residual[i] =
              (uf[i] - 2.0 * uc[i] + ub[i]) / (h * h) + m1u[i] - m2w[i];
        max_state = std::max({max_state, max_abs(uc), max_abs(wc)});
        break;
      }
    }
    max_res = std::max(max_res, max_abs_residual(residual));
  }

  report.max_residual = max_res;
  report.tolerance = tol * (1.0 + max_state);
  report.pass = report.max_residual <= report.tolerance;
  return report;
}

CMatrix fermion_generator(const OperatorSet& ops) {
  const Matrix hhat = build_hamiltonian(ops).Hhat;
  CMatrix m(hhat.rows(), hhat.cols());
  for (std::size_t i = 0; i < hhat.rows(); ++i)
    for (std::size_t j = 0; j < hhat.cols(); ++j)
      m(i, j) = cplx(0, -hhat(i, j));
  return m;
}

CMatrix boson_generator(const OperatorSet& ops) {
  if (!ops.sqrtL.has_value())
    throw ValidationError("boson_generator: ops.sqrtL not attached");
  const SpinorBasis basis;
  const Matrix gen = kron_spinor(*ops.sqrtL, basis.sz);
  CMatrix m(gen.rows(), gen.cols());
  for (std::size_t i = 0; i < gen.rows(); ++i)
    for (std::size_t j = 0; j < gen.cols(); ++j) m(i, j) = cplx(0, -gen(i, j));
  return m;
}

}  // namespace oscnet
