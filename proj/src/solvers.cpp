#include "oscnet/solvers.hpp"

#include <cmath>
#include <memory>
#include <utility>

#include "oscnet/errors.hpp"

namespace oscnet {

CVec SpinorState::pack() const {
  CVec packed(2 * plus.size());
  for (std::size_t i = 0; i < plus.size(); ++i) {
    packed[2 * i] = plus[i];
    packed[2 * i + 1] = minus[i];
  }
  return packed;
}

SpinorState SpinorState::unpack(const CVec& packed) {
  SpinorState s;
  s.plus.resize(packed.size() / 2);
  s.minus.resize(packed.size() / 2);
  for (std::size_t i = 0; i < s.plus.size(); ++i) {
    s.plus[i] = packed[2 * i];
    s.minus[i] = packed[2 * i + 1];
  }
  return s;
}

SpinorState SpinorState::from_real_position(const Vec& x0) {
  SpinorState s;
  s.plus.resize(x0.size());
  s.minus.resize(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) {
    s.plus[i] = cplx(0.5 * x0[i], 0.0);
    s.minus[i] = s.plus[i];
  }
  return s;
}

std::string to_string(SolverTag tag) {
  switch (tag) {
    case SolverTag::boson: return "boson";
    case SolverTag::fermion: return "fermion";
    case SolverTag::oracle: return "oracle";
  }
  return "unknown";
}

namespace {

void check_grid(const std::vector<double>& times) {
  if (times.empty()) throw ValidationError("time grid is empty");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1]))
      throw ValidationError("time grid must be strictly ascending");
}

void scale_by(CVec& x, const Vec& s) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] *= s[i];
}

Trajectory make_trajectory(SolverTag tag, const SpinorState& init,
                           std::vector<double> times,
                           std::function<SpinorState(double)> eval) {
  Trajectory traj;
  traj.tag = tag;
  traj.initial = init;
  traj.times = std::move(times);
  traj.eval = std::move(eval);
  traj.states.reserve(traj.times.size());
  for (double t : traj.times) traj.states.push_back(traj.eval(t));
  return traj;
}

struct BosonContext {
  Matrix P;
  Vec omega;
  CVec cplus;   // P^-1 x+(0)
  CVec cminus;  // P^-1 x-(0)
};

struct FermionContext {
  Matrix P;
  Matrix Pinv;
  Vec omega;
  Vec mho;
  Vec sqrt_deg;
  Vec inv_sqrt_deg;
  SpinorState init;

  // (M (x) s) xhat for M = diag(post) P diag(f) P^-1 diag(pre); the spinor
  // factor mixes the transformed halves.
  void accumulate_term(const Vec& f, const Vec* pre, const Vec* post,
                       const Spinor2& s, cplx factor, CVec& out_plus,
                       CVec& out_minus) const {
    auto chain = [&](const CVec& x) {
      CVec w = x;
      if (pre != nullptr) scale_by(w, *pre);
      w = matvec(Pinv, w);
      for (std::size_t mu = 0; mu < f.size(); ++mu) w[mu] *= f[mu];
      w = matvec(P, w);
      if (post != nullptr) scale_by(w, *post);
      return w;
    };
    const CVec u = chain(init.plus);
    const CVec v = chain(init.minus);
    for (std::size_t i = 0; i < u.size(); ++i) {
      out_plus[i] += factor * (s.m[0][0] * u[i] + s.m[0][1] * v[i]);
      out_minus[i] += factor * (s.m[1][0] * u[i] + s.m[1][1] * v[i]);
    }
  }
};

}  // namespace

Trajectory solve_boson(const SpectralDecomposition& sd, const SpinorState& init,
                       std::vector<double> times) {
  check_grid(times);
  if (init.size() != sd.size())
    throw ValidationError("solve_boson: initial state size mismatch");

  auto ctx = std::make_shared<BosonContext>();
  ctx->P = sd.P;
  ctx->omega = sd.omega;
  ctx->cplus = matvec(sd.Pinv, init.plus);
  ctx->cminus = matvec(sd.Pinv, init.minus);

  auto eval = [ctx](double t) {
    const std::size_t n = ctx->omega.size();
    CVec wp(n), wm(n);
    for (std::size_t mu = 0; mu < n; ++mu) {
      const double c = std::cos(ctx->omega[mu] * t);
      const double s = std::sin(ctx->omega[mu] * t);
      wp[mu] = ctx->cplus[mu] * cplx(c, -s);   // exp(-i omega t)
      wm[mu] = ctx->cminus[mu] * cplx(c, s);   // exp(+i omega t)
    }
    SpinorState out;
    out.plus = matvec(ctx->P, wp);
    out.minus = matvec(ctx->P, wm);
    return out;
  };

  return make_trajectory(SolverTag::boson, init, std::move(times), eval);
}

Trajectory solve_fermion(const OperatorSet& ops, const SpectralDecomposition& sd,
                         const SpinorState& init, std::vector<double> times) {
  check_grid(times);
  if (init.size() != ops.n || sd.size() != ops.n)
    throw ValidationError("solve_fermion: size mismatch");

  auto ctx = std::make_shared<FermionContext>();
  ctx->P = sd.P;
  ctx->Pinv = sd.Pinv;
  ctx->omega = sd.omega;
  ctx->mho = sd.mho;
  ctx->sqrt_deg = ops.sqrt_deg;
  ctx->inv_sqrt_deg = ops.inv_sqrt_deg;
  ctx->init = init;

  const SpinorBasis basis;
  auto eval = [ctx, basis](double t) {
    const std::size_t n = ctx->omega.size();
    Vec cos_f(n), sin_a(n), sin_b(n);
    for (std::size_t mu = 0; mu < n; ++mu) {
      cos_f[mu] = std::cos(ctx->omega[mu] * t);
      sin_a[mu] = ctx->omega[mu] * std::sin(ctx->omega[mu] * t);
      sin_b[mu] = ctx->mho[mu] * std::sin(ctx->omega[mu] * t);
    }
    SpinorState out;
    out.plus.assign(n, cplx(0, 0));
    out.minus.assign(n, cplx(0, 0));
    const cplx one(1, 0), minus_i(0, -1);
    // (sqrtD)^-1 P cos P^-1 sqrtD (x) ab  +  P cos P^-1 (x) ba
    ctx->accumulate_term(cos_f, &ctx->sqrt_deg, &ctx->inv_sqrt_deg, basis.ab,
                         one, out.plus, out.minus);
    ctx->accumulate_term(cos_f, nullptr, nullptr, basis.ba, one, out.plus,
                         out.minus);
    // -i [ (sqrtD)^-1 P Omega sin P^-1 (x) a + P mho sin P^-1 sqrtD (x) b ]
    ctx->accumulate_term(sin_a, nullptr, &ctx->inv_sqrt_deg, basis.a, minus_i,
                         out.plus, out.minus);
    ctx->accumulate_term(sin_b, &ctx->sqrt_deg, nullptr, basis.b, minus_i,
                         out.plus, out.minus);
    return out;
  };

  return make_trajectory(SolverTag::fermion, init, std::move(times), eval);
}

SplitComponents fermion_split_components(const OperatorSet& ops,
                                         const SpectralDecomposition& sd,
                                         const SpinorState& init,
                                         std::vector<double> times) {
  check_grid(times);
  if (init.size() != ops.n || sd.size() != ops.n)
    throw ValidationError("fermion_split_components: size mismatch");

  const std::size_t n = ops.n;
  CVec half_sum(n), half_diff(n);
  for (std::size_t i = 0; i < n; ++i) {
    half_sum[i] = 0.5 * (init.plus[i] + init.minus[i]);
    half_diff[i] = 0.5 * (init.plus[i] - init.minus[i]);
  }
  CVec scaled_diff = half_diff;
  scale_by(scaled_diff, ops.sqrt_deg);
  const CVec c_diff = matvec(sd.Pinv, scaled_diff);  // P^-1 sqrtD (x+ - x-)/2
  const CVec c_sum = matvec(sd.Pinv, half_sum);      // P^-1 (x+ + x-)/2

  SplitComponents split;
  split.times = std::move(times);
  split.plus.reserve(split.times.size());
  split.minus.reserve(split.times.size());

  for (double t : split.times) {
    CVec q1(n), q2(n);
    for (std::size_t mu = 0; mu < n; ++mu) {
      const double c = std::cos(sd.omega[mu] * t);
      const double s = std::sin(sd.omega[mu] * t);
      q1[mu] = c * c_diff[mu] - cplx(0, 1) * (sd.omega[mu] * s) * c_sum[mu];
      q2[mu] = c * c_sum[mu] - cplx(0, 1) * (sd.mho[mu] * s) * c_diff[mu];
    }
    CVec w1 = matvec(sd.P, q1);
    scale_by(w1, ops.inv_sqrt_deg);
    const CVec w2 = matvec(sd.P, q2);

    CVec xp(n), xm(n);
    for (std::size_t i = 0; i < n; ++i) {
      xp[i] = w1[i] + w2[i];
      xm[i] = w2[i] - w1[i];
    }
    split.plus.push_back(std::move(xp));
    split.minus.push_back(std::move(xm));
  }
  return split;
}

std::vector<CVec> reconstruct_wave(const Trajectory& traj) {
  std::vector<CVec> wave;
  wave.reserve(traj.states.size());
  for (const SpinorState& s : traj.states) {
    CVec x(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) x[i] = s.plus[i] + s.minus[i];
    wave.push_back(std::move(x));
  }
  return wave;
}

CVec initial_wave_velocity_boson(const SpectralDecomposition& sd,
                                 const SpinorState& init) {
  const std::size_t n = sd.size();
  CVec diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = init.plus[i] - init.minus[i];
  CVec c = matvec(sd.Pinv, diff);
  for (std::size_t mu = 0; mu < n; ++mu) c[mu] *= cplx(0, -1) * sd.omega[mu];
  return matvec(sd.P, c);
}

CVec initial_wave_velocity_fermion(const OperatorSet& ops,
                                   const SpectralDecomposition& sd,
                                   const SpinorState& init) {
  const std::size_t n = sd.size();
  CVec diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = init.plus[i] - init.minus[i];
  scale_by(diff, ops.sqrt_deg);
  CVec c = matvec(sd.Pinv, diff);
  // d/dt of mho sin(Omega t) at 0 is mho*Omega: 1 on oscillating modes,
  // exactly 0 on zero modes.
  for (std::size_t mu = 0; mu < n; ++mu)
    c[mu] *= cplx(0, -1) * (sd.mho[mu] * sd.omega[mu]);
  return matvec(sd.P, c);
}

}  // namespace oscnet
