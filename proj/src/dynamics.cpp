#include "msta/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace msta {

namespace {

Multivector iota_n(int n, int particle, const Vec3& axis) {
  Multivector v(n);
  for (int k = 1; k <= 3; ++k)
    if (axis[k - 1] != 0.0) v += axis[k - 1] * Multivector::isigma(n, particle, k);
  return v;
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

void check_grid(std::span<const double> times) {
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw std::invalid_argument("times must be strictly increasing");
}

}  // namespace

CMultivector propagator_factored(int n, int a, int b, double d, double t, const Vec3& axis) {
  const Multivector g = iota_n(n, a, axis) * iota_n(n, b, axis);  // squares to +1
  const Multivector pi = interchange(n, a, b);
  const Multivector one = Multivector::scalar(n, 1.0);

  const CMultivector f1{std::cos(3 * d * t / 4) * one, -std::sin(3 * d * t / 4) * g};
  const CMultivector f2{std::cos(d * t / 2) * one, -std::sin(d * t / 2) * pi};
  const CMultivector f3 = CMultivector::scalar(n, std::cos(d * t / 4), std::sin(d * t / 4));
  return f1 * f2 * f3;
}

CMultivector propagator_eigen(double d, double t) {
  const int n = 2;
  const Multivector e = correlator(n);
  const Multivector s1 = Multivector::isigma(n, 1, 2);
  const Multivector s2 = Multivector::isigma(n, 2, 2);
  const Multivector a2 = s1 * e * s1;
  const Multivector a3 = s1 * e * s2;
  const double c = std::cos(d * t), s = std::sin(d * t);
  CMultivector u = CMultivector::scalar(n, std::cos(d * t / 2), std::sin(d * t / 2)) * CMultivector(e);
  u += CMultivector::scalar(n, -0.5 * (1 + c), 0.5 * s) * CMultivector(a2);
  u += CMultivector::scalar(n, 0.5 * (1 - c), 0.5 * s) * CMultivector(a3);
  return u;
}

CMultivector propagator_series(const CMultivector& h, double t) {
  // -j H t = (H_minus - j H_plus) t.
  return cmv_exp(CMultivector{t * h.minus(), (-t) * h.plus()});
}

CMultivector propagator_series(const Multivector& h, double t) {
  return propagator_series(CMultivector(h), t);
}

Spinor apply_propagator(const CMultivector& u, const Spinor& psi) {
  Multivector out = u.plus() * psi.mv();
  if (u.minus().max_abs() != 0.0)
    out += u.minus() * psi.mv() * complex_j(psi.particles());
  return unchecked_spinor(std::move(out));
}

Spinor evolve_spinor(const Spinor& psi0, const CMultivector& h, double t) {
  return apply_propagator(propagator_series(h, t), psi0);
}

CMultivector evolve_observable(const CMultivector& o, const CMultivector& h, double t) {
  const CMultivector u = propagator_series(h, t);
  return u * o * dagger(u);
}

double energy_expectation(const CMultivector& h, const Spinor& psi) {
  const int n = psi.particles();
  const Multivector psi_rev = psi.mv().reversed();
  double e = (h.plus() * (psi.mv() * psi_rev)).scalar_part();
  if (h.minus().max_abs() != 0.0)
    e += (h.minus() * (psi.mv() * complex_j(n) * psi_rev)).scalar_part();
  return std::ldexp(e, n - 1);
}

Multivector spin_derivative(const Spinor& psi, const CMultivector& h) {
  const int n = psi.particles();
  const Multivector psi_rev = psi.mv().reversed();
  const Multivector pp = psi.mv() * psi_rev;
  const Multivector pjp = psi.mv() * complex_j(n) * psi_rev;
  Multivector rate = h.plus() * pp - pp * h.plus();
  if (h.minus().max_abs() != 0.0) rate += h.minus() * pjp - pjp * h.minus();
  rate *= std::ldexp(1.0, n - 1);
  return rate.grade(2);
}

Trajectory spin_trajectory(const Spinor& psi0, const CMultivector& h, std::span<const double> times,
                           bool keep_states) {
  check_grid(times);
  Trajectory traj;
  traj.times.assign(times.begin(), times.end());
  traj.samples.resize(times.size());
  traj.energy.resize(times.size());
  if (keep_states) traj.states.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Spinor psi = evolve_spinor(psi0, h, times[i]);
    traj.samples[i] = spin_bivector(psi);
    traj.energy[i] = energy_expectation(h, psi);
    if (keep_states) traj.states.push_back(psi);
  }
  return traj;
}

Trajectory spin_trajectory(const Spinor& psi0, const HamiltonianSpec& spec,
                           std::span<const double> times, bool keep_states,
                           std::string initial_state) {
  Trajectory traj = spin_trajectory(psi0, hamiltonian_op(spec), times, keep_states);
  traj.hamiltonian = spec;
  traj.initial_state = std::move(initial_state);
  return traj;
}

void classical_rates(const Vec3& p, const Vec3& q, double d, const Vec3& axis, Vec3& dp, Vec3& dq) {
  const Vec3 pxq = cross(p, q);
  const Vec3 nxp = cross(axis, p);
  const Vec3 nxq = cross(axis, q);
  const double qn = dot(q, axis), pn = dot(p, axis);
  for (int i = 0; i < 3; ++i) {
    dp[i] = -0.5 * d * pxq[i] - 1.5 * d * qn * nxp[i];
    dq[i] = +0.5 * d * pxq[i] - 1.5 * d * pn * nxq[i];
  }
}

ClassicalTrajectory classical_trajectory(const Vec3& p0, const Vec3& q0, double d,
                                         std::span<const double> times, const Vec3& axis) {
  check_grid(times);
  const auto unit = [](const Vec3& v) {
    return std::abs(std::sqrt(dot(v, v)) - 1.0) < 1e-9;
  };
  if (!unit(p0) || !unit(q0)) throw std::invalid_argument("initial spin vectors must be unit");

  ClassicalTrajectory traj;
  traj.times.assign(times.begin(), times.end());
  traj.p.resize(times.size());
  traj.q.resize(times.size());

  const double d_eff = (d == 0.0) ? 1.0 : std::abs(d);
  double grid_step = times.size() > 1 ? times[1] - times[0] : 0.01 / d_eff;
  for (std::size_t i = 1; i < times.size(); ++i)
    grid_step = std::min(grid_step, times[i] - times[i - 1]);
  const double step = std::min(grid_step, 0.01 / d_eff);

  Vec3 p = p0, q = q0;
  double t = 0.0;
  auto rk4_step = [&](double h) {
    Vec3 k1p, k1q, k2p, k2q, k3p, k3q, k4p, k4q, tp, tq;
    classical_rates(p, q, d, axis, k1p, k1q);
    for (int i = 0; i < 3; ++i) { tp[i] = p[i] + 0.5 * h * k1p[i]; tq[i] = q[i] + 0.5 * h * k1q[i]; }
    classical_rates(tp, tq, d, axis, k2p, k2q);
    for (int i = 0; i < 3; ++i) { tp[i] = p[i] + 0.5 * h * k2p[i]; tq[i] = q[i] + 0.5 * h * k2q[i]; }
    classical_rates(tp, tq, d, axis, k3p, k3q);
    for (int i = 0; i < 3; ++i) { tp[i] = p[i] + h * k3p[i]; tq[i] = q[i] + h * k3q[i]; }
    classical_rates(tp, tq, d, axis, k4p, k4q);
    for (int i = 0; i < 3; ++i) {
      p[i] += h / 6.0 * (k1p[i] + 2 * k2p[i] + 2 * k3p[i] + k4p[i]);
      q[i] += h / 6.0 * (k1q[i] + 2 * k2q[i] + 2 * k3q[i] + k4q[i]);
    }
  };

  for (std::size_t s = 0; s < times.size(); ++s) {
    const double target = times[s];
    if (target < t) throw std::invalid_argument("times must start at or after 0");
    const double span = target - t;
    if (span > 0.0) {
      const int substeps = std::max(1, static_cast<int>(std::ceil(span / step)));
      const double h = span / substeps;
      for (int k = 0; k < substeps; ++k) rk4_step(h);
      t = target;
    }
    traj.p[s] = p;
    traj.q[s] = q;
  }
  return traj;
}

}  // namespace msta
