#include <doctest.h>

#include <cmath>

#include "msta/dynamics.hpp"
#include "msta/oracle.hpp"
#include "test_util.hpp"

using namespace msta;
using testutil::make_rng;
using testutil::random_spinor;

namespace {

CMultivector z_pair(double d) {
  return CMultivector{dipolar_hamiltonian(2, 1, 2, d, {0, 0, 1})};
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) grid[i] = lo + (hi - lo) * i / (count - 1);
  return grid;
}

}  // namespace

TEST_SUITE_BEGIN("dynamics");

TEST_CASE("propagator closed forms agree with the series") {
  const double d = 1.0;
  CHECK(max_abs_diff(propagator_factored(2, 1, 2, d, 0.0), CMultivector::scalar(2, 1.0)) == 0.0);
  CHECK(max_abs_diff(propagator_series(CMultivector(2), 3.0), CMultivector::scalar(2, 1.0)) == 0.0);

  for (const double t : {0.3, 1.7, 5.0}) {
    const CMultivector series = propagator_series(z_pair(d), t);
    CHECK(max_abs_diff(propagator_factored(2, 1, 2, d, t), series) < 1e-12);
    CHECK(max_abs_diff(propagator_eigen(d, t), series) < 1e-12);
  }

  // off-axis pair and non-adjacent labels still factor
  const Vec3 axis{0.6, 0.0, 0.8};
  const CMultivector h_axis{dipolar_hamiltonian(3, 1, 3, 0.9, axis)};
  for (const double t : {0.4, 2.2})
    CHECK(max_abs_diff(propagator_factored(3, 1, 3, 0.9, t, axis), propagator_series(h_axis, t)) <
          1e-12);
}

TEST_CASE("propagator eigen form on the stationary states") {
  const double d = 1.0;
  // at t = 0 the three terms sum to the identity multivector
  CHECK(max_abs_diff(propagator_eigen(d, 0.0), CMultivector::scalar(2, 1.0)) < 1e-15);

  // antiparallel state swaps to -Isigma2^2 E after half a period and
  // returns after a full one
  const Multivector psi0 = Multivector::isigma(2, 1, 2) * correlator(2);
  const Spinor start{psi0};
  const Spinor half = apply_propagator(propagator_eigen(d, M_PI), start);
  CHECK(max_abs_diff(half.mv(), -1.0 * (Multivector::isigma(2, 2, 2) * correlator(2))) < 1e-13);
  const Spinor full = apply_propagator(propagator_eigen(d, 2 * M_PI), start);
  CHECK(max_abs_diff(full.mv(), psi0) < 1e-13);
}

TEST_CASE("propagators are unitary and mutually consistent") {
  const double d = 1.0;
  double worst_unit = 0.0, worst_pair = 0.0;
  for (const double t : linspace(0.0, 4 * M_PI / d, 50)) {
    const CMultivector series = propagator_series(z_pair(d), t);
    const CMultivector factored = propagator_factored(2, 1, 2, d, t);
    const CMultivector eigen = propagator_eigen(d, t);
    for (const CMultivector& u : {series, factored, eigen})
      worst_unit = std::max(worst_unit,
                            max_abs_diff(dagger(u) * u, CMultivector::scalar(2, 1.0)));
    worst_pair = std::max({worst_pair, max_abs_diff(series, factored),
                           max_abs_diff(series, eigen)});
  }
  CHECK(worst_unit < 1e-11);
  CHECK(worst_pair < 1e-11);
}

TEST_CASE("series propagator matches the matrix oracle for a 3-spin chain") {
  const HamiltonianSpec chain{
      3, {DipolarPair{1, 2, 1.0, {0, 0, 1}}, DipolarPair{2, 3, 1.0, {0, 0, 1}}}, {}};
  const CMultivector h = hamiltonian_op(chain);
  const auto h_mat = oracle::pauli_hamiltonian(chain);
  auto rng = make_rng(41);
  for (const double t : {0.5, 2.3}) {
    const CMultivector u = propagator_series(h, t);
    for (int rep = 0; rep < 4; ++rep) {
      const Spinor psi = random_spinor(3, rng);
      const auto got = oracle::to_vector(apply_propagator(u, psi));
      const auto want = oracle::matrix_evolve(oracle::to_vector(psi), h_mat, t);
      CHECK((got - want).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("evolve_spinor reproduces the named solutions") {
  const double d = 1.0;
  const CMultivector h = z_pair(d);

  // psi0 = E only picks up a phase
  const Spinor e = Spinor::from_amplitudes({1, 0, 0, 0});
  for (const double t : {0.4, 1.9}) {
    const SpinObservables obs = spin_bivector(evolve_spinor(e, h, t));
    CHECK(obs.polarization[0][2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(obs.polarization[1][2] == doctest::Approx(1.0).epsilon(1e-12));
  }

  // antiparallel-z oscillates between Isigma2^1 E and -Isigma2^2 E with
  // S(t) = cos(dt)(Isigma3^2 - Isigma3^1)
  const Spinor ap{Multivector::isigma(2, 1, 2) * correlator(2)};
  for (const double t : linspace(0.0, 2 * M_PI, 17)) {
    const SpinObservables obs = spin_bivector(evolve_spinor(ap, h, t));
    CHECK(std::abs(obs.spin[0][2] + std::cos(d * t)) < 1e-10);
    CHECK(std::abs(obs.spin[1][2] - std::cos(d * t)) < 1e-10);
    CHECK(std::abs(obs.spin[0][0]) < 1e-10);
    CHECK(std::abs(obs.spin[0][1]) < 1e-10);
  }

  // parallel-x start: S(t) = cos(3dt/2)(Isigma1^1 + Isigma1^2)
  const Spinor xx = Spinor::from_amplitudes({0.5, 0.5, 0.5, 0.5});
  for (const double t : linspace(0.0, 4 * M_PI / 3, 13)) {
    const SpinObservables obs = spin_bivector(evolve_spinor(xx, h, t));
    const double expected = std::cos(1.5 * d * t);
    for (int a = 0; a < 2; ++a) {
      CHECK(std::abs(obs.spin[a][0] - expected) < 1e-10);
      CHECK(std::abs(obs.spin[a][1]) < 1e-10);
      CHECK(std::abs(obs.spin[a][2]) < 1e-10);
    }
  }
}

TEST_CASE("canonical form of the swap trajectory") {
  // The evolved antiparallel state equals Isigma1^1 e^{-j Q dt/2} E up to a
  // global phase: a single-particle rotor times a pure entangling factor
  // whose angle grows as dt/2.
  const CMultivector h = z_pair(1.0);
  const Spinor ap{Multivector::isigma(2, 1, 2) * correlator(2)};
  const Multivector q = Multivector::isigma(2, 1, 2) * Multivector::isigma(2, 2, 2);
  for (const double t : {0.3, 0.9, 2.2, 4.4}) {
    const auto evolved = oracle::to_vector(evolve_spinor(ap, h, t));
    Multivector canon = std::cos(t / 2) * correlator(2) - std::sin(t / 2) * (q * complex_j(2));
    canon = Multivector::isigma(2, 1, 1) * canon;
    const auto reference = oracle::to_vector(Spinor(canon));
    const double overlap = std::abs((reference.adjoint() * evolved)(0, 0));
    CHECK(overlap == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("evolve_spinor satisfies the Schrodinger form") {
  // -d/dt psi = H_D psi J, checked with a central difference
  const CMultivector h = z_pair(1.0);
  auto rng = make_rng(42);
  const Spinor psi0 = random_spinor(2, rng);
  const double t = 0.9, step = 1e-5;
  const Multivector fd =
      (1.0 / (2 * step)) *
      (evolve_spinor(psi0, h, t + step).mv() - evolve_spinor(psi0, h, t - step).mv());
  const Multivector rhs = -1.0 * (h.plus() * evolve_spinor(psi0, h, t).apply_j().mv());
  CHECK(max_abs_diff(fd, rhs) < 1e-8);
}

TEST_CASE("evolve_observable matches the conjugation formulas") {
  const double d = 1.0;
  const int n = 2;
  const CMultivector h = z_pair(d);

  auto rng = make_rng(43);
  const CMultivector o{testutil::random_even(n, rng), testutil::random_even(n, rng)};
  const CMultivector hermitian = 0.5 * (o + dagger(o));
  CHECK(max_abs_diff(evolve_observable(hermitian, h, 0.0), hermitian) < 1e-15);

  for (const double t : {0.3, 1.1, 2.7}) {
    const CMultivector evolved = evolve_observable(hermitian, h, t);
    CHECK(max_abs_diff(dagger(evolved), evolved) < 1e-12);
    CHECK(std::abs(evolved.plus().scalar_part() - hermitian.plus().scalar_part()) < 1e-12);

    // Isigma3^1: (1+cos dt)/2 Isigma3^1 + (1-cos dt)/2 Isigma3^2
    //            - j sin(dt) (Isigma1^1 Isigma2^2 - Isigma2^1 Isigma1^2)/2
    const CMultivector ev3 = evolve_observable(CMultivector{Multivector::isigma(n, 1, 3)}, h, t);
    const CMultivector want3{
        0.5 * (1 + std::cos(d * t)) * Multivector::isigma(n, 1, 3) +
            0.5 * (1 - std::cos(d * t)) * Multivector::isigma(n, 2, 3),
        -0.5 * std::sin(d * t) *
            (Multivector::isigma(n, 1, 1) * Multivector::isigma(n, 2, 2) -
             Multivector::isigma(n, 1, 2) * Multivector::isigma(n, 2, 1))};
    CHECK(max_abs_diff(ev3, want3) < 1e-12);

    // Isigma2^1: (cos dt Isigma2^1 - sin dt j Isigma1^1 Isigma3^2) cos(dt/2)
    //          - (cos dt j Isigma3^1 Isigma1^2 + sin dt Isigma2^2) sin(dt/2)
    const CMultivector ev2 = evolve_observable(CMultivector{Multivector::isigma(n, 1, 2)}, h, t);
    const double c = std::cos(d * t), s = std::sin(d * t);
    const double ch = std::cos(d * t / 2), sh = std::sin(d * t / 2);
    const CMultivector want2{
        c * ch * Multivector::isigma(n, 1, 2) - s * sh * Multivector::isigma(n, 2, 2),
        -s * ch * (Multivector::isigma(n, 1, 1) * Multivector::isigma(n, 2, 3)) -
            c * sh * (Multivector::isigma(n, 1, 3) * Multivector::isigma(n, 2, 1))};
    CHECK(max_abs_diff(ev2, want2) < 1e-12);
  }
}

TEST_CASE("trajectories") {
  const CMultivector h = z_pair(1.0);
  const auto grid = linspace(0.0, 10.0, 101);

  // x/z start: first spin along x, second along z; the vectors stay near
  // unit length throughout, bottoming out at exactly sqrt(3)/2
  const double s = 1.0 / std::sqrt(2.0);
  const Spinor xz = Spinor::from_amplitudes({s, 0, s, 0});
  const Trajectory traj = spin_trajectory(xz, h, grid);
  REQUIRE(traj.samples.size() == grid.size());
  double low = 2.0;
  for (const auto& sample : traj.samples) {
    CHECK(sample.polarization_norm[0] >= std::sqrt(3.0) / 2 - 1e-12);
    CHECK(sample.polarization_norm[0] <= 1.0 + 1e-12);
    CHECK(sample.polarization_norm[1] >= std::sqrt(3.0) / 2 - 1e-12);
    CHECK(sample.polarization_norm[1] <= 1.0 + 1e-12);
    low = std::min(low, sample.polarization_norm[0]);
  }
  CHECK(low == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-3));
  // energy is conserved along the trajectory
  for (const double e : traj.energy) CHECK(std::abs(e - traj.energy.front()) < 1e-10);

  // z-z start is static
  const Trajectory still = spin_trajectory(Spinor::from_amplitudes({1, 0, 0, 0}), h, grid);
  for (const auto& sample : still.samples) {
    CHECK(std::abs(sample.polarization[0][2] - 1.0) < 1e-12);
    CHECK(std::abs(sample.polarization[1][2] - 1.0) < 1e-12);
  }

  // antiparallel-z: |p| = |cos t|
  const Trajectory swap =
      spin_trajectory(Spinor::from_amplitudes({0, 0, 1, 0}), h, linspace(0.0, 6.0, 61));
  for (std::size_t i = 0; i < swap.times.size(); ++i) {
    CHECK(std::abs(swap.samples[i].polarization_norm[0] - std::abs(std::cos(swap.times[i]))) <
          1e-10);
  }

  CHECK_THROWS(spin_trajectory(xz, h, std::vector<double>{0.0, 0.0, 1.0}));

  const HamiltonianSpec spec{2, {DipolarPair{}}, {}};
  const Trajectory with_meta = spin_trajectory(xz, spec, linspace(0.0, 1.0, 3), true, "xz");
  CHECK(with_meta.hamiltonian.pairs.size() == 1);
  CHECK(with_meta.states.size() == 3);
  CHECK(with_meta.initial_state == "xz");
}

TEST_CASE("spin derivative") {
  const double d = 1.0;
  const CMultivector h = z_pair(d);

  // equilibrium
  CHECK(spin_derivative(Spinor::from_amplitudes({1, 0, 0, 0}), h).max_abs() < 1e-14);

  // antiparallel-z: rate vanishes at t = 0 and peaks at |d| by dt = pi/2,
  // consistent with S(t) = cos(dt)(Isigma3^2 - Isigma3^1)
  const Spinor ap = Spinor::from_amplitudes({0, 0, 1, 0});
  CHECK(spin_derivative(ap, h).max_abs() < 1e-12);
  const Multivector peak = spin_derivative(evolve_spinor(ap, h, M_PI / 2), h);
  CHECK(peak.isigma_coeff(1, 3) == doctest::Approx(d).epsilon(1e-10));
  CHECK(peak.isigma_coeff(2, 3) == doctest::Approx(-d).epsilon(1e-10));

  // finite differences of the trajectory converge at O(h^2) to the rate
  const double s = 1.0 / std::sqrt(2.0);
  const Spinor xz = Spinor::from_amplitudes({s, 0, s, 0});
  const Multivector rate = spin_derivative(evolve_spinor(xz, h, 0.5), h);
  double previous = -1.0;
  for (const double step : {1e-2, 1e-3}) {
    Multivector fd(2);
    const SpinObservables hi = spin_bivector(evolve_spinor(xz, h, 0.5 + step));
    const SpinObservables lo = spin_bivector(evolve_spinor(xz, h, 0.5 - step));
    for (int a = 1; a <= 2; ++a)
      for (int k = 1; k <= 3; ++k)
        fd += ((hi.spin[a - 1][k - 1] - lo.spin[a - 1][k - 1]) / (2 * step)) *
              Multivector::isigma(2, a, k);
    const double err = max_abs_diff(fd, rate);
    if (previous >= 0.0) CHECK(err < previous / 50.0);  // ~h^2 contraction
    previous = err;
  }
}

TEST_CASE("spin derivative matches the classical rates for separable states") {
  const double d = 1.3;
  const CMultivector h = z_pair(d);
  auto rng = make_rng(44);
  for (int rep = 0; rep < 10; ++rep) {
    // random separable state from two random single-qubit directions
    Vec3 p{}, q{};
    double pn = 0, qn = 0;
    for (int k = 0; k < 3; ++k) {
      p[k] = testutil::uniform(rng);
      q[k] = testutil::uniform(rng);
      pn += p[k] * p[k];
      qn += q[k] * q[k];
    }
    for (int k = 0; k < 3; ++k) {
      p[k] /= std::sqrt(pn);
      q[k] /= std::sqrt(qn);
    }
    const auto qubit = [](const Vec3& u) -> std::array<std::complex<double>, 2> {
      const double theta = std::acos(std::clamp(u[2], -1.0, 1.0));
      const double phi = std::atan2(u[1], u[0]);
      return {std::complex<double>{std::cos(theta / 2), 0.0},
              std::polar(std::sin(theta / 2), phi)};
    };
    const auto a = qubit(p), b = qubit(q);
    const Spinor psi =
        Spinor::from_amplitudes({a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]});
    const Multivector rate = spin_derivative(psi, h);
    Vec3 dp{}, dq{};
    classical_rates(p, q, d, {0, 0, 1}, dp, dq);
    for (int k = 1; k <= 3; ++k) {
      CHECK(std::abs(rate.isigma_coeff(1, k) - dp[k - 1]) < 1e-10);
      CHECK(std::abs(rate.isigma_coeff(2, k) - dq[k - 1]) < 1e-10);
    }
  }
}

TEST_CASE("classical trajectory") {
  const double d = 1.0;
  const auto grid = linspace(0.0, 20.0, 201);

  // parallel along z: classically stable equilibrium
  const ClassicalTrajectory still = classical_trajectory({0, 0, 1}, {0, 0, 1}, d, grid);
  for (const auto& p : still.p) CHECK(std::abs(p[2] - 1.0) < 1e-12);

  // antiparallel along z: stationary but unstable
  const ClassicalTrajectory anti = classical_trajectory({0, 0, 1}, {0, 0, -1}, d, grid);
  for (const auto& q : anti.q) CHECK(std::abs(q[2] + 1.0) < 1e-12);

  // The conservative precession keeps tilts bounded around both equilibria;
  // the parallel one sits at the energy minimum while the antiparallel one
  // is the energy maximum, so any dissipation topples only the latter.
  const double eps = 1e-3;
  const Vec3 tilt{std::sin(eps), 0, std::cos(eps)};
  const ClassicalTrajectory tilted = classical_trajectory(tilt, {0, 0, 1}, d, grid);
  double worst_tilt = 0.0;
  for (const auto& p : tilted.p) worst_tilt = std::max(worst_tilt, std::hypot(p[0], p[1]));
  CHECK(worst_tilt < 3 * eps);

  const auto energy = [d](const Vec3& p, const Vec3& q) {
    return (d / 4.0) * (p[0] * q[0] + p[1] * q[1] + p[2] * q[2] - 3.0 * p[2] * q[2]);
  };
  CHECK(energy({0, 0, 1}, {0, 0, 1}) == doctest::Approx(-d / 2));
  CHECK(energy({0, 0, 1}, {0, 0, -1}) == doctest::Approx(d / 2));
  auto rng = make_rng(45);
  for (int rep = 0; rep < 20; ++rep) {
    const double a = 0.1 * testutil::uniform(rng), b = 0.1 * testutil::uniform(rng);
    const Vec3 dp{std::sin(a), 0, std::cos(a)};
    const Vec3 dq{std::sin(b) * 0.6, std::sin(b) * 0.8, std::cos(b)};
    const Vec3 dq_flip{dq[0], dq[1], -dq[2]};
    CHECK(energy(dp, dq) >= energy({0, 0, 1}, {0, 0, 1}) - 1e-15);       // minimum
    CHECK(energy(dp, dq_flip) <= energy({0, 0, 1}, {0, 0, -1}) + 1e-15);  // maximum
  }

  // norms stay unit to 1e-8 over t <= 20/d
  const ClassicalTrajectory generic = classical_trajectory({1, 0, 0}, {0, 0, 1}, d, grid);
  for (std::size_t i = 0; i < generic.times.size(); ++i) {
    const auto& p = generic.p[i];
    CHECK(std::abs(std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) - 1.0) < 1e-8);
  }

  CHECK_THROWS(classical_trajectory({0, 0, 2}, {0, 0, 1}, d, grid));
}

TEST_CASE("quantum-classical divergence is quadratic in time") {
  const double d = 1.0;
  const CMultivector h = z_pair(d);
  const double s = 1.0 / std::sqrt(2.0);
  const Spinor xz = Spinor::from_amplitudes({s, 0, s, 0});

  std::vector<double> log_t, log_err;
  for (double t = 1e-3; t < 1.05e-1; t *= std::sqrt(10.0)) {
    const SpinObservables obs = spin_bivector(evolve_spinor(xz, h, t));
    const ClassicalTrajectory cl =
        classical_trajectory({1, 0, 0}, {0, 0, 1}, d, std::vector<double>{t});
    double err = 0.0;
    for (int k = 0; k < 3; ++k) {
      err = std::max(err, std::abs(obs.polarization[0][k] - cl.p[0][k]));
      err = std::max(err, std::abs(obs.polarization[1][k] - cl.q[0][k]));
    }
    log_t.push_back(std::log10(t));
    log_err.push_back(std::log10(err));
  }
  // least-squares slope
  double mx = 0, my = 0, sxx = 0, sxy = 0;
  const auto count = static_cast<double>(log_t.size());
  for (std::size_t i = 0; i < log_t.size(); ++i) {
    mx += log_t[i];
    my += log_err[i];
  }
  mx /= count;
  my /= count;
  for (std::size_t i = 0; i < log_t.size(); ++i) {
    sxx += (log_t[i] - mx) * (log_t[i] - mx);
    sxy += (log_t[i] - mx) * (log_err[i] - my);
  }
  const double slope = sxy / sxx;
  CHECK(slope == doctest::Approx(2.0).epsilon(0.05));

  // short-time agreement of the two pictures
  const SpinObservables early = spin_bivector(evolve_spinor(xz, h, 0.01));
  const ClassicalTrajectory cl =
      classical_trajectory({1, 0, 0}, {0, 0, 1}, d, std::vector<double>{0.01});
  for (int k = 0; k < 3; ++k)
    CHECK(std::abs(early.polarization[0][k] - cl.p[0][k]) < 1e-3);
}

TEST_SUITE_END();
