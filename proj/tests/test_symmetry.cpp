#include <doctest.h>

#include <cmath>

#include "msta/density.hpp"
#include "msta/dynamics.hpp"
#include "msta/symmetry.hpp"
#include "test_util.hpp"

using namespace msta;
using testutil::make_rng;
using testutil::random_rotor;
using testutil::random_spinor;

namespace {

CMultivector z_pair(double d) {
  return CMultivector{dipolar_hamiltonian(2, 1, 2, d, {0, 0, 1})};
}

Multivector quaternion_derivative(const Multivector& start, const Multivector& generator,
                                  double t) {
  // d/dt [e^{tB} u] = B e^{tB} u for a single-particle bivector B
  const CMultivector rotor = cmv_exp(CMultivector{t * generator});
  return generator * rotor.plus() * start;
}

}  // namespace

TEST_SUITE_BEGIN("symmetry");

TEST_CASE("single-particle lagrangian vanishes on solutions") {
  auto rng = make_rng(61);
  const double w = 0.8;
  const Multivector gamma_b = w * Multivector::isigma(1, 1, 2);
  for (int rep = 0; rep < 6; ++rep) {
    const Multivector psi0 = random_rotor(rng);
    const double t = testutil::uniform(rng, 0.0, 4.0);
    const Multivector psi = cmv_exp(CMultivector{t * gamma_b}).plus() * psi0;
    const Multivector psi_dot = gamma_b * psi;
    CHECK(std::abs(lagrangian_single(psi, psi_dot, gamma_b)) < 1e-12);

    // a perturbed velocity breaks the stationarity
    const Multivector bad_dot = psi_dot + 0.05 * (psi * Multivector::isigma(1, 1, 3));
    CHECK(std::abs(lagrangian_single(psi, bad_dot, gamma_b)) > 1e-4);
  }
  // trivial rest case
  CHECK(lagrangian_single(Multivector::scalar(1, 1.0), Multivector(1), Multivector(1)) == 0.0);
}

TEST_CASE("two-spin lagrangian vanishes along solutions") {
  const double d = 1.0;
  const CMultivector h = z_pair(d);
  auto rng = make_rng(62);
  const double step = 1e-6;
  for (int rep = 0; rep < 5; ++rep) {
    const Spinor psi0 = random_spinor(2, rng);
    const double t = testutil::uniform(rng, 0.1, 6.0);
    const Spinor psi = evolve_spinor(psi0, h, t);
    const Multivector psi_dot =
        (1.0 / (2 * step)) *
        (evolve_spinor(psi0, h, t + step).mv() - evolve_spinor(psi0, h, t - step).mv());
    CHECK(std::abs(lagrangian_two(psi, psi_dot, h.plus())) < 1e-10);
  }
  // static state with H = 0
  CHECK(lagrangian_two(Spinor::from_amplitudes({1, 0, 0, 0}), Multivector(2), Multivector(2)) ==
        0.0);
}

TEST_CASE("parameterized kinetic and potential terms") {
  // kinetic term: 2 <psi-dot J psi~> = cos(theta) [ <ups-dot Isigma3 ups~> (zeta zeta~)
  //                                               + <zeta-dot Isigma3 zeta~> (ups ups~) ]
  auto rng = make_rng(63);
  const Multivector is3 = Multivector::isigma(1, 1, 3);
  for (int rep = 0; rep < 8; ++rep) {
    const Multivector ups0 = random_rotor(rng);
    const Multivector zeta0 = random_rotor(rng);
    Multivector b1(1), b2(1);
    for (int k = 1; k <= 3; ++k) {
      b1 += testutil::uniform(rng) * Multivector::isigma(1, 1, k);
      b2 += testutil::uniform(rng) * Multivector::isigma(1, 1, k);
    }
    const double theta = testutil::uniform(rng, 0.0, M_PI);
    const double alpha = testutil::uniform(rng, 0.0, 2 * M_PI);
    const double t = 0.37;
    const Multivector ups = cmv_exp(CMultivector{t * b1}).plus() * ups0;
    const Multivector zeta = cmv_exp(CMultivector{t * b2}).plus() * zeta0;
    const Multivector ups_dot = quaternion_derivative(ups0, b1, t);
    const Multivector zeta_dot = quaternion_derivative(zeta0, b2, t);

    const Spinor psi = two_qubit_state(ups, zeta, theta, alpha);
    // assemble psi-dot from the product rule (theta, alpha constant)
    const Multivector q = Multivector::isigma(2, 1, 2) * Multivector::isigma(2, 2, 2);
    Multivector core = std::cos(theta / 2) * correlator(2);
    core += std::sin(theta / 2) * (q * complex_j(2));
    core = core * phase_rotor(2, alpha);
    const Multivector psi_dot = (embed(ups_dot, 2, 1) * embed(zeta, 2, 2) +
                                 embed(ups, 2, 1) * embed(zeta_dot, 2, 2)) *
                                core;

    const double kinetic = 2.0 * (psi_dot * complex_j(2) * psi.mv().reversed()).scalar_part();
    const double u_norm = (ups * ups.reversed()).scalar_part();
    const double z_norm = (zeta * zeta.reversed()).scalar_part();
    const double expected = std::cos(theta) * ((ups_dot * is3 * ups.reversed()).scalar_part() * z_norm +
                                               (zeta_dot * is3 * zeta.reversed()).scalar_part() * u_norm);
    CHECK(kinetic == doctest::Approx(expected).epsilon(1e-10));

    // potential term: -2 <H psi E psi~> = <H (ups Isigma3 ups~)^1 (zeta Isigma3 zeta~)^2>
    //                + sin(theta) <H ups^1 zeta^2 (Is1^1 Is2^2 + Is2^1 Is1^2) zeta~^2 ups~^1>
    const Multivector h = dipolar_hamiltonian(2, 1, 2, 1.0, {0, 0, 1});
    const double potential = -2.0 * (h * psi.mv() * psi.mv().reversed()).scalar_part();
    const Multivector iup = ups * is3 * ups.reversed();
    const Multivector izeta = zeta * is3 * zeta.reversed();
    const double first = (h * embed(iup, 2, 1) * embed(izeta, 2, 2)).scalar_part();
    const Multivector cross = Multivector::isigma(2, 1, 1) * Multivector::isigma(2, 2, 2) +
                              Multivector::isigma(2, 1, 2) * Multivector::isigma(2, 2, 1);
    const Multivector pair = embed(ups, 2, 1) * embed(zeta, 2, 2);
    const double second = (h * pair * cross * pair.reversed()).scalar_part();
    CHECK(potential == doctest::Approx(first + std::sin(theta) * second).epsilon(1e-10));
  }
}

TEST_CASE("theta = 0 reduces to the classical dipole energy") {
  auto rng = make_rng(64);
  const double d = 1.4;
  const Multivector h = dipolar_hamiltonian(2, 1, 2, d, {0, 0, 1});
  for (int rep = 0; rep < 6; ++rep) {
    const Multivector ups = random_rotor(rng);
    const Multivector zeta = random_rotor(rng);
    const Spinor psi = two_qubit_state(ups, zeta, 0.0, 0.0);
    const SpinObservables obs = spin_bivector(psi);
    const auto& p = obs.polarization[0];
    const auto& q = obs.polarization[1];
    const double energy = 2.0 * (h * psi.mv() * psi.mv().reversed()).scalar_part();
    const double classical =
        (d / 4.0) * (p[0] * q[0] + p[1] * q[1] + p[2] * q[2] - 3.0 * p[2] * q[2]);
    CHECK(energy == doctest::Approx(classical).epsilon(1e-11));
  }
}

TEST_CASE("noether charges") {
  const double d = 1.0;
  const CMultivector h = z_pair(d);
  auto rng = make_rng(65);
  const Spinor psi0 = random_spinor(2, rng);

  // phase symmetry: the charge is -norm^2
  CHECK(noether_charge(psi0, psi0.apply_j().mv()) == doctest::Approx(-1.0).epsilon(1e-12));

  // time translation: the charge is the total internal energy
  const Multivector phi_energy = apply_generator(CMultivector{Multivector(2), -h.plus()}, psi0);
  CHECK(noether_charge(psi0, phi_energy) ==
        doctest::Approx(energy_expectation(h, psi0)).epsilon(1e-12));

  // z rotation: the charge is (Isigma3^1 + Isigma3^2) . S / 2
  const Multivector jz = 0.5 * (Multivector::isigma(2, 1, 3) + Multivector::isigma(2, 2, 3));
  const SpinObservables obs = spin_bivector(psi0);
  CHECK(noether_charge(psi0, jz * psi0.mv()) ==
        doctest::Approx(-0.5 * (obs.spin[0][2] + obs.spin[1][2])).epsilon(1e-10));

  CHECK_THROWS(noether_charge(psi0, Multivector(1)));
}

TEST_CASE("the six two-spin constants of motion") {
  const double d = 1.0;
  const CMultivector h = z_pair(d);
  const auto set = conserved_set_two_spin(d);
  REQUIRE(set.size() == 6);

  auto rng = make_rng(66);
  double worst = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const Spinor psi0 = random_spinor(2, rng);
    std::vector<double> initial;
    initial.reserve(set.size());
    for (const auto& quantity : set) initial.push_back(quantity.charge(psi0));
    for (int step = 1; step <= 20; ++step) {
      const Spinor psi = evolve_spinor(psi0, h, step * 1.0);
      for (std::size_t qi = 0; qi < set.size(); ++qi)
        worst = std::max(worst, std::abs(set[qi].charge(psi) - initial[qi]));
    }
  }
  CHECK(worst < 1e-9);

  // both double-quantum generators commute with H_D
  const Multivector dq1 = Multivector::isigma(2, 1, 1) * Multivector::isigma(2, 2, 1) -
                          Multivector::isigma(2, 1, 2) * Multivector::isigma(2, 2, 2);
  const Multivector dq2 = Multivector::isigma(2, 1, 1) * Multivector::isigma(2, 2, 2) +
                          Multivector::isigma(2, 1, 2) * Multivector::isigma(2, 2, 1);
  CHECK(commutator(dq1, h.plus()).max_abs() < 1e-14);
  CHECK(commutator(dq2, h.plus()).max_abs() < 1e-14);

  // closure: pairwise products of the six generators still commute with H_D
  const std::vector<Multivector> generators{
      Multivector::scalar(2, 1.0), h.plus(),
      0.5 * (Multivector::isigma(2, 1, 3) + Multivector::isigma(2, 2, 3)),
      interchange(2, 1, 2), dq1, dq2};
  for (const auto& a : generators)
    for (const auto& b : generators)
      CHECK(commutator(a * b, h.plus()).max_abs() < 1e-13);

  // <S S> is not conserved on the parallel-x trajectory
  const Spinor xx = Spinor::from_amplitudes({0.5, 0.5, 0.5, 0.5});
  double lo = 1e30, hi = -1e30;
  for (int step = 0; step <= 40; ++step) {
    const SpinObservables obs = spin_bivector(evolve_spinor(xx, h, step * 0.1));
    const double ss = -(obs.polarization_norm[0] * obs.polarization_norm[0] +
                        obs.polarization_norm[1] * obs.polarization_norm[1]);
    lo = std::min(lo, ss);
    hi = std::max(hi, ss);
  }
  CHECK(hi - lo > 0.1);
}

TEST_CASE("noether differential identity") {
  const double d = 1.0;
  const CMultivector h = z_pair(d);
  const auto set = conserved_set_two_spin(d);
  auto rng = make_rng(67);
  const double step = 1e-5;
  for (int rep = 0; rep < 4; ++rep) {
    const Spinor psi0 = random_spinor(2, rng);
    const double t = testutil::uniform(rng, 0.2, 3.0);
    for (const auto& quantity : set) {
      const double fd = (quantity.charge(evolve_spinor(psi0, h, t + step)) -
                         quantity.charge(evolve_spinor(psi0, h, t - step))) /
                        (2 * step);
      CHECK(std::abs(fd) < 1e-8);
    }
  }
}

TEST_CASE("commutant dimension") {
  const double d = 1.0;
  CHECK(commutant_dimension(z_pair(d)) == 6);
  CHECK(commutant_dimension(CMultivector(2)) == 16);

  // nondegenerate Zeeman term on one spin commutes with an 8-dimensional
  // observable subspace
  const HamiltonianSpec zeeman_only{2, {}, {ZeemanTerm{1, {0, 0, 1}, 0.7}}};
  CHECK(commutant_dimension(hamiltonian_op(zeeman_only)) == 8);

  CHECK_THROWS(commutant_dimension(CMultivector(3)));
}

TEST_SUITE_END();
