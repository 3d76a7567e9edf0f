#pragma once

#include <span>
#include <string>
#include <vector>

#include "msta/hamiltonian.hpp"
#include "msta/spin.hpp"

namespace msta {

// exp(-j H_D t) as the product of the three commuting closed-form factors
// exp(-j (I n)^a (I n)^b 3dt/4) exp(-j Pi dt/2) exp(j dt/4).
CMultivector propagator_factored(int n, int a, int b, double d, double t,
                                 const Vec3& axis = {0.0, 0.0, 1.0});

// The eigenbasis closed form for the two-spin z-axis pair:
// exp(-j H_D t) = e^{j dt/2} E - (1 + e^{-j dt})/2 Isigma2^1 E Isigma2^1
//                             + (1 - e^{-j dt})/2 Isigma2^1 E Isigma2^2.
CMultivector propagator_eigen(double d, double t);

// Generic series fallback exp(-j H t) for any Hermitian-representable H.
CMultivector propagator_series(const CMultivector& h, double t);
CMultivector propagator_series(const Multivector& h, double t);

// psi -> U_plus psi + U_minus psi J (the formal j reverts to right-J).
Spinor apply_propagator(const CMultivector& u, const Spinor& psi);

Spinor evolve_spinor(const Spinor& psi0, const CMultivector& h, double t);

// U o dagger(U); preserves Hermiticity and the scalar part.
CMultivector evolve_observable(const CMultivector& o, const CMultivector& h, double t);

// <H> on a pure state: 2^{n-1} (<H_+ psi psi~>_0 + <H_- psi J psi~>_0).
double energy_expectation(const CMultivector& h, const Spinor& psi);

// d/dt of the spin bivector: 2^{n-1} grade_2([H_-, psi J psi~] + [H_+, psi psi~]).
Multivector spin_derivative(const Spinor& psi, const CMultivector& h);

struct Trajectory {
  std::vector<double> times;
  std::vector<SpinObservables> samples;
  std::vector<double> energy;
  std::vector<Spinor> states;  // filled only when requested
  HamiltonianSpec hamiltonian;
  std::string initial_state;
};

// Exact per-sample evolution: U(t) is built per sample, never step-chained.
Trajectory spin_trajectory(const Spinor& psi0, const CMultivector& h, std::span<const double> times,
                           bool keep_states = false);
Trajectory spin_trajectory(const Spinor& psi0, const HamiltonianSpec& spec,
                           std::span<const double> times, bool keep_states = false,
                           std::string initial_state = {});

struct ClassicalTrajectory {
  std::vector<double> times;
  std::vector<Vec3> p;
  std::vector<Vec3> q;
};

// Classical rigid-rotor comparator for one dipolar pair along `axis`:
//   p-dot = -(d/2) p x q - (3d/2) (q.n) (n x p)   (and symmetrically for q),
// integrated with fixed-step RK4, step = min(grid spacing, 0.01/d).
ClassicalTrajectory classical_trajectory(const Vec3& p0, const Vec3& q0, double d,
                                         std::span<const double> times,
                                         const Vec3& axis = {0.0, 0.0, 1.0});

// Right-hand side of the classical equations for one spin pair.
void classical_rates(const Vec3& p, const Vec3& q, double d, const Vec3& axis, Vec3& dp, Vec3& dq);

}  // namespace msta
