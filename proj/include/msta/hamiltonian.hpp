#pragma once

#include <array>
#include <vector>

#include "msta/multivector.hpp"

namespace msta {

using Vec3 = std::array<double, 3>;

// One dipolar pair coupling: rate d (rad/s) and the unit inter-dipole
// direction. The physical constants mu0, hbar, gamma and r^3 are folded
// into d.
struct DipolarPair {
  int a = 1;
  int b = 2;
  double d = 1.0;
  Vec3 axis{0.0, 0.0, 1.0};
};

// One Zeeman term: the bivector gammaB = rate * (I axis) in particle space a,
// generating psi-dot = gammaB psi.
struct ZeemanTerm {
  int a = 1;
  Vec3 axis{0.0, 0.0, 1.0};
  double rate = 0.0;
};

struct HamiltonianSpec {
  int n = 2;
  std::vector<DipolarPair> pairs;
  std::vector<ZeemanTerm> zeeman;

  // Throws on out-of-range indices, a == b, or non-unit axes (|len - 1|
  // must be below 1e-12; axes are never silently renormalized).
  void validate() const;
};

// H_D = -(d/4) (sum_k Isigmak^a Isigmak^b - 3 (I n)^a (I n)^b).
Multivector dipolar_hamiltonian(int n, int a, int b, double d, const Vec3& axis);

// Pi = (1 - sum_k Isigmak^a Isigmak^b)/2; Pi^2 = 1 and conjugation by Pi
// swaps the two particle labels.
Multivector interchange(int n, int a, int b);

// The bivector generator gammaB = rate * (I axis) in particle space a.
Multivector zeeman_generator(int n, int a, const Vec3& axis, double rate);

// Full Hermitian generator: dipolar 4-vectors in the real part, Zeeman
// bivectors attached to j, so that exp(-j H t) produces psi-dot = gammaB psi
// for pure Zeeman terms and -d/dt psi = H psi J for dipolar ones.
CMultivector hamiltonian_op(const HamiltonianSpec& spec);

// exp(angle * generator) H exp(-angle * generator).
CMultivector frame_transform(const CMultivector& h, const CMultivector& generator, double angle);

// Rotor taking the z axis onto `axis` (single-particle even element).
Multivector rotor_z_to(const Vec3& axis);

}  // namespace msta
