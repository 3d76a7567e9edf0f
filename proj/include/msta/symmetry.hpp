#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "msta/hamiltonian.hpp"
#include "msta/spin.hpp"

namespace msta {

// Single-particle Lagrangian <psi-dot Isigma3 psi~ - gammaB psi Isigma3 psi~>;
// vanishes along solutions of psi-dot = gammaB psi.
double lagrangian_single(const Multivector& psi, const Multivector& psi_dot,
                         const Multivector& gamma_b);

// Two-spin Lagrangian 2 <psi-dot J psi~ - H psi E psi~>; vanishes along
// solutions of -d/dt psi = H psi J.
double lagrangian_two(const Spinor& psi, const Multivector& psi_dot, const Multivector& h_dipolar);

// Noether pairing 2^{n-1} <phi J psi~>_0; constant along trajectories when
// phi is the variation of a Lagrangian symmetry.
double noether_charge(const Spinor& psi, const Multivector& phi);

// phi = G_+ psi + G_- psi J for a left-action generator G = G_+ + j G_-.
Multivector apply_generator(const CMultivector& generator, const Spinor& psi);

struct ConservedQuantity {
  std::string name;
  // Left-action generator; disengaged for the right-action phase symmetry.
  std::optional<CMultivector> generator;
  std::function<double(const Spinor&)> charge;
};

// The complete basis of constants of motion for the two-spin dipolar pair:
// norm/phase, energy, z angular momentum, interchange, and the two
// double-quantum coherences.
std::vector<ConservedQuantity> conserved_set_two_spin(double d);

// Dimension of the commutant of H inside the 16-dimensional two-spin
// observable space, computed from the nullity of the commutator
// superoperator in the matrix representation (singular values below
// 1e-9 x the largest are null). Only n = 2 is supported.
int commutant_dimension(const CMultivector& h);

}  // namespace msta
