#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "msta/dynamics.hpp"
#include "msta/hamiltonian.hpp"
#include "msta/spin.hpp"

namespace msta::oracle {

// Conventional complex-matrix quantum mechanics over 2^n dimensions, used as
// an independent reference for the even-MSTA implementation. Shares no code
// with the multivector product kernels.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

ComplexMatrix pauli(int k);  // sigma_x, sigma_y, sigma_z for k = 1..3; identity for k = 0

// Amplitude column of a spinor (particle 1 = most significant bit).
ComplexVector to_vector(const Spinor& psi);

// Algebra homomorphism on the even subalgebra: Isigmak^a -> i sigma_k at
// tensor slot a, j -> i. Throws std::domain_error on odd-sector input.
ComplexMatrix to_matrix(const Multivector& x);
ComplexMatrix to_matrix(const CMultivector& x);

// Conventional Hamiltonian built directly from Pauli matrices:
// (d/4)(sum_k sigmak^a sigmak^b - 3 (n.sigma)^a (n.sigma)^b) per pair and
// -rate (axis.sigma)^a per Zeeman term.
ComplexMatrix pauli_hamiltonian(const HamiltonianSpec& spec);

// exp(-i H t) v via Hermitian eigendecomposition (not a power series).
ComplexVector matrix_evolve(const ComplexVector& v, const ComplexMatrix& h, double t);

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);  // ascending

// Textbook partial trace keeping particle `keep` (1-based).
ComplexMatrix partial_trace(const ComplexMatrix& m, int keep);

// Bloch vector p_k = Re tr(sigma_k M) / tr(M) of a 2x2 reduced state.
Vec3 bloch_vector(const ComplexMatrix& reduced);

struct CheckResult {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CheckOptions {
  std::uint64_t seed = 0;
  // Test hook: deliberately conjugates the propagator phases so the
  // intertwining check must fail (negative control).
  bool flip_propagator_sign = false;
};

// Full equivalence suite between the even-MSTA implementation and this
// module for the given spin network.
std::vector<CheckResult> run_checks(const HamiltonianSpec& spec, const CheckOptions& options = {});

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace msta::oracle
