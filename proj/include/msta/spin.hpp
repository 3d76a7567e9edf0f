#pragma once

#include <complex>
#include <vector>

#include "msta/multivector.hpp"

namespace msta {

// Correlator idempotent E = prod_{a=2..n} (1 - Isigma3^1 Isigma3^a)/2.
// E is the empty product (1) for n = 1.
Multivector correlator(int n);

// Complex generator J = Isigma3^1 E; J^2 = -E, and right-multiplication by J
// plays the role of the unit imaginary on spinors.
Multivector complex_j(int n);

// Per-particle spin bivectors of a pure state, their dual polarization
// (Bloch) vectors, and the entanglement angles arccos(|p^a|). In this model
// the bivector components and the polarization components coincide
// numerically (p = -I S).
struct SpinObservables {
  std::vector<std::array<double, 3>> spin;  // S^a on (Isigma1, Isigma2, Isigma3)
  std::vector<std::array<double, 3>> polarization;
  std::vector<double> polarization_norm;
  std::vector<double> angle;
};

// A pure n-qubit state: an even multivector right-stabilized by E.
class Spinor {
 public:
  // Validates the even sector and psi E = psi (tolerance on coefficients).
  explicit Spinor(Multivector value, double tol = 1e-9);

  // Amplitude-coordinate construction: the basis element for bitstring b (particle 1
  // the most significant bit) is prod_a (-Isigma2^a)^{b_a} E, and the complex
  // unit acts by right-multiplication with J. `amps.size()` must be 2^n.
  static Spinor from_amplitudes(const std::vector<std::complex<double>>& amps);

  int particles() const { return value_.particles(); }
  const Multivector& mv() const { return value_; }

  // norm^2 = 2^{n-1} <psi psi~>_0.
  double norm() const;

  // Inverse of from_amplitudes.
  std::vector<std::complex<double>> amplitudes() const;

  // psi J (the action of the unit imaginary).
  Spinor apply_j() const;

  friend Spinor operator*(const Spinor& s, double c);
  friend Spinor operator+(const Spinor& a, const Spinor& b);
  friend Spinor operator-(const Spinor& a, const Spinor& b);

 private:
  struct Unchecked {};
  Spinor(Multivector value, Unchecked) : value_(std::move(value)) {}
  Multivector value_;

  friend Spinor unchecked_spinor(Multivector value);
};

// Internal fast path for values already known to be valid spinors.
Spinor unchecked_spinor(Multivector value);

// S = 2^{n-1} <psi J psi~>_2 split per particle space.
SpinObservables spin_bivector(const Spinor& psi);

// arccos(|p^a|); for two-qubit pure states the two angles agree.
double entanglement_angle(const Spinor& psi, int particle);

// psi = upsilon^1 zeta^2 (cos(theta/2) E + sin(theta/2) Isigma2^1 Isigma2^2 J) e^{alpha J}
// with upsilon, zeta single-particle even elements.
Spinor two_qubit_state(const Multivector& upsilon, const Multivector& zeta, double theta,
                       double alpha);

// e^{alpha J} = 1 - E + cos(alpha) E + sin(alpha) J.
Multivector phase_rotor(int n, double alpha);

}  // namespace msta
