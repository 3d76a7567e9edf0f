#include "msta/spin.hpp"

#include <cmath>
#include <stdexcept>

namespace msta {

namespace {

// <x y>_0 without forming the full product: only index pairs with i = k
// contribute, and e_i e_i = +-1 from the Cayley table.
double scalar_of_product(const Multivector& x, const Multivector& y) {
  const int n = x.particles();
  double s = 0.0;
  for (BasisIndex i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0 || y[i] == 0.0) continue;
    s += x[i] * y[i] * basis_product(n, i, i).sign;
  }
  return s;
}

// Basis element prod_{a in set} (-Isigma2^a); the two signs cancel, leaving
// the canonical blade sigma1 sigma3 in each set particle slot.
Multivector bitstring_blade(int n, unsigned bits) {
  BasisIndex index = 0;
  for (int a = 0; a < n; ++a) {
    // Particle 1 is the most significant amplitude bit.
    if (bits & (1u << (n - 1 - a))) index |= BasisIndex{0b101u} << (3 * a);
  }
  return Multivector::basis(n, index);
}

int log2_exact(std::size_t size) {
  int n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  if ((std::size_t{1} << n) != size) throw std::invalid_argument("amplitude count must be 2^n");
  return n;
}

}  // namespace

Multivector correlator(int n) {
  if (n < 1) throw std::invalid_argument("correlator requires n >= 1");
  Multivector e = Multivector::scalar(n, 1.0);
  for (int a = 2; a <= n; ++a) {
    Multivector factor = Multivector::scalar(n, 0.5);
    factor -= 0.5 * (Multivector::isigma(n, 1, 3) * Multivector::isigma(n, a, 3));
    e = e * factor;
  }
  return e;
}

Multivector complex_j(int n) { return Multivector::isigma(n, 1, 3) * correlator(n); }

Spinor::Spinor(Multivector value, double tol) : value_(std::move(value)) {
  if (!value_.even_sector(0.0))
    throw std::invalid_argument("spinor must lie in the even (quaternion) sector");
  const Multivector stabilized = value_ * correlator(value_.particles());
  if (max_abs_diff(stabilized, value_) > tol)
    throw std::invalid_argument("spinor must satisfy psi E = psi");
}

Spinor unchecked_spinor(Multivector value) { return {std::move(value), Spinor::Unchecked{}}; }

Spinor Spinor::from_amplitudes(const std::vector<std::complex<double>>& amps) {
  const int n = log2_exact(amps.size());
  if (n > kMaxParticles) throw std::invalid_argument("particle count must be in [1, 6]");
  const Multivector e = correlator(n);
  const Multivector j = complex_j(n);
  Multivector psi(n);
  for (unsigned b = 0; b < amps.size(); ++b) {
    const auto amp = amps[b];
    if (amp == std::complex<double>{}) continue;
    const Multivector blade = bitstring_blade(n, b);
    if (amp.real() != 0.0) psi += amp.real() * (blade * e);
    if (amp.imag() != 0.0) psi += amp.imag() * (blade * j);
  }
  return unchecked_spinor(std::move(psi));
}

double Spinor::norm() const {
  const int n = value_.particles();
  double s = 0.0;
  for (BasisIndex i = 0; i < value_.size(); ++i) s += value_[i] * value_[i];
  return std::sqrt(std::ldexp(s, n - 1));
}

std::vector<std::complex<double>> Spinor::amplitudes() const {
  const int n = value_.particles();
  const Multivector e = correlator(n);
  const Multivector j = complex_j(n);
  const Multivector psi_j = value_ * j;
  const double scale = std::ldexp(1.0, n - 1);
  std::vector<std::complex<double>> amps(std::size_t{1} << n);
  for (unsigned b = 0; b < amps.size(); ++b) {
    const Multivector pairing = (bitstring_blade(n, b) * e).reversed();
    amps[b] = {scale * scalar_of_product(pairing, value_),
               -scale * scalar_of_product(pairing, psi_j)};
  }
  return amps;
}

Spinor Spinor::apply_j() const {
  return unchecked_spinor(value_ * complex_j(value_.particles()));
}

Spinor operator*(const Spinor& s, double c) { return unchecked_spinor(s.value_ * c); }

Spinor operator+(const Spinor& a, const Spinor& b) { return unchecked_spinor(a.value_ + b.value_); }

Spinor operator-(const Spinor& a, const Spinor& b) { return unchecked_spinor(a.value_ - b.value_); }

SpinObservables spin_bivector(const Spinor& psi) {
  const int n = psi.particles();
  Multivector t = psi.mv() * complex_j(n) * psi.mv().reversed();
  t *= std::ldexp(1.0, n - 1);
  SpinObservables obs;
  obs.spin.resize(n);
  obs.polarization.resize(n);
  obs.polarization_norm.resize(n);
  obs.angle.resize(n);
  for (int a = 1; a <= n; ++a) {
    std::array<double, 3> s{};
    for (int k = 1; k <= 3; ++k) s[k - 1] = t.isigma_coeff(a, k);
    obs.spin[a - 1] = s;
    obs.polarization[a - 1] = s;  // dual: p = -I S
    const double len = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
    obs.polarization_norm[a - 1] = len;
    obs.angle[a - 1] = std::acos(std::clamp(len, 0.0, 1.0));
  }
  return obs;
}

double entanglement_angle(const Spinor& psi, int particle) {
  const SpinObservables obs = spin_bivector(psi);
  if (particle < 1 || particle > psi.particles())
    throw std::invalid_argument("particle out of range");
  return obs.angle[particle - 1];
}

Multivector phase_rotor(int n, double alpha) {
  Multivector r = Multivector::scalar(n, 1.0);
  r -= correlator(n);
  r += std::cos(alpha) * correlator(n);
  r += std::sin(alpha) * complex_j(n);
  return r;
}

Spinor two_qubit_state(const Multivector& upsilon, const Multivector& zeta, double theta,
                       double alpha) {
  if (upsilon.particles() != 1 || zeta.particles() != 1)
    throw std::invalid_argument("upsilon and zeta must be single-particle elements");
  if (!upsilon.even_sector() || !zeta.even_sector())
    throw std::invalid_argument("upsilon and zeta must be even elements");
  const int n = 2;
  const Multivector e = correlator(n);
  const Multivector j = complex_j(n);
  const Multivector q = Multivector::isigma(n, 1, 2) * Multivector::isigma(n, 2, 2);
  Multivector core = std::cos(theta / 2) * e + std::sin(theta / 2) * (q * j);
  Multivector psi = embed(upsilon, n, 1) * embed(zeta, n, 2) * core * phase_rotor(n, alpha);
  return Spinor(std::move(psi));
}

}  // namespace msta
