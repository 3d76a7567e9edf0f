#include "msta/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace msta {

namespace {

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

void check_unit(const Vec3& axis) {
  if (std::abs(norm(axis) - 1.0) >= 1e-12)
    throw std::invalid_argument("axis must be a unit vector");
}

void check_pair(int n, int a, int b) {
  if (a < 1 || a > n || b < 1 || b > n) throw std::invalid_argument("particle out of range");
  if (a == b) throw std::invalid_argument("pair requires distinct particles");
}

// (I n)^a = sum_k n_k Isigmak^a.
Multivector iota_n(int n, int particle, const Vec3& axis) {
  Multivector v(n);
  for (int k = 1; k <= 3; ++k)
    if (axis[k - 1] != 0.0) v += axis[k - 1] * Multivector::isigma(n, particle, k);
  return v;
}

}  // namespace

void HamiltonianSpec::validate() const {
  if (n < 1 || n > kMaxParticles) throw std::invalid_argument("particle count must be in [1, 6]");
  for (const auto& p : pairs) {
    check_pair(n, p.a, p.b);
    if (p.a >= p.b) throw std::invalid_argument("pairs must be ordered a < b");
    check_unit(p.axis);
  }
  for (const auto& z : zeeman) {
    if (z.a < 1 || z.a > n) throw std::invalid_argument("particle out of range");
    check_unit(z.axis);
  }
}

Multivector dipolar_hamiltonian(int n, int a, int b, double d, const Vec3& axis) {
  check_pair(n, a, b);
  check_unit(axis);
  Multivector h(n);
  for (int k = 1; k <= 3; ++k)
    h += Multivector::isigma(n, a, k) * Multivector::isigma(n, b, k);
  h -= 3.0 * (iota_n(n, a, axis) * iota_n(n, b, axis));
  h *= -d / 4.0;
  return h;
}

Multivector interchange(int n, int a, int b) {
  check_pair(n, a, b);
  Multivector pi = Multivector::scalar(n, 0.5);
  for (int k = 1; k <= 3; ++k)
    pi -= 0.5 * (Multivector::isigma(n, a, k) * Multivector::isigma(n, b, k));
  return pi;
}

Multivector zeeman_generator(int n, int a, const Vec3& axis, double rate) {
  if (a < 1 || a > n) throw std::invalid_argument("particle out of range");
  check_unit(axis);
  Multivector g = iota_n(n, a, axis);
  g *= rate;
  return g;
}

CMultivector hamiltonian_op(const HamiltonianSpec& spec) {
  spec.validate();
  Multivector dip(spec.n);
  for (const auto& p : spec.pairs) dip += dipolar_hamiltonian(spec.n, p.a, p.b, p.d, p.axis);
  Multivector zee(spec.n);
  for (const auto& z : spec.zeeman) zee += zeeman_generator(spec.n, z.a, z.axis, z.rate);
  return {std::move(dip), std::move(zee)};
}

CMultivector frame_transform(const CMultivector& h, const CMultivector& generator, double angle) {
  const CMultivector u = cmv_exp(angle * generator);
  const CMultivector u_inv = cmv_exp((-angle) * generator);
  return u * h * u_inv;
}

Multivector rotor_z_to(const Vec3& axis) {
  check_unit(axis);
  // Rotate about u = z x axis by the angle between z and axis;
  // R = cos(t/2) - sin(t/2) (I u) rotates right-handedly about u.
  const double cz = axis[2];
  const Vec3 u{-axis[1], axis[0], 0.0};
  const double ulen = norm(u);
  Multivector r = Multivector::scalar(1, 1.0);
  if (ulen < 1e-14) {
    if (cz > 0.0) return r;  // already z
    // Antipodal: any axis in the plane works; rotate about x by pi.
    return Multivector::isigma(1, 1, 1) * -1.0;
  }
  const double angle = std::atan2(ulen, cz);
  r = Multivector::scalar(1, std::cos(angle / 2));
  for (int k = 1; k <= 3; ++k)
    r -= (std::sin(angle / 2) * u[k - 1] / ulen) * Multivector::isigma(1, 1, k);
  return r;
}

}  // namespace msta
