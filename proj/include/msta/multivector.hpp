#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace msta {

// Dense real multivector over G(3)^(x)n, the non-relativistic even-sector
// model of the n-particle spacetime algebra. Basis elements are indexed by
// n packed 3-bit direction codes (bit k set <=> the factor for that particle
// contains the sigma_{k+1} direction); particle a occupies bits
// [3(a-1), 3a). Basis elements of different particle spaces commute, so the
// multiparticle product is the per-particle G(3) Cayley table composed with
// no cross-particle signs.
using BasisIndex = std::uint32_t;

inline constexpr int kMaxParticles = 6;

namespace detail {

// Reordering sign for Euclidean blades a*b (canonical ascending order).
constexpr int blade_sign(unsigned a, unsigned b) {
  int swaps = 0;
  for (unsigned at = a >> 1; at != 0; at >>= 1) swaps += std::popcount(at & b);
  return (swaps & 1) ? -1 : 1;
}

struct CayleyTable {
  std::array<std::int8_t, 64> sign{};
  constexpr CayleyTable() {
    for (unsigned a = 0; a < 8; ++a)
      for (unsigned b = 0; b < 8; ++b)
        sign[a * 8 + b] = static_cast<std::int8_t>(blade_sign(a, b));
  }
};

inline constexpr CayleyTable kCayley{};

// STA grade of one particle's factor: scalar 0, sigma_k and I*sigma_k are
// spacetime bivectors (grade 2), the G(3) pseudoscalar is a 4-vector.
constexpr int sta_grade(unsigned code) {
  constexpr std::array<int, 4> by_popcount{0, 2, 2, 4};
  return by_popcount[std::popcount(code)];
}

// Reversion sign of one particle's factor: +,-,-,+ for popcount 0..3.
constexpr int reverse_sign(unsigned code) {
  const int pc = std::popcount(code);
  return (pc == 1 || pc == 2) ? -1 : 1;
}

}  // namespace detail

// MSTA grade (sum of per-particle STA grades) of a basis element.
int msta_grade(int n, BasisIndex index);

struct BasisProduct {
  BasisIndex index;
  double sign;
};

// Product of two basis elements: per-particle code XOR and sign product.
BasisProduct basis_product(int n, BasisIndex i, BasisIndex k);

class Multivector {
 public:
  explicit Multivector(int n);

  static Multivector scalar(int n, double value);
  static Multivector basis(int n, BasisIndex index, double value = 1.0);
  // sigma_k in particle space a (1-based a, k in 1..3).
  static Multivector sigma(int n, int particle, int k);
  // I*sigma_k in particle space a.
  static Multivector isigma(int n, int particle, int k);
  // G(3) pseudoscalar of particle space a.
  static Multivector pseudoscalar(int n, int particle);

  int particles() const { return n_; }
  std::size_t size() const { return coeff_.size(); }

  double operator[](BasisIndex i) const { return coeff_[i]; }
  double& operator[](BasisIndex i) { return coeff_[i]; }

  double scalar_part() const { return coeff_[0]; }
  // Signed coefficient of I*sigma_k in particle space a.
  double isigma_coeff(int particle, int k) const;

  Multivector& operator+=(const Multivector& rhs);
  Multivector& operator-=(const Multivector& rhs);
  Multivector& operator*=(double s);
  Multivector operator-() const;

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator*(const Multivector& a, const Multivector& b);

  Multivector reversed() const;
  Multivector grade(int g) const;

  double max_abs() const;
  double l1_norm() const;

  // True when every nonzero term has per-particle codes in {1, Isigma_k},
  // the quaternion sector housing spinors and density operators.
  bool even_sector(double tol = 0.0) const;

 private:
  int n_;
  std::vector<double> coeff_;
};

Multivector commutator(const Multivector& a, const Multivector& b);
double max_abs_diff(const Multivector& a, const Multivector& b);

// Embeds a single-particle multivector into particle space `particle` of an
// n-particle algebra.
Multivector embed(const Multivector& single, int n, int particle);

// x_plus + j * x_minus with a commuting formal imaginary j, j^2 = -1.
class CMultivector {
 public:
  explicit CMultivector(int n) : plus_(n), minus_(n) {}
  CMultivector(Multivector plus, Multivector minus);
  // j-free embedding.
  CMultivector(Multivector plus);  // NOLINT(google-explicit-constructor)

  static CMultivector scalar(int n, double re, double im = 0.0);

  int particles() const { return plus_.particles(); }
  const Multivector& plus() const { return plus_; }
  const Multivector& minus() const { return minus_; }
  Multivector& plus() { return plus_; }
  Multivector& minus() { return minus_; }

  CMultivector& operator+=(const CMultivector& rhs);
  CMultivector& operator-=(const CMultivector& rhs);
  CMultivector& operator*=(double s);
  CMultivector operator-() const;

  friend CMultivector operator+(CMultivector a, const CMultivector& b) { return a += b; }
  friend CMultivector operator-(CMultivector a, const CMultivector& b) { return a -= b; }
  friend CMultivector operator*(CMultivector a, double s) { return a *= s; }
  friend CMultivector operator*(double s, CMultivector a) { return a *= s; }
  friend CMultivector operator*(const CMultivector& a, const CMultivector& b);

  double max_abs() const;
  double l1_norm() const;

 private:
  Multivector plus_, minus_;
};

// Multiplication by j.
CMultivector jmul(const CMultivector& x);
inline CMultivector jmul(const Multivector& x) { return CMultivector(Multivector(x.particles()), x); }

// Reversion of both parts plus j-conjugation; density operators satisfy
// dagger(rho) = rho.
CMultivector dagger(const CMultivector& x);

// exp(x) by scaling-and-squaring over the power series (term tolerance 1e-13
// in the max-coefficient norm, squaring threshold 0.5).
CMultivector cmv_exp(const CMultivector& x);

double max_abs_diff(const CMultivector& a, const CMultivector& b);

}  // namespace msta
