#include "msta/multivector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace msta {

namespace {

std::size_t algebra_size(int n) { return std::size_t{1} << (3 * n); }

void check_particles(int n) {
  if (n < 1 || n > kMaxParticles)
    throw std::invalid_argument("particle count must be in [1, 6]");
}

void check_same(const Multivector& a, const Multivector& b) {
  if (a.particles() != b.particles())
    throw std::invalid_argument("mismatched particle counts");
}

int particle_index(int n, int particle) {
  if (particle < 1 || particle > n) throw std::invalid_argument("particle out of range");
  return particle - 1;
}

double pair_sign(int n, BasisIndex i, BasisIndex k) {
  int s = 1;
  for (int p = 0; p < n; ++p) {
    const unsigned a = (i >> (3 * p)) & 7u;
    const unsigned b = (k >> (3 * p)) & 7u;
    s *= detail::kCayley.sign[a * 8 + b];
  }
  return static_cast<double>(s);
}

// Canonical blade code and sign for I*sigma_k: I*sigma_1 = sigma2 sigma3,
// I*sigma_2 = -sigma1 sigma3, I*sigma_3 = sigma1 sigma2.
constexpr std::array<std::pair<unsigned, int>, 3> kIsigma{{{0b110u, 1}, {0b101u, -1}, {0b011u, 1}}};

}  // namespace

int msta_grade(int n, BasisIndex index) {
  int g = 0;
  for (int p = 0; p < n; ++p) g += detail::sta_grade((index >> (3 * p)) & 7u);
  return g;
}

BasisProduct basis_product(int n, BasisIndex i, BasisIndex k) {
  check_particles(n);
  if (i >= algebra_size(n) || k >= algebra_size(n))
    throw std::invalid_argument("basis index out of range");
  return {i ^ k, pair_sign(n, i, k)};
}

Multivector::Multivector(int n) : n_(n) {
  check_particles(n);
  coeff_.assign(algebra_size(n), 0.0);
}

Multivector Multivector::scalar(int n, double value) {
  Multivector m(n);
  m.coeff_[0] = value;
  return m;
}

Multivector Multivector::basis(int n, BasisIndex index, double value) {
  Multivector m(n);
  if (index >= m.size()) throw std::invalid_argument("basis index out of range");
  m.coeff_[index] = value;
  return m;
}

Multivector Multivector::sigma(int n, int particle, int k) {
  const int p = particle_index(n, particle);
  if (k < 1 || k > 3) throw std::invalid_argument("direction out of range");
  return basis(n, BasisIndex{1u << (k - 1)} << (3 * p));
}

Multivector Multivector::isigma(int n, int particle, int k) {
  const int p = particle_index(n, particle);
  if (k < 1 || k > 3) throw std::invalid_argument("direction out of range");
  const auto [code, sign] = kIsigma[k - 1];
  return basis(n, BasisIndex{code} << (3 * p), static_cast<double>(sign));
}

Multivector Multivector::pseudoscalar(int n, int particle) {
  const int p = particle_index(n, particle);
  return basis(n, BasisIndex{0b111u} << (3 * p));
}

double Multivector::isigma_coeff(int particle, int k) const {
  const int p = particle_index(n_, particle);
  if (k < 1 || k > 3) throw std::invalid_argument("direction out of range");
  const auto [code, sign] = kIsigma[k - 1];
  return sign * coeff_[BasisIndex{code} << (3 * p)];
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
  check_same(*this, rhs);
  for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += rhs.coeff_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& rhs) {
  check_same(*this, rhs);
  for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= rhs.coeff_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& c : coeff_) c *= s;
  return *this;
}

Multivector Multivector::operator-() const {
  Multivector m(*this);
  for (double& c : m.coeff_) c = -c;
  return m;
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  check_same(a, b);
  const int n = a.particles();
  Multivector out(n);
  // Sparse-aware double loop over nonzero coefficients; the output stays
  // dense so the accumulation is branch-light.
  std::vector<BasisIndex> bnz;
  bnz.reserve(b.size());
  for (BasisIndex k = 0; k < b.size(); ++k)
    if (b[k] != 0.0) bnz.push_back(k);
  for (BasisIndex i = 0; i < a.size(); ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    for (const BasisIndex k : bnz) out[i ^ k] += ai * b[k] * pair_sign(n, i, k);
  }
  return out;
}

Multivector Multivector::reversed() const {
  Multivector m(*this);
  for (BasisIndex i = 0; i < m.size(); ++i) {
    int s = 1;
    for (int p = 0; p < n_; ++p) s *= detail::reverse_sign((i >> (3 * p)) & 7u);
    m.coeff_[i] *= s;
  }
  return m;
}

Multivector Multivector::grade(int g) const {
  Multivector m(n_);
  for (BasisIndex i = 0; i < size(); ++i)
    if (msta_grade(n_, i) == g) m.coeff_[i] = coeff_[i];
  return m;
}

double Multivector::max_abs() const {
  double m = 0.0;
  for (double c : coeff_) m = std::max(m, std::abs(c));
  return m;
}

double Multivector::l1_norm() const {
  double s = 0.0;
  for (double c : coeff_) s += std::abs(c);
  return s;
}

bool Multivector::even_sector(double tol) const {
  for (BasisIndex i = 0; i < size(); ++i) {
    if (std::abs(coeff_[i]) <= tol) continue;
    for (int p = 0; p < n_; ++p) {
      const unsigned code = (i >> (3 * p)) & 7u;
      if (std::popcount(code) % 2 != 0) return false;
    }
  }
  return true;
}

Multivector commutator(const Multivector& a, const Multivector& b) {
  Multivector m = a * b - b * a;
  m *= 0.5;
  return m;
}

double max_abs_diff(const Multivector& a, const Multivector& b) {
  check_same(a, b);
  double m = 0.0;
  for (BasisIndex i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Multivector embed(const Multivector& single, int n, int particle) {
  if (single.particles() != 1) throw std::invalid_argument("embed expects a single-particle value");
  const int p = particle_index(n, particle);
  Multivector out(n);
  for (BasisIndex c = 0; c < 8; ++c) out[BasisIndex{c} << (3 * p)] = single[c];
  return out;
}

CMultivector::CMultivector(Multivector plus, Multivector minus)
    : plus_(std::move(plus)), minus_(std::move(minus)) {
  check_same(plus_, minus_);
}

CMultivector::CMultivector(Multivector plus) : plus_(std::move(plus)), minus_(plus_.particles()) {}

CMultivector CMultivector::scalar(int n, double re, double im) {
  return {Multivector::scalar(n, re), Multivector::scalar(n, im)};
}

CMultivector& CMultivector::operator+=(const CMultivector& rhs) {
  plus_ += rhs.plus_;
  minus_ += rhs.minus_;
  return *this;
}

CMultivector& CMultivector::operator-=(const CMultivector& rhs) {
  plus_ -= rhs.plus_;
  minus_ -= rhs.minus_;
  return *this;
}

CMultivector& CMultivector::operator*=(double s) {
  plus_ *= s;
  minus_ *= s;
  return *this;
}

CMultivector CMultivector::operator-() const { return {-plus_, -minus_}; }

CMultivector operator*(const CMultivector& a, const CMultivector& b) {
  return {a.plus() * b.plus() - a.minus() * b.minus(),
          a.plus() * b.minus() + a.minus() * b.plus()};
}

double CMultivector::max_abs() const { return std::max(plus_.max_abs(), minus_.max_abs()); }

double CMultivector::l1_norm() const { return plus_.l1_norm() + minus_.l1_norm(); }

CMultivector jmul(const CMultivector& x) { return {-x.minus(), x.plus()}; }

CMultivector dagger(const CMultivector& x) { return {x.plus().reversed(), -x.minus().reversed()}; }

CMultivector cmv_exp(const CMultivector& x) {
  const int n = x.particles();
  // Halve until the l1 norm (submultiplicative) is at most 1 and the max
  // norm at most 0.5, so the series terms decay at least factorially.
  int squarings = 0;
  CMultivector scaled = x;
  while (scaled.max_abs() > 0.5 || scaled.l1_norm() > 1.0) {
    scaled *= 0.5;
    ++squarings;
    if (squarings > 64) throw std::invalid_argument("cmv_exp: argument too large");
  }
  CMultivector sum = CMultivector::scalar(n, 1.0);
  CMultivector term = CMultivector::scalar(n, 1.0);
  for (int k = 1; k <= 64; ++k) {
    term = term * scaled;
    term *= 1.0 / k;
    sum += term;
    if (term.max_abs() < 1e-13) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

double max_abs_diff(const CMultivector& a, const CMultivector& b) {
  return std::max(max_abs_diff(a.plus(), b.plus()), max_abs_diff(a.minus(), b.minus()));
}

}  // namespace msta
