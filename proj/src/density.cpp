#include "msta/density.hpp"

#include <cmath>
#include <stdexcept>

namespace msta {

namespace {

double scalar_of_product(const Multivector& x, const Multivector& y) {
  const int n = x.particles();
  double s = 0.0;
  for (BasisIndex i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0 || y[i] == 0.0) continue;
    s += x[i] * y[i] * basis_product(n, i, i).sign;
  }
  return s;
}

double plen(const Vec3& p) { return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Deterministic uniform doubles in [0, 1) from a counter-mode generator.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  double uniform() {
    state = splitmix64(state);
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  }
};

Vec3 random_unit(Rng& rng) {
  const double z = 1.0 - 2.0 * rng.uniform();
  const double phi = 2.0 * M_PI * rng.uniform();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

// Qubit amplitudes of the pure state with Bloch vector u (unit).
std::array<std::complex<double>, 2> qubit_amplitudes(const Vec3& u) {
  const double theta = std::acos(std::clamp(u[2], -1.0, 1.0));
  const double phi = std::atan2(u[1], u[0]);
  return {std::complex<double>{std::cos(theta / 2), 0.0},
          std::polar(std::sin(theta / 2), phi)};
}

}  // namespace

DensityOp::DensityOp(CMultivector value, double tol) : value_(std::move(value)) {
  if (std::abs(value_.plus().scalar_part() - 1.0) > tol)
    throw std::invalid_argument("density operator must have unit scalar part");
  if (max_abs_diff(dagger(value_), value_) > tol)
    throw std::invalid_argument("density operator must be Hermitian under dagger");
}

DensityOp density_from_spinor(const Spinor& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("density_from_spinor requires a normalized spinor");
  const int n = psi.particles();
  Multivector rho_star = psi.mv() * (correlator(n) + complex_j(n)) * psi.mv().reversed();
  rho_star *= std::ldexp(1.0, n - 1);
  // Split by reversion parity: grades 0 mod 4 stay real, grades 2 mod 4
  // pick up the -j label.
  Multivector plus(n), minus(n);
  for (BasisIndex i = 0; i < rho_star.size(); ++i) {
    if (rho_star[i] == 0.0) continue;
    if (msta_grade(n, i) % 4 == 0)
      plus[i] = rho_star[i];
    else
      minus[i] = -rho_star[i];
  }
  return DensityOp(CMultivector{std::move(plus), std::move(minus)});
}

DensityOp mix(std::span<const DensityOp> states, std::span<const double> weights) {
  if (states.empty() || states.size() != weights.size())
    throw std::invalid_argument("mix requires matching nonempty states and weights");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("mix weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("mix weights must sum to 1");
  CMultivector acc(states[0].particles());
  for (std::size_t i = 0; i < states.size(); ++i) acc += weights[i] * states[i].value();
  return DensityOp(std::move(acc));
}

double expectation(const CMultivector& o, const DensityOp& rho) {
  if (o.particles() != rho.particles()) throw std::invalid_argument("mismatched particle counts");
  return scalar_of_product(o.plus(), rho.value().plus()) -
         scalar_of_product(o.minus(), rho.value().minus());
}

DensityOp evolve_density(const DensityOp& rho, const CMultivector& h, double t) {
  const CMultivector u = propagator_series(h, t);
  return DensityOp(u * rho.value() * dagger(u), 1e-8);
}

BlochState reduce_to_particle(const DensityOp& rho, int a) {
  BlochState out;
  for (int k = 1; k <= 3; ++k) out.p[k - 1] = -rho.value().minus().isigma_coeff(a, k);
  return out;
}

double von_neumann_entropy(double polarization_length) {
  const double r = std::clamp(polarization_length, 0.0, 1.0);
  const auto term = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
  return term((1.0 + r) / 2.0) + term((1.0 - r) / 2.0);
}

double von_neumann_entropy(const BlochState& state) { return von_neumann_entropy(plen(state.p)); }

BlochState random_env_evolve(const BlochState& p0, double d, double t) {
  if (plen(p0.p) > 1.0 + 1e-9)
    throw std::invalid_argument("polarization vector must have length at most 1");
  const double transverse = std::cos(d * t) * std::cos(d * t / 2);
  const double longitudinal = std::cos(d * t / 2) * std::cos(d * t / 2);
  return BlochState{{transverse * p0.p[0], transverse * p0.p[1], longitudinal * p0.p[2]}};
}

BlochState random_env_evolve_constructive(const BlochState& p0, double d, double t) {
  const int n = 2;
  const CMultivector h{dipolar_hamiltonian(n, 1, 2, d, {0.0, 0.0, 1.0})};
  BlochState out;
  for (int k = 1; k <= 3; ++k) {
    if (p0.p[k - 1] == 0.0) continue;
    const CMultivector evolved = evolve_observable(CMultivector{Multivector::isigma(n, 1, k)}, h, t);
    // Throw out every term involving the second spin, keep the real
    // particle-1 bivector components.
    for (int m = 1; m <= 3; ++m) out.p[m - 1] += p0.p[k - 1] * evolved.plus().isigma_coeff(1, m);
  }
  return out;
}

BlochState random_env_sample(const BlochState& p0, double d, double t, int samples,
                             std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("sample count must be positive");
  const double len = plen(p0.p);
  if (len > 1.0 + 1e-9)
    throw std::invalid_argument("polarization vector must have length at most 1");
  if (len == 0.0) return BlochState{};
  const Vec3 u{p0.p[0] / len, p0.p[1] / len, p0.p[2] / len};
  const auto a1 = qubit_amplitudes(u);

  const CMultivector h{dipolar_hamiltonian(2, 1, 2, d, {0.0, 0.0, 1.0})};
  const CMultivector prop = propagator_series(h, t);  // shared across samples
  Rng rng(seed);
  Vec3 acc{0.0, 0.0, 0.0};
  for (int s = 0; s < samples; ++s) {
    const auto a2 = qubit_amplitudes(random_unit(rng));
    const Spinor psi = Spinor::from_amplitudes(
        {a1[0] * a2[0], a1[0] * a2[1], a1[1] * a2[0], a1[1] * a2[1]});
    const BlochState reduced =
        reduce_to_particle(density_from_spinor(apply_propagator(prop, psi)), 1);
    for (int i = 0; i < 3; ++i) acc[i] += reduced.p[i];
  }
  // Linearity in the initial state restores the sub-unit length.
  return BlochState{{len * acc[0] / samples, len * acc[1] / samples, len * acc[2] / samples}};
}

namespace {

TidesRow tides_row(double t, double signed_length) {
  return {t, signed_length, von_neumann_entropy(std::abs(signed_length))};
}

}  // namespace

std::vector<TidesRow> tides_scan(TidesGeometry geometry, std::span<const double> times) {
  std::vector<TidesRow> rows;
  rows.reserve(times.size());
  for (const double t : times) {
    const double s = geometry == TidesGeometry::kEquator
                         ? std::cos(t) * std::cos(t / 2)
                         : std::cos(t / 2) * std::cos(t / 2);
    rows.push_back(tides_row(t, s));
  }
  return rows;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ (index + 0x1Dull));
}

TidesRow tides_row_sampled(TidesGeometry geometry, double t, int samples, std::uint64_t row_seed) {
  const Vec3 e0 = geometry == TidesGeometry::kEquator ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 0.0, 1.0};
  const BlochState avg = random_env_sample(BlochState{e0}, 1.0, t, samples, row_seed);
  return tides_row(t, avg.p[0] * e0[0] + avg.p[1] * e0[1] + avg.p[2] * e0[2]);
}

std::vector<TidesRow> tides_scan_sampled(TidesGeometry geometry, std::span<const double> times,
                                         int samples, std::uint64_t seed) {
  std::vector<TidesRow> rows(times.size());
  for (std::size_t i = 0; i < times.size(); ++i)
    rows[i] = tides_row_sampled(geometry, times[i], samples, derive_seed(seed, i));
  return rows;
}

Multivector z_plus_idempotent(int n) {
  Multivector z = Multivector::scalar(n, 1.0);
  for (int a = 1; a <= n; ++a) {
    Multivector factor = Multivector::scalar(n, 0.5);
    factor += 0.5 * Multivector::sigma(n, a, 3);
    z = z * factor;
  }
  return z;
}

Multivector pseudoscalar_correlator(int n) {
  Multivector c = Multivector::scalar(n, 1.0);
  for (int a = 2; a <= n; ++a) {
    Multivector factor = Multivector::scalar(n, 0.5);
    factor -= 0.5 * (Multivector::pseudoscalar(n, 1) * Multivector::pseudoscalar(n, a));
    c = c * factor;
  }
  return c;
}

}  // namespace msta
