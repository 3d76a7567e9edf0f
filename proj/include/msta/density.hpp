#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "msta/dynamics.hpp"
#include "msta/spin.hpp"

namespace msta {

struct BlochState {
  Vec3 p{0.0, 0.0, 0.0};  // |p| <= 1
};

// Even-subalgebra density operator rho = rho_plus - j rho_minus, normalized
// so the scalar part is 1 and Hermitian under dagger (reverse plus
// j-conjugation). rho_plus collects the MSTA grades 0 mod 4 (even bivector
// count), rho_minus the grades 2 mod 4.
class DensityOp {
 public:
  explicit DensityOp(CMultivector value, double tol = 1e-9);

  int particles() const { return value_.particles(); }
  const CMultivector& value() const { return value_; }

 private:
  CMultivector value_;
};

// rho* = 2^{n-1} psi (E + J) psi~ split by reversion parity, with -j on the
// odd part. Throws when psi is not normalized (tolerance 1e-9).
DensityOp density_from_spinor(const Spinor& psi);

// Convex combination; weights must be nonnegative and sum to 1.
DensityOp mix(std::span<const DensityOp> states, std::span<const double> weights);

// <o rho>_0 = <o_+ rho_+ + o_- rho_->_0.
double expectation(const CMultivector& o, const DensityOp& rho);

// U rho dagger(U) with U = exp(-j H t).
DensityOp evolve_density(const DensityOp& rho, const CMultivector& h, double t);

// Keep the identity and particle-a terms only; p is read from the
// -j Isigmak^a coefficients.
BlochState reduce_to_particle(const DensityOp& rho, int a);

// -((1+|p|)/2) log2((1+|p|)/2) - ((1-|p|)/2) log2((1-|p|)/2), in bits,
// with the continuous limit 0 log 0 = 0.
double von_neumann_entropy(double polarization_length);
double von_neumann_entropy(const BlochState& state);

// Reduced evolution of one spin coupled to a totally random neighbour along
// the z axis: transverse components scale by cos(dt) cos(dt/2), the
// longitudinal one by cos^2(dt/2). Throws when |p0| exceeds 1.
BlochState random_env_evolve(const BlochState& p0, double d, double t);

// The same map obtained constructively: evolve each Isigmak^1 under the pair
// Hamiltonian and discard every term involving the second spin.
BlochState random_env_evolve_constructive(const BlochState& p0, double d, double t);

// Monte Carlo cross-check: average over `samples` uniformly random pure
// states of the second spin. Converges to random_env_evolve as N^{-1/2}.
BlochState random_env_sample(const BlochState& p0, double d, double t, int samples,
                             std::uint64_t seed);

enum class TidesGeometry { kEquator, kPoles };

struct TidesRow {
  double t = 0.0;            // units of 1/d
  double signed_length = 0.0;
  double entropy_bits = 0.0;
};

// Signed polarization length and entropy over the grid (times in 1/d).
// Equator = environment displaced perpendicular to p0, poles = parallel.
std::vector<TidesRow> tides_scan(TidesGeometry geometry, std::span<const double> times);

// Deterministic per-slot stream seed, shared by every sampling mode so that
// results do not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// One Monte Carlo row at time t (units of 1/d) from `samples` random
// neighbour states drawn with row_seed.
TidesRow tides_row_sampled(TidesGeometry geometry, double t, int samples, std::uint64_t row_seed);

// Monte Carlo variant of the scan; row i uses derive_seed(seed, i).
std::vector<TidesRow> tides_scan_sampled(TidesGeometry geometry, std::span<const double> times,
                                         int samples, std::uint64_t seed);

// Vector-form objects of the conventional construction, kept for reference
// and tests; the production density path is the even formulation above.
Multivector z_plus_idempotent(int n);        // Z+^1 ... Z+^n (leaves the even sector)
Multivector pseudoscalar_correlator(int n);  // C = prod_a (1 - iota^1 iota^a)/2

}  // namespace msta
