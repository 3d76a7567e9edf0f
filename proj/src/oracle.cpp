#include "msta/oracle.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "msta/density.hpp"

namespace msta::oracle {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  double uniform() {
    state = splitmix64(state);
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  }
  double symmetric() { return 2.0 * uniform() - 1.0; }
};

// Image of one particle's blade code under Isigmak -> i sigma_k. The
// canonical blades map as: sigma1 sigma2 = Isigma3, sigma2 sigma3 = Isigma1,
// sigma1 sigma3 = -Isigma2. Odd codes are outside the correspondence.
Eigen::Matrix2cd blade_image(unsigned code) {
  switch (code) {
    case 0b000u: return Eigen::Matrix2cd::Identity();
    case 0b011u: return kI * pauli(3);
    case 0b101u: return -kI * pauli(2);
    case 0b110u: return kI * pauli(1);
    default:
      throw std::domain_error("to_matrix: odd-sector element has no matrix image");
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Operator acting on tensor slot `particle` (1-based, slot 1 leftmost).
ComplexMatrix at_slot(int n, int particle, const Eigen::Matrix2cd& op) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int a = 1; a <= n; ++a)
    out = kron(out, a == particle ? ComplexMatrix(op) : ComplexMatrix(Eigen::Matrix2cd::Identity()));
  return out;
}

void check_hermitian(const ComplexMatrix& h) {
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("matrix_evolve requires a Hermitian matrix");
}

Spinor random_spinor(int n, Rng& rng) {
  std::vector<Complex> amps(std::size_t{1} << n);
  double norm2 = 0.0;
  for (auto& a : amps) {
    a = {rng.symmetric(), rng.symmetric()};
    norm2 += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& a : amps) a *= scale;
  return Spinor::from_amplitudes(amps);
}

// Random element of the even (quaternion) sector.
Multivector random_even(int n, Rng& rng) {
  Multivector m(n);
  for (BasisIndex i = 0; i < m.size(); ++i) {
    bool even = true;
    for (int p = 0; p < n; ++p)
      if (std::popcount((i >> (3 * p)) & 7u) % 2 != 0) even = false;
    if (even) m[i] = rng.symmetric();
  }
  return m;
}

}  // namespace

ComplexMatrix pauli(int k) {
  Eigen::Matrix2cd m;
  switch (k) {
    case 0: m = Eigen::Matrix2cd::Identity(); break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli index must be 0..3");
  }
  return m;
}

ComplexVector to_vector(const Spinor& psi) {
  const auto amps = psi.amplitudes();
  ComplexVector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = amps[i];
  return v;
}

ComplexMatrix to_matrix(const Multivector& x) {
  const int n = x.particles();
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (BasisIndex i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    ComplexMatrix term = ComplexMatrix::Identity(1, 1);
    // Particle 1 is the leftmost Kronecker factor.
    for (int a = 1; a <= n; ++a) term = kron(term, blade_image((i >> (3 * (a - 1))) & 7u));
    out += x[i] * term;
  }
  return out;
}

ComplexMatrix to_matrix(const CMultivector& x) {
  return to_matrix(x.plus()) + kI * to_matrix(x.minus());
}

ComplexMatrix pauli_hamiltonian(const HamiltonianSpec& spec) {
  spec.validate();
  const Eigen::Index dim = Eigen::Index{1} << spec.n;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (const auto& pair : spec.pairs) {
    ComplexMatrix term = ComplexMatrix::Zero(dim, dim);
    for (int k = 1; k <= 3; ++k)
      term += at_slot(spec.n, pair.a, pauli(k)) * at_slot(spec.n, pair.b, pauli(k));
    Eigen::Matrix2cd ns = Eigen::Matrix2cd::Zero();
    for (int k = 1; k <= 3; ++k) ns += pair.axis[k - 1] * pauli(k);
    term -= 3.0 * (at_slot(spec.n, pair.a, ns) * at_slot(spec.n, pair.b, ns));
    h += (pair.d / 4.0) * term;
  }
  for (const auto& z : spec.zeeman) {
    Eigen::Matrix2cd bs = Eigen::Matrix2cd::Zero();
    for (int k = 1; k <= 3; ++k) bs += z.axis[k - 1] * pauli(k);
    h -= z.rate * at_slot(spec.n, z.a, bs);
  }
  return h;
}

ComplexVector matrix_evolve(const ComplexVector& v, const ComplexMatrix& h, double t) {
  check_hermitian(h);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  const auto& vecs = solver.eigenvectors();
  const auto& vals = solver.eigenvalues();
  ComplexVector phases(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) phases(i) = std::exp(-kI * vals(i) * t);
  return vecs * phases.asDiagonal() * vecs.adjoint() * v;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  check_hermitian(h);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  std::vector<double> vals(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + solver.eigenvalues().size());
  return vals;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int keep) {
  const Eigen::Index dim = m.rows();
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim || m.cols() != dim)
    throw std::invalid_argument("partial_trace requires a square 2^n matrix");
  if (keep < 1 || keep > n) throw std::invalid_argument("particle out of range");
  const int shift = n - keep;  // bit position of the kept particle
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (Eigen::Index rest = 0; rest < (dim >> 1); ++rest) {
    // Scatter the remaining particles' bits around the kept position.
    const Eigen::Index low = rest & ((Eigen::Index{1} << shift) - 1);
    const Eigen::Index high = (rest >> shift) << (shift + 1);
    const Eigen::Index base = high | low;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        out(i, j) += m(base | (Eigen::Index{i} << shift), base | (Eigen::Index{j} << shift));
  }
  return out;
}

Vec3 bloch_vector(const ComplexMatrix& reduced) {
  if (reduced.rows() != 2 || reduced.cols() != 2)
    throw std::invalid_argument("bloch_vector expects a 2x2 matrix");
  const double tr = reduced.trace().real();
  Vec3 p{};
  for (int k = 1; k <= 3; ++k) p[k - 1] = (pauli(k) * reduced).trace().real() / tr;
  return p;
}

namespace {

CheckResult make_check(std::string name, double deviation, double tolerance) {
  return {std::move(name), deviation, tolerance, deviation < tolerance};
}

double matdev(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

std::vector<CheckResult> run_checks(const HamiltonianSpec& spec, const CheckOptions& options) {
  spec.validate();
  const int n = spec.n;
  Rng rng(splitmix64(options.seed ^ 0xC0FFEEull));
  std::vector<CheckResult> results;

  const CMultivector h_mv = hamiltonian_op(spec);
  const ComplexMatrix h_mat = pauli_hamiltonian(spec);

  // The two Hamiltonian constructions are assembled independently.
  results.push_back(make_check("hamiltonian-image", matdev(to_matrix(h_mv), h_mat), 1e-12));

  double dev = 0.0;
  for (int rep = 0; rep < 8; ++rep) {
    const Multivector a = random_even(n, rng);
    const Multivector b = random_even(n, rng);
    dev = std::max(dev, matdev(to_matrix(a * b), to_matrix(a) * to_matrix(b)));
  }
  results.push_back(make_check("product-homomorphism", dev, 1e-12));

  const double t_grid[] = {0.3, 0.7, 1.7, 5.0};
  dev = 0.0;
  double unit_dev = 0.0;
  const CMultivector one = CMultivector::scalar(n, 1.0);
  for (const double t : t_grid) {
    const double t_used = options.flip_propagator_sign ? -t : t;
    const CMultivector u = propagator_series(h_mv, t_used);
    unit_dev = std::max(unit_dev, max_abs_diff(dagger(u) * u, one));
    for (int rep = 0; rep < 4; ++rep) {
      const Spinor psi = random_spinor(n, rng);
      const ComplexVector lhs = to_vector(apply_propagator(u, psi));
      const ComplexVector rhs = matrix_evolve(to_vector(psi), h_mat, t);
      dev = std::max(dev, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  results.push_back(make_check("propagator-intertwining", dev, 1e-10));
  results.push_back(make_check("propagator-unitarity", unit_dev, 1e-11));

  dev = 0.0;
  double bloch_dev = 0.0;
  for (int rep = 0; rep < 12; ++rep) {
    const Spinor psi = random_spinor(n, rng);
    const ComplexVector v = to_vector(psi);
    const ComplexMatrix projector = v * v.adjoint();
    const DensityOp rho = density_from_spinor(psi);
    dev = std::max(dev, matdev(to_matrix(rho.value()) / std::ldexp(1.0, n), projector));
    const SpinObservables obs = spin_bivector(psi);
    for (int a = 1; a <= n; ++a) {
      const Vec3 pt = bloch_vector(partial_trace(projector, a));
      const BlochState red = reduce_to_particle(rho, a);
      for (int k = 0; k < 3; ++k) {
        bloch_dev = std::max(bloch_dev, std::abs(pt[k] - obs.polarization[a - 1][k]));
        bloch_dev = std::max(bloch_dev, std::abs(pt[k] - red.p[k]));
      }
    }
  }
  results.push_back(make_check("density-image", dev, 1e-10));
  results.push_back(make_check("bloch-vs-partial-trace", bloch_dev, 1e-10));

  // Closed-form propagators only exist for a single z-axis pair.
  if (spec.pairs.size() == 1 && spec.zeeman.empty()) {
    const auto& pair = spec.pairs[0];
    dev = 0.0;
    for (const double t : t_grid) {
      const CMultivector series = propagator_series(h_mv, t);
      dev = std::max(dev, max_abs_diff(propagator_factored(n, pair.a, pair.b, pair.d, t, pair.axis),
                                       series));
      if (n == 2 && pair.axis == Vec3{0.0, 0.0, 1.0})
        dev = std::max(dev, max_abs_diff(propagator_eigen(pair.d, t), series));
    }
    results.push_back(make_check("propagator-closed-forms", dev, 1e-11));
  }

  return results;
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace msta::oracle
