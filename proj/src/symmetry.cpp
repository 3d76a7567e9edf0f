#include "msta/symmetry.hpp"

#include <cmath>
#include <stdexcept>

#include "msta/oracle.hpp"

namespace msta {

double lagrangian_single(const Multivector& psi, const Multivector& psi_dot,
                         const Multivector& gamma_b) {
  if (psi.particles() != 1) throw std::invalid_argument("lagrangian_single expects n = 1");
  const Multivector is3 = Multivector::isigma(1, 1, 3);
  const Multivector kinetic = psi_dot * is3 * psi.reversed();
  const Multivector potential = gamma_b * psi * is3 * psi.reversed();
  return kinetic.scalar_part() - potential.scalar_part();
}

double lagrangian_two(const Spinor& psi, const Multivector& psi_dot, const Multivector& h_dipolar) {
  const int n = psi.particles();
  if (n != 2) throw std::invalid_argument("lagrangian_two expects n = 2");
  const Multivector psi_rev = psi.mv().reversed();
  const double kinetic = (psi_dot * complex_j(n) * psi_rev).scalar_part();
  // psi E psi~ = psi psi~ for correlated spinors.
  const double potential = (h_dipolar * (psi.mv() * psi_rev)).scalar_part();
  return 2.0 * (kinetic - potential);
}

double noether_charge(const Spinor& psi, const Multivector& phi) {
  const int n = psi.particles();
  if (phi.particles() != n) throw std::invalid_argument("mismatched particle counts");
  const Multivector paired = phi * complex_j(n) * psi.mv().reversed();
  return std::ldexp(paired.scalar_part(), n - 1);
}

Multivector apply_generator(const CMultivector& generator, const Spinor& psi) {
  Multivector phi = generator.plus() * psi.mv();
  if (generator.minus().max_abs() != 0.0)
    phi += generator.minus() * psi.mv() * complex_j(psi.particles());
  return phi;
}

std::vector<ConservedQuantity> conserved_set_two_spin(double d) {
  const int n = 2;
  const Multivector zero(n);
  const Multivector h = dipolar_hamiltonian(n, 1, 2, d, {0.0, 0.0, 1.0});
  const Multivector pi = interchange(n, 1, 2);
  const Multivector jz = 0.5 * (Multivector::isigma(n, 1, 3) + Multivector::isigma(n, 2, 3));
  const Multivector dq1 = Multivector::isigma(n, 1, 1) * Multivector::isigma(n, 2, 1) -
                          Multivector::isigma(n, 1, 2) * Multivector::isigma(n, 2, 2);
  const Multivector dq2 = Multivector::isigma(n, 1, 1) * Multivector::isigma(n, 2, 2) +
                          Multivector::isigma(n, 1, 2) * Multivector::isigma(n, 2, 1);

  std::vector<ConservedQuantity> set;
  set.push_back({"norm-phase", std::nullopt,
                 [](const Spinor& psi) { return noether_charge(psi, psi.apply_j().mv()); }});
  const auto left_action = [](std::string name, CMultivector gen) {
    ConservedQuantity q;
    q.name = std::move(name);
    q.generator = gen;
    q.charge = [gen](const Spinor& psi) { return noether_charge(psi, apply_generator(gen, psi)); };
    return q;
  };
  set.push_back(left_action("energy", CMultivector{zero, -h}));
  set.push_back(left_action("z-angular-momentum", CMultivector{jz}));
  set.push_back(left_action("interchange", CMultivector{zero, -pi}));
  set.push_back(left_action("double-quantum-1", CMultivector{zero, -dq1}));
  set.push_back(left_action("double-quantum-2", CMultivector{zero, -dq2}));
  return set;
}

int commutant_dimension(const CMultivector& h) {
  if (h.particles() != 2) throw std::invalid_argument("commutant_dimension supports n = 2 only");
  const oracle::ComplexMatrix h_mat = oracle::to_matrix(h);
  const double herm = (h_mat - h_mat.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10 * std::max(1.0, h_mat.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("commutant_dimension requires a Hermitian-representable H");

  // Hermitian observable basis sigma_mu (x) sigma_nu; the commutator map
  // M -> i [H, M] is real in this basis (tr(B A)/4 coefficients).
  std::vector<oracle::ComplexMatrix> basis;
  basis.reserve(16);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      oracle::ComplexMatrix b(4, 4);
      const auto pm = oracle::pauli(mu);
      const auto pn = oracle::pauli(nu);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) b.block(2 * i, 2 * j, 2, 2) = pm(i, j) * pn;
      basis.push_back(std::move(b));
    }

  Eigen::MatrixXd superop(16, 16);
  for (int col = 0; col < 16; ++col) {
    const oracle::ComplexMatrix comm = h_mat * basis[col] - basis[col] * h_mat;
    for (int row = 0; row < 16; ++row)
      superop(row, col) = ((basis[row] * comm).trace() * std::complex<double>(0, 1)).real() / 4.0;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(superop);
  const auto& sv = svd.singularValues();
  const double threshold = 1e-9 * sv(0);
  int nullity = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= threshold) ++nullity;
  return nullity;
}

}  // namespace msta
