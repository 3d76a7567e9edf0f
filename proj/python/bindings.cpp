#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "msta/density.hpp"
#include "msta/dynamics.hpp"
#include "msta/oracle.hpp"
#include "msta/run.hpp"
#include "msta/spin.hpp"
#include "msta/symmetry.hpp"

namespace py = pybind11;
using namespace msta;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Even multiparticle spacetime algebra of spin-1/2 particles: "
            "geometric-algebra states, dipolar dynamics, entanglement and "
            "decoherence analysis, with a conventional matrix oracle for "
            "cross-validation.";

  py::class_<Multivector>(m, "Multivector")
      .def(py::init<int>(), py::arg("n"))
      .def_static("scalar", &Multivector::scalar, py::arg("n"), py::arg("value"))
      .def_static("basis", &Multivector::basis, py::arg("n"), py::arg("index"),
                  py::arg("value") = 1.0)
      .def_static("sigma", &Multivector::sigma, py::arg("n"), py::arg("particle"), py::arg("k"))
      .def_static("isigma", &Multivector::isigma, py::arg("n"), py::arg("particle"), py::arg("k"))
      .def_static("pseudoscalar", &Multivector::pseudoscalar, py::arg("n"), py::arg("particle"))
      .def_property_readonly("n", &Multivector::particles)
      .def("__len__", &Multivector::size)
      .def("__getitem__",
           [](const Multivector& mv, BasisIndex i) {
             if (i >= mv.size()) throw py::index_error();
             return mv[i];
           })
      .def("__setitem__",
           [](Multivector& mv, BasisIndex i, double v) {
             if (i >= mv.size()) throw py::index_error();
             mv[i] = v;
           })
      .def("scalar_part", &Multivector::scalar_part)
      .def("isigma_coeff", &Multivector::isigma_coeff, py::arg("particle"), py::arg("k"))
      .def("reversed", &Multivector::reversed)
      .def("grade", &Multivector::grade, py::arg("g"))
      .def("max_abs", &Multivector::max_abs)
      .def("even_sector", &Multivector::even_sector, py::arg("tol") = 0.0)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self * double())
      .def(double() * py::self)
      .def("__neg__", [](const Multivector& mv) { return -mv; })
      .def("__repr__", [](const Multivector& mv) {
        return "<Multivector n=" + std::to_string(mv.particles()) + ">";
      });

  m.def("basis_product", [](int n, BasisIndex i, BasisIndex k) {
    const auto r = basis_product(n, i, k);
    return py::make_tuple(r.index, r.sign);
  });
  m.def("msta_grade", &msta_grade, py::arg("n"), py::arg("index"));
  m.def("commutator", &commutator, py::arg("a"), py::arg("b"));
  m.def("max_abs_diff", py::overload_cast<const Multivector&, const Multivector&>(&max_abs_diff));
  m.def("embed", &embed, py::arg("single"), py::arg("n"), py::arg("particle"));

  py::class_<CMultivector>(m, "CMultivector")
      .def(py::init<int>(), py::arg("n"))
      .def(py::init<Multivector>(), py::arg("plus"))
      .def(py::init<Multivector, Multivector>(), py::arg("plus"), py::arg("minus"))
      .def_static("scalar", &CMultivector::scalar, py::arg("n"), py::arg("re"), py::arg("im") = 0.0)
      .def_property_readonly("n", &CMultivector::particles)
      .def_property_readonly("plus", [](const CMultivector& x) { return x.plus(); })
      .def_property_readonly("minus", [](const CMultivector& x) { return x.minus(); })
      .def("max_abs", &CMultivector::max_abs)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self * double())
      .def(double() * py::self)
      .def("__neg__", [](const CMultivector& x) { return -x; });

  m.def("jmul", py::overload_cast<const CMultivector&>(&jmul));
  m.def("dagger", &dagger);
  m.def("cmv_exp", &cmv_exp);
  m.def("max_abs_diff",
        py::overload_cast<const CMultivector&, const CMultivector&>(&max_abs_diff));

  m.def("correlator", &correlator, py::arg("n"));
  m.def("complex_j", &complex_j, py::arg("n"));
  m.def("interchange", &interchange, py::arg("n"), py::arg("a"), py::arg("b"));
  m.def("phase_rotor", &phase_rotor, py::arg("n"), py::arg("alpha"));

  py::class_<SpinObservables>(m, "SpinObservables")
      .def_readonly("spin", &SpinObservables::spin)
      .def_readonly("polarization", &SpinObservables::polarization)
      .def_readonly("polarization_norm", &SpinObservables::polarization_norm)
      .def_readonly("angle", &SpinObservables::angle);

  py::class_<Spinor>(m, "Spinor")
      .def(py::init<Multivector, double>(), py::arg("value"), py::arg("tol") = 1e-9)
      .def_static("from_amplitudes", &Spinor::from_amplitudes, py::arg("amplitudes"))
      .def_property_readonly("n", &Spinor::particles)
      .def_property_readonly("mv", &Spinor::mv)
      .def("norm", &Spinor::norm)
      .def("amplitudes", &Spinor::amplitudes)
      .def("apply_j", &Spinor::apply_j);

  m.def("spin_bivector", &spin_bivector, py::arg("psi"));
  m.def("entanglement_angle", &entanglement_angle, py::arg("psi"), py::arg("particle"));
  m.def("two_qubit_state", &two_qubit_state, py::arg("upsilon"), py::arg("zeta"), py::arg("theta"),
        py::arg("alpha"));

  py::class_<DipolarPair>(m, "DipolarPair")
      .def(py::init<>())
      .def(py::init([](int a, int b, double d, const Vec3& axis) {
             return DipolarPair{a, b, d, axis};
           }),
           py::arg("a"), py::arg("b"), py::arg("d"), py::arg("axis") = Vec3{0, 0, 1})
      .def_readwrite("a", &DipolarPair::a)
      .def_readwrite("b", &DipolarPair::b)
      .def_readwrite("d", &DipolarPair::d)
      .def_readwrite("axis", &DipolarPair::axis);

  py::class_<ZeemanTerm>(m, "ZeemanTerm")
      .def(py::init<>())
      .def(py::init([](int a, const Vec3& axis, double rate) {
             return ZeemanTerm{a, axis, rate};
           }),
           py::arg("a"), py::arg("axis"), py::arg("rate"))
      .def_readwrite("a", &ZeemanTerm::a)
      .def_readwrite("axis", &ZeemanTerm::axis)
      .def_readwrite("rate", &ZeemanTerm::rate);

  py::class_<HamiltonianSpec>(m, "HamiltonianSpec")
      .def(py::init<>())
      .def(py::init([](int n, std::vector<DipolarPair> pairs, std::vector<ZeemanTerm> zeeman) {
             return HamiltonianSpec{n, std::move(pairs), std::move(zeeman)};
           }),
           py::arg("n"), py::arg("pairs"), py::arg("zeeman") = std::vector<ZeemanTerm>{})
      .def_readwrite("n", &HamiltonianSpec::n)
      .def_readwrite("pairs", &HamiltonianSpec::pairs)
      .def_readwrite("zeeman", &HamiltonianSpec::zeeman)
      .def("validate", &HamiltonianSpec::validate);

  m.def("dipolar_hamiltonian", &dipolar_hamiltonian, py::arg("n"), py::arg("a"), py::arg("b"),
        py::arg("d"), py::arg("axis") = Vec3{0, 0, 1});
  m.def("zeeman_generator", &zeeman_generator, py::arg("n"), py::arg("a"), py::arg("axis"),
        py::arg("rate"));
  m.def("hamiltonian_op", &hamiltonian_op, py::arg("spec"));
  m.def("frame_transform", &frame_transform, py::arg("h"), py::arg("generator"), py::arg("angle"));
  m.def("rotor_z_to", &rotor_z_to, py::arg("axis"));

  m.def("propagator_factored", &propagator_factored, py::arg("n"), py::arg("a"), py::arg("b"),
        py::arg("d"), py::arg("t"), py::arg("axis") = Vec3{0, 0, 1});
  m.def("propagator_eigen", &propagator_eigen, py::arg("d"), py::arg("t"));
  m.def("propagator_series", py::overload_cast<const CMultivector&, double>(&propagator_series),
        py::arg("h"), py::arg("t"));
  m.def("apply_propagator", &apply_propagator, py::arg("u"), py::arg("psi"));
  m.def("evolve_spinor", &evolve_spinor, py::arg("psi0"), py::arg("h"), py::arg("t"));
  m.def("evolve_observable", &evolve_observable, py::arg("o"), py::arg("h"), py::arg("t"));
  m.def("energy_expectation", &energy_expectation, py::arg("h"), py::arg("psi"));
  m.def("spin_derivative", &spin_derivative, py::arg("psi"), py::arg("h"));

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("samples", &Trajectory::samples)
      .def_readonly("energy", &Trajectory::energy)
      .def_readonly("states", &Trajectory::states)
      .def_readonly("initial_state", &Trajectory::initial_state);
  m.def(
      "spin_trajectory",
      [](const Spinor& psi0, const CMultivector& h, const std::vector<double>& times,
         bool keep_states) { return spin_trajectory(psi0, h, times, keep_states); },
      py::arg("psi0"), py::arg("h"), py::arg("times"), py::arg("keep_states") = false);

  py::class_<ClassicalTrajectory>(m, "ClassicalTrajectory")
      .def_readonly("times", &ClassicalTrajectory::times)
      .def_readonly("p", &ClassicalTrajectory::p)
      .def_readonly("q", &ClassicalTrajectory::q);
  m.def(
      "classical_trajectory",
      [](const Vec3& p0, const Vec3& q0, double d, const std::vector<double>& times,
         const Vec3& axis) { return classical_trajectory(p0, q0, d, times, axis); },
      py::arg("p0"), py::arg("q0"), py::arg("d"), py::arg("times"),
      py::arg("axis") = Vec3{0, 0, 1});

  py::class_<BlochState>(m, "BlochState")
      .def(py::init([](const Vec3& p) { return BlochState{p}; }), py::arg("p"))
      .def_readwrite("p", &BlochState::p);

  py::class_<DensityOp>(m, "DensityOp")
      .def(py::init<CMultivector, double>(), py::arg("value"), py::arg("tol") = 1e-9)
      .def_property_readonly("n", &DensityOp::particles)
      .def_property_readonly("value", &DensityOp::value);

  m.def("density_from_spinor", &density_from_spinor, py::arg("psi"));
  m.def(
      "mix",
      [](const std::vector<DensityOp>& states, const std::vector<double>& weights) {
        return mix(states, weights);
      },
      py::arg("states"), py::arg("weights"));
  m.def("expectation", &expectation, py::arg("o"), py::arg("rho"));
  m.def("evolve_density", &evolve_density, py::arg("rho"), py::arg("h"), py::arg("t"));
  m.def("reduce_to_particle", &reduce_to_particle, py::arg("rho"), py::arg("particle"));
  m.def("von_neumann_entropy", py::overload_cast<double>(&von_neumann_entropy),
        py::arg("polarization_length"));
  m.def("random_env_evolve", &random_env_evolve, py::arg("p0"), py::arg("d"), py::arg("t"));
  m.def("random_env_evolve_constructive", &random_env_evolve_constructive, py::arg("p0"),
        py::arg("d"), py::arg("t"));
  m.def("random_env_sample", &random_env_sample, py::arg("p0"), py::arg("d"), py::arg("t"),
        py::arg("samples"), py::arg("seed"));

  py::enum_<TidesGeometry>(m, "TidesGeometry")
      .value("EQUATOR", TidesGeometry::kEquator)
      .value("POLES", TidesGeometry::kPoles);
  py::class_<TidesRow>(m, "TidesRow")
      .def_readonly("t", &TidesRow::t)
      .def_readonly("signed_length", &TidesRow::signed_length)
      .def_readonly("entropy_bits", &TidesRow::entropy_bits);
  m.def(
      "tides_scan",
      [](TidesGeometry geometry, const std::vector<double>& times) {
        return tides_scan(geometry, times);
      },
      py::arg("geometry"), py::arg("times"));
  m.def(
      "tides_scan_sampled",
      [](TidesGeometry geometry, const std::vector<double>& times, int samples,
         std::uint64_t seed) { return tides_scan_sampled(geometry, times, samples, seed); },
      py::arg("geometry"), py::arg("times"), py::arg("samples"), py::arg("seed"));

  m.def("lagrangian_single", &lagrangian_single, py::arg("psi"), py::arg("psi_dot"),
        py::arg("gamma_b"));
  m.def("lagrangian_two", &lagrangian_two, py::arg("psi"), py::arg("psi_dot"),
        py::arg("h_dipolar"));
  m.def("noether_charge", &noether_charge, py::arg("psi"), py::arg("phi"));
  m.def("apply_generator", &apply_generator, py::arg("generator"), py::arg("psi"));
  py::class_<ConservedQuantity>(m, "ConservedQuantity")
      .def_readonly("name", &ConservedQuantity::name)
      .def("charge", [](const ConservedQuantity& q, const Spinor& psi) { return q.charge(psi); });
  m.def("conserved_set_two_spin", &conserved_set_two_spin, py::arg("d"));
  m.def("commutant_dimension", &commutant_dimension, py::arg("h"));

  auto oracle_mod = m.def_submodule("oracle", "Conventional complex-matrix reference");
  oracle_mod.def("pauli", &oracle::pauli, py::arg("k"));
  oracle_mod.def("to_vector", &oracle::to_vector, py::arg("psi"));
  oracle_mod.def("to_matrix", py::overload_cast<const Multivector&>(&oracle::to_matrix));
  oracle_mod.def("to_matrix", py::overload_cast<const CMultivector&>(&oracle::to_matrix));
  oracle_mod.def("pauli_hamiltonian", &oracle::pauli_hamiltonian, py::arg("spec"));
  oracle_mod.def("matrix_evolve", &oracle::matrix_evolve, py::arg("v"), py::arg("h"), py::arg("t"));
  oracle_mod.def("hermitian_eigenvalues", &oracle::hermitian_eigenvalues, py::arg("h"));
  oracle_mod.def("partial_trace", &oracle::partial_trace, py::arg("m"), py::arg("keep"));
  oracle_mod.def("bloch_vector", &oracle::bloch_vector, py::arg("reduced"));
  py::class_<oracle::CheckResult>(oracle_mod, "CheckResult")
      .def_readonly("name", &oracle::CheckResult::name)
      .def_readonly("deviation", &oracle::CheckResult::deviation)
      .def_readonly("tolerance", &oracle::CheckResult::tolerance)
      .def_readonly("ok", &oracle::CheckResult::pass);
  oracle_mod.def(
      "run_checks",
      [](const HamiltonianSpec& spec, std::uint64_t seed) {
        oracle::CheckOptions options;
        options.seed = seed;
        return oracle::run_checks(spec, options);
      },
      py::arg("spec"), py::arg("seed") = 0);

  auto run_mod = m.def_submodule("run", "File-emitting command layer");
  py::class_<run::RunConfig>(run_mod, "RunConfig")
      .def(py::init<>())
      .def_readwrite("command", &run::RunConfig::command)
      .def_readwrite("n", &run::RunConfig::n)
      .def_readwrite("hamiltonian", &run::RunConfig::hamiltonian)
      .def_readwrite("state", &run::RunConfig::state)
      .def_readwrite("amplitudes", &run::RunConfig::amplitudes)
      .def_readwrite("t_max", &run::RunConfig::t_max)
      .def_readwrite("samples", &run::RunConfig::samples)
      .def_readwrite("geometry", &run::RunConfig::geometry)
      .def_readwrite("out", &run::RunConfig::out)
      .def_readwrite("seed", &run::RunConfig::seed)
      .def_readwrite("mc_samples", &run::RunConfig::mc_samples)
      .def_static("from_json_text",
                  [](const std::string& text) {
                    return run::RunConfig::from_json(nlohmann::json::parse(text));
                  })
      .def("to_json_text", [](const run::RunConfig& config) { return config.to_json().dump(2); });
  run_mod.def("preset_amplitudes", &run::preset_amplitudes, py::arg("name"), py::arg("n") = 2);
  run_mod.def("run_command", &run::run_command, py::arg("config"));

  m.attr("__version__") = "0.1.0";
}
