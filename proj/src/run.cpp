#include "msta/run.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <thread>

#include "msta/density.hpp"
#include "msta/dynamics.hpp"
#include "msta/oracle.hpp"
#include "msta/spin.hpp"
#include "msta/symmetry.hpp"

namespace msta::run {

namespace {

Vec3 axis_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("axis must be a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, target);
}

void emit(const RunConfig& config, const std::string& content) {
  if (config.out.empty())
    std::cout << content;
  else
    write_atomic(config.out, content);
}

// Time grid in units of 1/d and the physical-time divisor.
std::vector<double> time_grid(const RunConfig& config) {
  std::vector<double> grid(config.samples);
  for (int i = 0; i < config.samples; ++i)
    grid[i] = config.t_max * static_cast<double>(i) / (config.samples - 1);
  return grid;
}

double reference_rate(const HamiltonianSpec& spec) {
  if (!spec.pairs.empty() && spec.pairs[0].d != 0.0) return spec.pairs[0].d;
  return 1.0;
}

Spinor initial_state(const RunConfig& config) {
  if (!config.amplitudes.empty()) return Spinor::from_amplitudes(config.amplitudes);
  return Spinor::from_amplitudes(preset_amplitudes(config.state, config.n));
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const int workers = std::min<std::size_t>(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

void RunConfig::validate() const {
  hamiltonian.validate();
  if (n != hamiltonian.n) throw std::invalid_argument("config n must match the hamiltonian");
  if (samples < 2) throw std::invalid_argument("samples must be at least 2");
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  if (geometry != "equator" && geometry != "poles")
    throw std::invalid_argument("geometry must be equator or poles");
  if (mc_samples < 0) throw std::invalid_argument("mc_samples must be nonnegative");
  if (amplitudes.empty()) preset_amplitudes(state, n);  // throws on unknown preset
}

HamiltonianSpec hamiltonian_from_json(const nlohmann::json& j) {
  HamiltonianSpec spec;
  spec.n = j.value("n", 2);
  spec.pairs.clear();
  for (const auto& p : j.value("pairs", nlohmann::json::array())) {
    DipolarPair pair;
    pair.a = p.at("a").get<int>();
    pair.b = p.at("b").get<int>();
    pair.d = p.at("d").get<double>();
    if (p.contains("axis")) pair.axis = axis_from_json(p["axis"]);
    spec.pairs.push_back(pair);
  }
  for (const auto& z : j.value("zeeman", nlohmann::json::array())) {
    ZeemanTerm term;
    term.a = z.at("a").get<int>();
    term.rate = z.at("rate").get<double>();
    if (z.contains("axis")) term.axis = axis_from_json(z["axis"]);
    spec.zeeman.push_back(term);
  }
  return spec;
}

nlohmann::json hamiltonian_to_json(const HamiltonianSpec& spec) {
  nlohmann::json j;
  j["n"] = spec.n;
  j["pairs"] = nlohmann::json::array();
  for (const auto& p : spec.pairs)
    j["pairs"].push_back({{"a", p.a}, {"b", p.b}, {"d", p.d}, {"axis", p.axis}});
  j["zeeman"] = nlohmann::json::array();
  for (const auto& z : spec.zeeman)
    j["zeeman"].push_back({{"a", z.a}, {"axis", z.axis}, {"rate", z.rate}});
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig config;
  config.command = j.value("command", std::string{});
  config.n = j.value("n", 2);
  if (j.contains("hamiltonian")) {
    config.hamiltonian = hamiltonian_from_json(j["hamiltonian"]);
    if (!j["hamiltonian"].contains("n")) config.hamiltonian.n = config.n;
  } else {
    config.hamiltonian = HamiltonianSpec{config.n, {DipolarPair{}}, {}};
  }
  if (j.contains("state")) {
    if (j["state"].is_string()) {
      config.state = j["state"].get<std::string>();
    } else {
      for (const auto& amp : j["state"])
        config.amplitudes.emplace_back(amp.at(0).get<double>(), amp.at(1).get<double>());
    }
  }
  config.t_max = j.value("t_max", 10.0);
  config.samples = j.value("samples", 201);
  config.geometry = j.value("geometry", std::string{"equator"});
  config.out = j.value("out", std::string{});
  config.seed = j.value("seed", std::uint64_t{0});
  config.mc_samples = j.value("mc_samples", 0);
  return config;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["n"] = n;
  j["hamiltonian"] = hamiltonian_to_json(hamiltonian);
  if (amplitudes.empty()) {
    j["state"] = state;
  } else {
    auto arr = nlohmann::json::array();
    for (const auto& a : amplitudes) arr.push_back({a.real(), a.imag()});
    j["state"] = arr;
  }
  j["t_max"] = t_max;
  j["samples"] = samples;
  j["geometry"] = geometry;
  j["out"] = out;
  j["seed"] = seed;
  j["mc_samples"] = mc_samples;
  return j;
}

std::vector<std::complex<double>> preset_amplitudes(const std::string& name, int n) {
  if (n != 2) throw std::invalid_argument("state presets are defined for n = 2");
  const double s = 1.0 / std::sqrt(2.0);
  if (name == "zz") return {1, 0, 0, 0};
  if (name == "xz") return {s, 0, s, 0};
  if (name == "antiparallel-z") return {0, 0, 1, 0};
  if (name == "xx") return {0.5, 0.5, 0.5, 0.5};
  throw std::invalid_argument("unknown state preset: " + name);
}

int thread_count() {
  const char* env = std::getenv("MSTA_THREADS");
  long value = 0;
  if (env != nullptr) value = std::strtol(env, nullptr, 10);
  if (value <= 0) value = static_cast<long>(std::thread::hardware_concurrency());
  return std::max(1L, value);
}

int run_evolve(const RunConfig& config) {
  config.validate();
  if (config.n != 2) throw std::invalid_argument("evolve emits the two-spin CSV schema (n = 2)");
  const Spinor psi0 = initial_state(config);
  const CMultivector h = hamiltonian_op(config.hamiltonian);
  const double d_ref = reference_rate(config.hamiltonian);
  const std::vector<double> grid = time_grid(config);

  std::vector<std::string> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const Spinor psi = evolve_spinor(psi0, h, grid[i] / d_ref);
    const SpinObservables obs = spin_bivector(psi);
    const double energy = energy_expectation(h, psi) / d_ref;
    std::string row = format_double(grid[i]);
    for (int a = 0; a < 2; ++a)
      for (int k = 0; k < 3; ++k) row += "," + format_double(obs.polarization[a][k]);
    row += "," + format_double(obs.polarization_norm[0]);
    row += "," + format_double(obs.polarization_norm[1]);
    row += "," + format_double(obs.angle[0]);
    row += "," + format_double(energy);
    rows[i] = row + "\n";
  });

  std::string csv = "t,p1x,p1y,p1z,p2x,p2y,p2z,norm1,norm2,theta,energy\n";
  for (const auto& row : rows) csv += row;
  emit(config, csv);
  return 0;
}

int run_tides(const RunConfig& config) {
  config.validate();
  const TidesGeometry geometry =
      config.geometry == "poles" ? TidesGeometry::kPoles : TidesGeometry::kEquator;
  const std::vector<double> grid = time_grid(config);

  std::vector<TidesRow> rows;
  if (config.mc_samples > 0) {
    rows.resize(grid.size());
    // Pre-assigned slots and per-row derived seeds keep the output
    // independent of scheduling.
    parallel_for(grid.size(), [&](std::size_t i) {
      rows[i] = tides_row_sampled(geometry, grid[i], config.mc_samples,
                                  derive_seed(config.seed, i));
    });
  } else {
    rows = tides_scan(geometry, grid);
  }

  std::string csv = "t,signed_length,entropy_bits\n";
  for (const auto& row : rows)
    csv += format_double(row.t) + "," + format_double(row.signed_length) + "," +
           format_double(row.entropy_bits) + "\n";
  emit(config, csv);
  return 0;
}

int run_conserved(const RunConfig& config) {
  config.validate();
  if (config.n != 2) throw std::invalid_argument("conserved report requires n = 2");
  const Spinor psi0 = initial_state(config);
  const CMultivector h = hamiltonian_op(config.hamiltonian);
  const double d_ref = reference_rate(config.hamiltonian);

  std::vector<ConservedQuantity> quantities = conserved_set_two_spin(d_ref);
  // Tie the energy charge to the configured network rather than the
  // canonical z-axis pair.
  for (auto& q : quantities)
    if (q.name == "energy") {
      const CMultivector gen{-h.minus(), -h.plus()};  // -j H
      q.generator = gen;
      q.charge = [gen](const Spinor& psi) {
        return noether_charge(psi, apply_generator(gen, psi));
      };
    }

  const std::vector<double> grid = time_grid(config);
  std::vector<double> initial(quantities.size());
  std::vector<double> drift(quantities.size(), 0.0);
  for (std::size_t qi = 0; qi < quantities.size(); ++qi)
    initial[qi] = quantities[qi].charge(psi0);
  for (const double t : grid) {
    const Spinor psi = evolve_spinor(psi0, h, t / d_ref);
    for (std::size_t qi = 0; qi < quantities.size(); ++qi)
      drift[qi] = std::max(drift[qi], std::abs(quantities[qi].charge(psi) - initial[qi]));
  }

  nlohmann::json report;
  report["quantities"] = nlohmann::json::array();
  for (std::size_t qi = 0; qi < quantities.size(); ++qi)
    report["quantities"].push_back({{"name", quantities[qi].name},
                                    {"initial", initial[qi]},
                                    {"max_drift", drift[qi]}});
  report["commutant_dimension"] = commutant_dimension(h);
  emit(config, report.dump(2) + "\n");
  return 0;
}

int run_oracle_check(const RunConfig& config, bool flip_propagator_sign) {
  config.validate();
  oracle::CheckOptions options;
  options.seed = config.seed;
  options.flip_propagator_sign = flip_propagator_sign;
  const auto results = oracle::run_checks(config.hamiltonian, options);

  nlohmann::json report;
  report["checks"] = nlohmann::json::array();
  for (const auto& r : results)
    report["checks"].push_back({{"name", r.name},
                                {"max_deviation", r.deviation},
                                {"tolerance", r.tolerance},
                                {"pass", r.pass}});
  report["pass"] = oracle::all_pass(results);
  emit(config, report.dump(2) + "\n");
  return oracle::all_pass(results) ? 0 : 1;
}

int run_command(const RunConfig& config) {
  if (config.command == "evolve") return run_evolve(config);
  if (config.command == "tides") return run_tides(config);
  if (config.command == "conserved") return run_conserved(config);
  if (config.command == "oracle-check") return run_oracle_check(config);
  throw std::invalid_argument("unknown command: " + config.command);
}

}  // namespace msta::run
