#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "msta/hamiltonian.hpp"

namespace msta::run {

// One CLI invocation: command, spin network, initial state, grid and output.
// All times are in units of 1/d of the first dipolar pair.
struct RunConfig {
  std::string command;  // evolve | tides | conserved | oracle-check
  int n = 2;
  HamiltonianSpec hamiltonian{2, {DipolarPair{}}, {}};
  std::string state = "xz";  // preset, ignored when amplitudes are given
  std::vector<std::complex<double>> amplitudes;
  double t_max = 10.0;
  int samples = 201;
  std::string geometry = "equator";  // equator | poles
  std::string out;
  std::uint64_t seed = 0;
  int mc_samples = 0;  // tides: Monte Carlo estimate instead of the closed form

  void validate() const;
  static RunConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

HamiltonianSpec hamiltonian_from_json(const nlohmann::json& j);
nlohmann::json hamiltonian_to_json(const HamiltonianSpec& spec);

// zz, xz, antiparallel-z, xx (documented amplitude lists).
std::vector<std::complex<double>> preset_amplitudes(const std::string& name, int n);

// Worker cap from MSTA_THREADS (0 or unset = hardware concurrency).
int thread_count();

// Each command writes its output atomically (temp file + rename) and
// returns a process exit code.
int run_evolve(const RunConfig& config);
int run_tides(const RunConfig& config);
int run_conserved(const RunConfig& config);
int run_oracle_check(const RunConfig& config, bool flip_propagator_sign = false);
int run_command(const RunConfig& config);

}  // namespace msta::run
