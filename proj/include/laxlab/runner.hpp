#ifndef LAXLAB_RUNNER_HPP
#define LAXLAB_RUNNER_HPP

#include <string>

#include "laxlab/config.hpp"

namespace laxlab {

// Exit-code contract: 0 success, 1 verification failure, 2 numerical blowup,
// 3 configuration error.

struct VerifyOptions {
  // "" runs the canonical build; "a-minus-sign" injects a deliberate sign
  // error into the A- builder to demonstrate the suite's discriminating power.
  std::string mutation;
};

struct VerifyResult {
  bool pass = true;
  std::string report;  // deterministic for a fixed config + seed
};

VerifyResult run_verify(const ScenarioConfig& cfg, const VerifyOptions& opt = {});

struct SimulationArtifacts {
  int exit_code = 0;
  std::string timeseries_csv;
  std::string final_state_csv;
  std::string report_txt;
};

/// Full simulation with the configured observers.  Does not touch the
/// filesystem; write_simulation persists the artifacts under cfg.output_dir.
SimulationArtifacts run_simulate(const ScenarioConfig& cfg);
int write_simulation(const ScenarioConfig& cfg);

/// Densities in the pretty-printed grammar, one `rho[n] = ...` line per density.
std::string densities_export(const ModelParams& p, int n_max);
/// Writes densities_thetaXX.txt (XX = theta0 in degrees) under cfg.output_dir.
int write_charges(const ScenarioConfig& cfg, int n_max);

/// Verify report plus density listing and recursion-vs-transcription diffs.
std::string build_report(const ScenarioConfig& cfg);
int write_report(const ScenarioConfig& cfg);

}  // namespace laxlab

#endif
