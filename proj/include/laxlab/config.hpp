#ifndef LAXLAB_CONFIG_HPP
#define LAXLAB_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "laxlab/charges.hpp"
#include "laxlab/fields.hpp"
#include "laxlab/lax.hpp"

namespace laxlab {

struct InitialCondition {
  std::string preset = "vacuum";  // vacuum | homogeneous_phi | gaussian_phi |
                                  // spinor_packet | constrained
  double amplitude = 0.1;
  double width = 1.0;
  double center = 0.0;
  double momentum = 0.0;
  double phi0 = 0.0;
  double phi_t0 = 0.0;
  bool zero_mean = false;
};

struct ObserverConfig {
  int stride = 10;
  int charges_n_max = 0;  // 0 disables charge recording
  bool charges_fermion_substitution = true;
  std::vector<Complex> monodromy_zetas;
  Connection monodromy_connection = Connection::a_x;
  std::vector<Complex> curvature_zetas;
  CurvatureMode curvature_mode = CurvatureMode::analytic();
  bool continuity = false;
  bool gauge_check = false;
};

struct ScenarioConfig {
  ModelParams params;
  GridSpec grid = GridSpec(64, 6.28318530717958648);
  double dt = 0.0;  // defaults to 0.25 * dx
  double t_end = 1.0;
  bool allow_cfl_violation = false;
  InitialCondition initial;
  ObserverConfig observers;
  std::string output_dir = "out";
  std::uint64_t seed = 42;
};

/// Parses the sectioned key = value configuration text.  Unknown keys raise
/// ValidationError; syntax problems raise ParseError with the line number.
/// lambda and mu default to m_s/beta and dt to 0.25*dx when omitted.
ScenarioConfig parse_config(const std::string& text);

/// Emits a config text that parses back to an identical ScenarioConfig.
std::string emit_config(const ScenarioConfig& cfg);

/// Accepts "1", "-2.5", "i", "-i", "2i", "1+2i", "0.5-0.25i".
Complex parse_complex(const std::string& text);
std::string format_complex_brief(Complex z);

FieldState build_initial_state(const InitialCondition& ic, const GridSpec& spec);

}  // namespace laxlab

#endif
