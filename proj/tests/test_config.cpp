#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "laxlab/config.hpp"

using namespace laxlab;

TEST_CASE("minimal config applies defaults") {
  const std::string text =
      "[params]\n"
      "m_s = 2.0\n"
      "beta = 4.0\n"
      "[grid]\n"
      "n = 128\n"
      "length = 8.0\n"
      "[time]\n"
      "t_end = 1.0\n";
  const ScenarioConfig cfg = parse_config(text);
  CHECK(cfg.params.m_s == 2.0);
  CHECK(cfg.params.lambda == 0.5);  // m_s / beta
  CHECK(cfg.params.mu == 0.5);
  CHECK(cfg.grid.n == 128);
  CHECK(cfg.dt == 0.25 * cfg.grid.dx());
  CHECK(cfg.seed == 42);
}

TEST_CASE("validation: theta0 range and CFL") {
  CHECK_THROWS_WITH_AS(parse_config("[params]\ntheta0 = 2.0\n"),
                       doctest::Contains("params.theta0"), ValidationError);

  const std::string cfl =
      "[grid]\nn = 64\nlength = 6.4\n[time]\ndt = 0.09\nt_end = 1.0\n";
  CHECK_THROWS_WITH_AS(parse_config(cfl), doctest::Contains("time.dt"), ValidationError);
  CHECK_NOTHROW(parse_config(cfl + "allow_cfl_violation = true\n"));
}

TEST_CASE("parse errors carry line numbers; unknown keys are named") {
  try {
    parse_config("[params]\nm_s = 1.0\nbogus line without equals\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
  CHECK_THROWS_WITH_AS(parse_config("[params]\nmass = 1.0\n"),
                       doctest::Contains("params.mass"), ValidationError);
}

TEST_CASE("emit-then-parse round-trips the configuration") {
  const std::string text =
      "seed = 7\n"
      "[params]\n"
      "m_s = 1.5\nm_f = 0.5\nbeta = 2.0\ng = 0.3\ntheta0 = 0.7853981633974483\n"
      "[grid]\n"
      "n = 96\nlength = 12.0\nfd_order = 4\n"
      "[time]\n"
      "dt = 0.03\nt_end = 2.0\n"
      "[initial]\n"
      "preset = \"spinor_packet\"\namplitude = 0.4\nwidth = 1.2\ncenter = 6.0\nmomentum = 2.0\n"
      "[observers]\n"
      "stride = 5\ncharges_n_max = 3\nmonodromy_zetas = [\"1\", \"2i\", \"1+1i\"]\n"
      "monodromy_connection = \"a_plus\"\ncurvature_zetas = [\"1\"]\n"
      "curvature_mode = \"fd_time\"\ncurvature_dt_probe = 0.001\ncontinuity = true\n"
      "gauge_check = true\n"
      "[output]\n"
      "dir = \"run1\"\n";
  const ScenarioConfig a = parse_config(text);
  const std::string emitted = emit_config(a);
  const ScenarioConfig b = parse_config(emitted);
  CHECK(emit_config(b) == emitted);

  CHECK(b.params.theta0 == a.params.theta0);
  CHECK(b.grid.fd_order == 4);
  CHECK(b.observers.monodromy_zetas.size() == 3);
  CHECK(b.observers.monodromy_zetas[1] == Complex{0.0, 2.0});
  CHECK(b.observers.monodromy_zetas[2] == Complex{1.0, 1.0});
  CHECK(b.observers.monodromy_connection == Connection::a_plus);
  CHECK(b.observers.curvature_mode.kind == CurvatureMode::Kind::fd_time);
  CHECK(b.seed == 7);
  CHECK(b.output_dir == "run1");
}

TEST_CASE("complex literal parsing") {
  CHECK(parse_complex("1") == Complex{1.0, 0.0});
  CHECK(parse_complex("-2.5") == Complex{-2.5, 0.0});
  CHECK(parse_complex("i") == Complex{0.0, 1.0});
  CHECK(parse_complex("-i") == Complex{0.0, -1.0});
  CHECK(parse_complex("2i") == Complex{0.0, 2.0});
  CHECK(parse_complex("1+2i") == Complex{1.0, 2.0});
  CHECK(parse_complex("0.5-0.25i") == Complex{0.5, -0.25});
  CHECK(parse_complex("2e-3i") == Complex{0.0, 2e-3});
  CHECK(parse_complex("1e2+1e-2i") == Complex{100.0, 0.01});
}

TEST_CASE("initial state presets") {
  GridSpec spec(64, 8.0);
  InitialCondition ic;
  ic.preset = "gaussian_phi";
  ic.amplitude = 0.5;
  ic.width = 1.0;
  ic.center = 4.0;
  const FieldState bump = build_initial_state(ic, spec);
  CHECK(bump.phi.maxCoeff() == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(bump.psi_plus.abs().maxCoeff() == 0.0);

  ic.preset = "constrained";
  ic.phi0 = 0.3;
  const FieldState cons = build_initial_state(ic, spec);
  CHECK((cons.psi_plus - cons.psi_minus).abs().maxCoeff() == 0.0);

  ic.preset = "no_such_preset";
  CHECK_THROWS_AS(build_initial_state(ic, spec), ValidationError);
}

TEST_CASE("comments and blank lines are tolerated") {
  const std::string text =
      "# full-line comment\n"
      "\n"
      "[params]  # trailing section comment\n"
      "m_s = 1.0  # trailing comment\n";
  CHECK_NOTHROW(parse_config(text));
}
