#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "laxlab/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw laxlab::ValidationError("config", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Overrides {
  std::optional<double> theta0;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir;
};

laxlab::ScenarioConfig load_config(const std::string& path, const Overrides& ov) {
  laxlab::ScenarioConfig cfg =
      path.empty() ? laxlab::ScenarioConfig{} : laxlab::parse_config(read_file(path));
  if (ov.theta0) {
    laxlab::ModelParams& p = cfg.params;
    cfg.params = laxlab::ModelParams(p.m_s, p.m_f, p.beta, p.g, *ov.theta0, p.lambda, p.mu);
  }
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.output_dir) cfg.output_dir = *ov.output_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"laxlab: verification laboratory for a one-parameter deformed "
               "Dirac-sinh-Gordon system"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;
  double theta0_flag = 0.0;
  std::uint64_t seed_flag = 0;
  std::string outdir_flag;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "configuration file");
    sub->add_option("--theta0", theta0_flag, "override params.theta0");
    sub->add_option("--seed", seed_flag, "override the suite seed");
    sub->add_option("--output-dir", outdir_flag, "override output.dir");
  };
  auto fill_overrides = [&](CLI::App* sub) {
    if (sub->count("--theta0")) ov.theta0 = theta0_flag;
    if (sub->count("--seed")) ov.seed = seed_flag;
    if (sub->count("--output-dir")) ov.output_dir = outdir_flag;
  };

  CLI::App* verify = app.add_subcommand("verify", "run the randomized identity suites");
  std::string mutation;
  add_common(verify);
  verify->add_option("--mutate", mutation,
                     "inject a deliberate defect (a-minus-sign) to demonstrate sensitivity");

  CLI::App* simulate = app.add_subcommand("simulate", "run a full simulation with observers");
  add_common(simulate);

  CLI::App* charges = app.add_subcommand("charges", "export symbolic conserved densities");
  int n_max = 6;
  add_common(charges);
  charges->add_option("--n-max", n_max, "highest density order to export");

  CLI::App* report = app.add_subcommand("report", "write the combined verification report");
  add_common(report);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      fill_overrides(verify);
      const laxlab::ScenarioConfig cfg = load_config(config_path, ov);
      const laxlab::VerifyResult res = laxlab::run_verify(cfg, laxlab::VerifyOptions{mutation});
      std::fputs(res.report.c_str(), stdout);
      return res.pass ? 0 : 1;
    }
    if (simulate->parsed()) {
      fill_overrides(simulate);
      const laxlab::ScenarioConfig cfg = load_config(config_path, ov);
      const int code = laxlab::write_simulation(cfg);
      if (code == 0) {
        std::printf("wrote %s/timeseries.csv, final_state.csv, report.txt\n",
                    cfg.output_dir.c_str());
      } else {
        std::fprintf(stderr, "simulation aborted (exit %d), see %s/report.txt\n", code,
                     cfg.output_dir.c_str());
      }
      return code;
    }
    if (charges->parsed()) {
      fill_overrides(charges);
      const laxlab::ScenarioConfig cfg = load_config(config_path, ov);
      const int code = laxlab::write_charges(cfg, n_max);
      std::fputs(laxlab::densities_export(cfg.params, n_max).c_str(), stdout);
      return code;
    }
    if (report->parsed()) {
      fill_overrides(report);
      const laxlab::ScenarioConfig cfg = load_config(config_path, ov);
      const int code = laxlab::write_report(cfg);
      std::printf("wrote %s/report.txt\n", cfg.output_dir.c_str());
      return code;
    }
  } catch (const laxlab::ParseError& e) {
    std::fprintf(stderr, "config parse error: %s\n", e.what());
    return 3;
  } catch (const laxlab::ValidationError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 3;
  } catch (const laxlab::NumericalBlowup& e) {
    std::fprintf(stderr, "numerical blowup: %s\n", e.what());
    return 2;
  }
  return 0;
}
