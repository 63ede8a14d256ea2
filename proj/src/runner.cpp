#include "laxlab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <vector>

#include "laxlab/charges.hpp"
#include "laxlab/continuity.hpp"
#include "laxlab/dynamics.hpp"
#include "laxlab/gauge.hpp"
#include "laxlab/lax.hpp"
#include "laxlab/presets.hpp"

namespace laxlab {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* format, ...) {
  char buf[1024];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

struct CheckList {
  bool pass = true;
  std::string text;

  void check(const std::string& name, bool ok, const std::string& detail) {
    text += std::string(ok ? "[PASS] " : "[FAIL] ") + name + ": " + detail + "\n";
    pass = pass && ok;
  }
  void info(const std::string& line) { text += "[INFO] " + line + "\n"; }
};

// Resolution-independent smooth profile for the convergence studies: generic
// low-mode data that solves nothing in particular.
FieldState analytic_profile(const GridSpec& spec) {
  const double L = spec.length;
  RealGrid phi(spec.n), phi_t(spec.n);
  ComplexGrid pp(spec.n), pm(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    const double x = i * spec.dx();
    const double w = 2.0 * kPi * x / L;
    phi[i] = 0.4 * std::sin(w + 0.7) + 0.15 * std::cos(2.0 * w);
    phi_t[i] = 0.3 * std::cos(w) - 0.1 * std::sin(2.0 * w + 0.3);
    pp[i] = Complex{0.3 * std::cos(w + 0.2) + 0.05, 0.2 * std::sin(2.0 * w)};
    pm[i] = Complex{0.25 * std::sin(w + 1.1), 0.15 * std::cos(2.0 * w + 0.4) + 0.1};
  }
  return FieldState(0.0, std::move(phi), std::move(phi_t), std::move(pp), std::move(pm));
}

// Independent transcription of the undeformed coupled system, used as the
// endpoint oracle for the theta0 = 0 reduction.
StateDerivative dsg_reference_rhs(const FieldState& s, const ModelParams& p,
                                  const GridSpec& spec) {
  const int n = spec.n;
  const double dx = spec.dx();
  const double inv2dx = 1.0 / (2.0 * dx);
  const double invdx2 = 1.0 / (dx * dx);
  StateDerivative d;
  d.d_phi = s.phi_t;
  d.d_phi_t.resize(n);
  d.d_psi_plus.resize(n);
  d.d_psi_minus.resize(n);
  for (int i = 0; i < n; ++i) {
    const int ip = (i + 1) % n, im = (i - 1 + n) % n;
    const double lap = invdx2 * (s.phi[ip] - 2.0 * s.phi[i] + s.phi[im]);
    const double rho = std::norm(s.psi_plus[i]) - std::norm(s.psi_minus[i]);
    d.d_phi_t[i] =
        lap - (p.m_s * p.m_s / p.beta) * std::sinh(p.beta * s.phi[i]) + p.g * rho;
    const double m = p.m_f * std::exp(p.beta * s.phi[i]);
    const Complex dxp = inv2dx * (s.psi_plus[ip] - s.psi_plus[im]);
    const Complex dxm = inv2dx * (s.psi_minus[ip] - s.psi_minus[im]);
    d.d_psi_plus[i] = Complex{0.0, -1.0} * m * s.psi_plus[i] - dxm;
    d.d_psi_minus[i] = Complex{0.0, 1.0} * m * s.psi_minus[i] - dxp;
  }
  return d;
}

Mat2 mutated_a_minus(double phi, Complex dminus_phi, double rho, Complex zeta,
                     const ModelParams& p) {
  Mat2 m = build_a_minus(phi, dminus_phi, rho, zeta, p);
  m(1, 0) = p.lambda * std::polar(1.0, 0.5 * p.theta0);  // deliberate conjugation error
  return m;
}

double ls_slope(const std::vector<double>& logx, const std::vector<double>& logy) {
  const std::size_t n = logx.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += logx[i];
    sy += logy[i];
    sxx += logx[i] * logx[i];
    sxy += logx[i] * logy[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string density_phase_block(double theta_star, std::uint64_t seed, const ModelParams& p,
                                int n_max) {
  std::string out;
  const auto probe = phase_pattern_probe(n_max, p.lambda, p.mu, p.beta, theta_star, seed);
  out += fmt("density phase measurements at theta* = %.17g:\n", theta_star);
  for (const auto& m : probe) {
    if (m.constant_ratio) {
      out += fmt("  n=%d measured_phase = %.12f  |ratio| = %.12f  pattern -(n-1)theta*/2 = %.12f\n",
                 m.n, m.measured_phase, m.ratio_magnitude, m.pattern_phase);
    } else {
      out += fmt("  n=%d ratio not constant; per-monomial phases:\n", m.n);
      for (const auto& [key, phase] : m.per_monomial) {
        out += fmt("    %s : %.12f\n", key.c_str(), phase);
      }
    }
  }
  out +=
      "  note: the recursion carries phase -n*theta0/2 per density; the constant-phase\n"
      "  pattern -(n-1)*theta0/2 matches only after absorbing the n=1 phase, and the\n"
      "  explicit n=2 form carries -theta0 as measured.\n";
  return out;
}

std::string rho3_diff_block(const ModelParams& p) {
  const AknsSeries s = akns_build(p, 3);
  const JetExpr printed = closed_form_density(3, p);
  std::string out = fmt("rho3 recursion vs transcription at theta0 = %.17g, lambda = %.17g:\n",
                        p.theta0, p.lambda);
  if (je_close(s.rho[2], printed)) {
    out += "  canonical forms agree\n";
    return out;
  }
  out += "  MISMATCH, per-monomial diff (recursion | transcription):\n";
  const auto& ma = s.rho[2].monomials();
  const auto& mb = printed.monomials();
  std::size_t ia = 0, ib = 0;
  auto key_str = [](const JetMonomial& m) {
    std::string k = "E[" + std::to_string(m.exp_weight) + "]";
    for (const auto& [j, a] : m.powers) {
      k += " u" + std::to_string(j) + (a > 1 ? "^" + std::to_string(a) : "");
    }
    return k;
  };
  while (ia < ma.size() || ib < mb.size()) {
    if (ib >= mb.size() || (ia < ma.size() && key_less(ma[ia], mb[ib]))) {
      out += fmt("    %-18s %s | (absent)\n", key_str(ma[ia]).c_str(),
                 format_complex(ma[ia].coeff).c_str());
      ++ia;
    } else if (ia >= ma.size() || key_less(mb[ib], ma[ia])) {
      out += fmt("    %-18s (absent) | %s\n", key_str(mb[ib]).c_str(),
                 format_complex(mb[ib].coeff).c_str());
      ++ib;
    } else {
      out += fmt("    %-18s %s | %s\n", key_str(ma[ia]).c_str(),
                 format_complex(ma[ia].coeff).c_str(), format_complex(mb[ib].coeff).c_str());
      ++ia;
      ++ib;
    }
  }
  return out;
}

}  // namespace

VerifyResult run_verify(const ScenarioConfig& cfg, const VerifyOptions& opt) {
  CheckList out;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const GridSpec& spec = cfg.grid;
  out.text += fmt("laxlab verify (seed=%llu, n=%d, mutation=%s)\n",
                  static_cast<unsigned long long>(cfg.seed), spec.n,
                  opt.mutation.empty() ? "none" : opt.mutation.c_str());

  const bool mutate = opt.mutation == "a-minus-sign";
  if (!opt.mutation.empty() && !mutate) {
    throw ValidationError("mutation", "unknown mutation '" + opt.mutation + "'");
  }

  // 1. constant-gauge lemma over randomized (state, theta0, zeta) triples
  {
    double defect = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      FieldState s = random_smooth_state(spec, rng);
      ModelParams p = cfg.params;
      p.theta0 = 0.5 * kPi * unit(rng);
      const Complex zeta = std::polar(0.5 + 1.5 * unit(rng), 2.0 * kPi * unit(rng));
      const double d =
          mutate ? verify_gauge_lemma(s, p, spec, zeta, &build_a_plus, &mutated_a_minus)
                 : verify_gauge_lemma(s, p, spec, zeta);
      defect = std::max(defect, d);
    }
    out.text += fmt("gauge_lemma_defect = %.6e\n", defect);
    out.check("gauge_lemma", defect <= 1e-12,
              fmt("max defect %.3e over 100 trials (tol 1e-12)", defect));
  }

  const std::vector<double> thetas = {0.0, kPi / 6.0, kPi / 4.0, kPi / 3.0, kPi / 2.0};
  const std::vector<Complex> probe_zetas = {{0.5, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {0.0, 1.0}};

  // 2. vacuum curvature vanishes for lambda = mu at every theta0 and probe
  {
    const FieldState vac = FieldState::vacuum(spec);
    double worst = 0.0;
    for (double th : thetas) {
      ModelParams p(cfg.params.m_s, cfg.params.m_f, cfg.params.beta, cfg.params.g, th);
      for (const Complex& z : probe_zetas) {
        for (const Mat2& f : curvature_field(vac, p, spec, z, CurvatureMode::analytic())) {
          worst = std::max(worst, f.cwiseAbs().maxCoeff());
        }
      }
    }
    out.check("vacuum_curvature", worst <= 1e-13, fmt("max |F| %.3e (tol 1e-13)", worst));
  }

  // 3. theta0 cancellation in the grade-0 commutator contribution
  {
    const FieldState s = random_smooth_state(spec, rng);
    std::vector<ComplexGrid> grids;
    for (double th : thetas) {
      ModelParams p = cfg.params;
      p.theta0 = th;
      grids.push_back(grade0_commutator_h(s, p, spec));
    }
    double worst = 0.0;
    for (std::size_t i = 1; i < grids.size(); ++i) {
      worst = std::max(worst, (grids[i] - grids[0]).abs().maxCoeff());
    }
    out.check("theta0_cancellation", worst <= 1e-13,
              fmt("max cross-theta0 deviation %.3e (tol 1e-13)", worst));
  }

  // 4. Laurent reassembly and the probe-interpolation cross-check
  {
    const FieldState s = random_smooth_state(spec, rng);
    ModelParams p = cfg.params;
    p.theta0 = kPi / 4.0;
    const auto mode = CurvatureMode::analytic();
    const LaurentGradeCoeffs split = laurent_grade_split(s, p, spec, mode);
    const Complex z{3.0, 0.0};
    const std::vector<Mat2> f = curvature_field(s, p, spec, z, mode);
    double worst = 0.0;
    for (int i = 0; i < spec.n; ++i) {
      worst = std::max(worst,
                       (split.reassemble(i, z) - f[static_cast<std::size_t>(i)])
                           .cwiseAbs()
                           .maxCoeff());
    }
    out.check("laurent_reassembly", worst <= 1e-10,
              fmt("max |reassembled - F(3)| %.3e (tol 1e-10)", worst));

    const LaurentGradeCoeffs via = laurent_split_via_probes(s, p, spec, mode);
    const double cross = slot_linf(split, via).max_diff();
    out.check("laurent_probe_crosscheck", cross <= 1e-10,
              fmt("max slot deviation %.3e (tol 1e-10)", cross));
  }

  // 5. measured-vs-predicted grade coefficients converge at second order
  {
    std::vector<double> logdx, logdiff;
    double ep_z0_rel = 0.0;
    for (int n : {64, 128, 256}) {
      const GridSpec g(n, spec.length);
      const FieldState s = analytic_profile(g);
      ModelParams p = cfg.params;
      p.theta0 = kPi / 3.0;
      const auto mode = CurvatureMode::fd_time(g.dx() / 4.0);
      const LaurentGradeCoeffs split = laurent_grade_split(s, p, g, mode);
      const LaurentGradeCoeffs pred = predicted_coefficients(s, p, g);
      const GradeSlotDiffs d = slot_linf(split, pred);
      logdx.push_back(std::log(g.dx()));
      logdiff.push_back(std::log(d.max_diff()));
      ep_z0_rel = d.ep_z0 / pred.c_ep_z0.abs().maxCoeff();
    }
    const double order = ls_slope(logdx, logdiff);
    out.check("grade_split_convergence", std::abs(order - 2.0) <= 0.3,
              fmt("fitted order %.3f (expect 2.0 +- 0.3)", order));
    out.check("grade_split_ep_z0", ep_z0_rel <= 1e-6,
              fmt("zeta^0 E+ relative deviation %.3e (tol 1e-6)", ep_z0_rel));
  }

  // 6. AKNS recursion vs transcriptions
  {
    ModelParams p0 = cfg.params;
    p0.theta0 = 0.0;
    const AknsSeries s0 = akns_build(p0, 6);
    out.check("akns_rho1_theta0", s0.rho[0] == closed_form_density(1, p0),
              "recursion rho1 equals transcription exactly at theta0=0");
    out.check("akns_rho2_theta0", s0.rho[1] == closed_form_density(2, p0),
              "recursion rho2 equals transcription exactly at theta0=0");

    ModelParams p3 = cfg.params;
    p3.theta0 = kPi / 3.0;
    const AknsSeries s3 = akns_build(p3, 3);
    out.check("akns_rho1_generic", je_close(s3.rho[0], closed_form_density(1, p3)),
              "recursion rho1 matches transcription at theta0=pi/3");
    out.check("akns_rho2_generic", je_close(s3.rho[1], closed_form_density(2, p3)),
              "recursion rho2 matches transcription at theta0=pi/3");
    out.text += rho3_diff_block(p3);
    out.text += rho3_diff_block(p0);

    ModelParams punit(1.0, 1.0, p0.beta, p0.g, 0.0, p0.lambda, 1.0);
    const AknsSeries su = akns_build(punit, 1);
    const Complex v = je_eval(su.rho[0], punit.beta, 0.0, {});
    out.check("akns_rho1_value", v == Complex{0.5, 0.0},
              fmt("rho1(mu=1, phi=0) = %s (expect 0.5 exactly)", format_complex(v).c_str()));

    std::string counts = "akns monomial counts:";
    for (int n = 1; n <= 6; ++n) {
      counts += fmt(" rho%d=%zu", n, s0.rho[static_cast<std::size_t>(n - 1)].size());
    }
    out.info(counts);
  }

  // 7. density phase pattern
  {
    const double theta_star = kPi / 3.0;
    out.text += density_phase_block(theta_star, cfg.seed, cfg.params, 4);
    const auto probe =
        phase_pattern_probe(4, cfg.params.lambda, cfg.params.mu, cfg.params.beta, theta_star,
                            cfg.seed);
    const auto& m2 = probe[1];
    const double err = std::abs(m2.measured_phase - (-theta_star));
    out.check("rho2_phase", m2.constant_ratio && err <= 1e-10,
              fmt("measured %.12f vs -theta* %.12f (|err| %.2e, tol 1e-10)", m2.measured_phase,
                  -theta_star, err));
  }

  // 8. continuity: the adjoint variant is the identity
  {
    ModelParams p = cfg.params;
    p.theta0 = kPi / 4.0;
    std::vector<double> logdx, logres;
    double paper_linf = 0.0, adjoint_linf = 0.0;
    for (int n : {64, 128, 256}) {
      const GridSpec g(n, spec.length);
      const FieldState s = analytic_profile(g);
      const RealGrid res = continuity_residual(s, p, g, ContinuityVariant::adjoint);
      adjoint_linf = res.abs().maxCoeff();
      paper_linf =
          continuity_residual(s, p, g, ContinuityVariant::paper).abs().maxCoeff();
      logdx.push_back(std::log(g.dx()));
      logres.push_back(std::log(adjoint_linf));
    }
    const double order = ls_slope(logdx, logres);
    out.text += fmt("continuity_adjoint_residual_Linf = %.6e\n", adjoint_linf);
    out.text += fmt("continuity_paper_residual_Linf = %.6e\n", paper_linf);
    out.check("continuity_adjoint_order", std::abs(order - 2.0) <= 0.3,
              fmt("adjoint residual order %.3f (expect 2.0 +- 0.3)", order));
    out.info(fmt("paper-variant residual stays finite (%.3e): defect 4 Re(psi-* dx psi+)",
                 paper_linf));

    // spectral-quality solution of the free transport pair: both residuals at rounding
    const GridSpec g(64, 2.0 * kPi);
    ComplexGrid w(g.n);
    for (int i = 0; i < g.n; ++i) w[i] = 0.5 * std::polar(1.0, 3.0 * (i * g.dx()));
    const FieldState plane(0.0, RealGrid::Zero(g.n), RealGrid::Zero(g.n), w, w);
    ModelParams p0 = cfg.params;
    p0.theta0 = 0.0;
    const double r1 =
        continuity_residual(plane, p0, g, ContinuityVariant::adjoint).abs().maxCoeff();
    const double r2 =
        continuity_residual(plane, p0, g, ContinuityVariant::paper).abs().maxCoeff();
    out.check("continuity_transport_null", std::max(r1, r2) <= 1e-12,
              fmt("plane-wave residuals %.3e / %.3e (tol 1e-12)", r1, r2));

    const FieldState s = random_smooth_state(spec, rng);
    const double re_axial = axial_combination(s).real().abs().maxCoeff();
    out.check("axial_imaginary", re_axial == 0.0,
              fmt("max |Re(axial)| = %.3e (expect exact 0)", re_axial));
  }

  // 9. endpoint reductions
  {
    const FieldState s = random_smooth_state(spec, rng);
    ModelParams p0 = cfg.params;
    p0.theta0 = 0.0;
    const StateDerivative a = rhs(s, p0, spec);
    const StateDerivative b = dsg_reference_rhs(s, p0, spec);
    double worst = std::max((a.d_phi_t - b.d_phi_t).abs().maxCoeff(),
                            (a.d_phi - b.d_phi).abs().maxCoeff());
    worst = std::max(worst, (a.d_psi_plus - b.d_psi_plus).abs().maxCoeff());
    worst = std::max(worst, (a.d_psi_minus - b.d_psi_minus).abs().maxCoeff());
    out.check("endpoint_theta0_zero", worst <= 1e-15,
              fmt("rhs vs independent transcription, max entry diff %.3e (tol 1e-15)", worst));

    ModelParams pg0(cfg.params.m_s, cfg.params.m_f, cfg.params.beta, 0.0, kPi / 2.0);
    ModelParams pg1(cfg.params.m_s, cfg.params.m_f, cfg.params.beta, 1.0, kPi / 2.0);
    const StateDerivative d0 = rhs(s, pg0, spec);
    const StateDerivative d1 = rhs(s, pg1, spec);
    bool identical = true;
    for (int i = 0; i < spec.n; ++i) {
      if (d0.d_phi_t[i] != d1.d_phi_t[i]) identical = false;
    }
    out.check("endpoint_theta0_half_pi", identical,
              "scalar rhs bit-identical between g=0 and g=1 at theta0=pi/2");
  }

  out.text += std::string("overall: ") + (out.pass ? "PASS" : "FAIL") + "\n";
  return VerifyResult{out.pass, out.text};
}

// ---------------------------------------------------------------------------
// simulation driver

namespace {

struct ObserverRow {
  double t = 0;
  double n_total = 0, rho_total = 0, j_total = 0, backreaction_total = 0;
  std::vector<Complex> charges;
  std::vector<Complex> tr_t;
  std::vector<double> det_err;
  double curvature_linf = 0, residual_budget = 0;
  double continuity_adjoint = 0, continuity_paper = 0, anomaly_source = 0;
  double gauge_defect = 0;
};

std::string timeseries_header(const ObserverConfig& oc) {
  std::string h = "t,n_total,rho_total,J_total,backreaction_total";
  for (int n = 1; n <= oc.charges_n_max; ++n) {
    h += fmt(",re_I%d,im_I%d", n, n);
  }
  for (std::size_t k = 1; k <= oc.monodromy_zetas.size(); ++k) {
    h += fmt(",re_trT%zu,im_trT%zu,det_err%zu", k, k, k);
  }
  if (!oc.curvature_zetas.empty()) h += ",curvature_linf,residual_budget";
  if (oc.continuity) h += ",continuity_adjoint_Linf,continuity_paper_Linf,anomaly_source_total";
  if (oc.gauge_check) h += ",gauge_defect";
  return h + "\n";
}

std::string timeseries_row(const ObserverRow& r, const ObserverConfig& oc) {
  std::string s = fmt("%.17g,%.17g,%.17g,%.17g,%.17g", r.t, r.n_total, r.rho_total, r.j_total,
                      r.backreaction_total);
  for (const Complex& c : r.charges) s += fmt(",%.17g,%.17g", c.real(), c.imag());
  for (std::size_t k = 0; k < r.tr_t.size(); ++k) {
    s += fmt(",%.17g,%.17g,%.17g", r.tr_t[k].real(), r.tr_t[k].imag(), r.det_err[k]);
  }
  if (!oc.curvature_zetas.empty()) s += fmt(",%.17g,%.17g", r.curvature_linf, r.residual_budget);
  if (oc.continuity) {
    s += fmt(",%.17g,%.17g,%.17g", r.continuity_adjoint, r.continuity_paper, r.anomaly_source);
  }
  if (oc.gauge_check) s += fmt(",%.17g", r.gauge_defect);
  return s + "\n";
}

}  // namespace

SimulationArtifacts run_simulate(const ScenarioConfig& cfg) {
  SimulationArtifacts art;
  const ObserverConfig& oc = cfg.observers;
  const GridSpec& spec = cfg.grid;
  const ModelParams& p = cfg.params;

  FieldState initial = build_initial_state(cfg.initial, spec);
  const int n_steps = std::max(1, static_cast<int>(std::llround(cfg.t_end / cfg.dt)));

  AknsSeries series;
  if (oc.charges_n_max > 0) series = akns_build(p, oc.charges_n_max);

  std::vector<ObserverRow> rows;
  double budget = 0.0;
  double prev_t = 0.0, prev_linf = 0.0;

  auto observer = [&](const FieldState& s, const BasicRecord& rec) {
    ObserverRow row;
    row.t = rec.t;
    row.n_total = rec.n_total;
    row.rho_total = rec.rho_total;
    row.j_total = rec.j_total;
    row.backreaction_total = p.backreaction_coefficient() * rec.rho_total + 0.0;
    for (int n = 1; n <= oc.charges_n_max; ++n) {
      row.charges.push_back(evaluate_charge(series.rho[static_cast<std::size_t>(n - 1)], s, p,
                                            spec, oc.charges_fermion_substitution));
    }
    for (const Complex& z : oc.monodromy_zetas) {
      const MonodromyResult m = monodromy(s, p, spec, z, oc.monodromy_connection);
      row.tr_t.push_back(m.trace);
      const Complex det = m.t_matrix(0, 0) * m.t_matrix(1, 1) - m.t_matrix(0, 1) * m.t_matrix(1, 0);
      row.det_err.push_back(std::abs(det - Complex{1.0, 0.0}));
    }
    if (!oc.curvature_zetas.empty()) {
      double linf = 0.0;
      for (const Complex& z : oc.curvature_zetas) {
        for (const Mat2& f : curvature_field(s, p, spec, z, oc.curvature_mode)) {
          linf = std::max(linf, f.cwiseAbs().maxCoeff());
        }
      }
      row.curvature_linf = linf;
      if (!rows.empty()) budget += 0.5 * (linf + prev_linf) * (rec.t - prev_t);
      row.residual_budget = budget;
      prev_linf = linf;
      prev_t = rec.t;
    }
    if (oc.continuity) {
      row.continuity_adjoint =
          continuity_residual(s, p, spec, ContinuityVariant::adjoint).abs().maxCoeff();
      row.continuity_paper =
          continuity_residual(s, p, spec, ContinuityVariant::paper).abs().maxCoeff();
      row.anomaly_source =
          2.0 * p.m_f * p.sin_theta0() *
          integrate(RealGrid((p.beta * s.phi).exp() * bilinear(s)), spec);
    }
    if (oc.gauge_check) {
      row.gauge_defect = verify_gauge_lemma(s, p, spec, Complex{1.0, 0.0});
    }
    rows.push_back(std::move(row));
  };

  FieldState final_state = initial;
  try {
    simulate(initial, p, spec, cfg.dt, n_steps, oc.stride,
             [&](const FieldState& s, const BasicRecord& rec) {
               observer(s, rec);
               final_state = s;
             },
             cfg.allow_cfl_violation ? CflPolicy::warn : CflPolicy::strict);
  } catch (const NumericalBlowup& e) {
    art.exit_code = 2;
    art.report_txt = std::string("numerical blowup: ") + e.what() + "\n";
    return art;
  }

  art.timeseries_csv = timeseries_header(oc);
  for (const ObserverRow& r : rows) art.timeseries_csv += timeseries_row(r, oc);
  art.final_state_csv = snapshot_csv(final_state, spec);

  // summary report
  std::string rep;
  rep += fmt("simulation: steps=%d dt=%.17g t_end=%.17g theta0=%.17g\n", n_steps, cfg.dt,
             cfg.t_end, p.theta0);
  {
    std::vector<Complex> nn;
    for (const auto& r : rows) nn.emplace_back(r.n_total, 0.0);
    const DriftStats ds = drift_stats(nn);
    rep += fmt("n_total: first=%.12e max_rel_drift=%.6e\n", rows.front().n_total,
               ds.max_rel_drift);
  }
  for (int n = 1; n <= oc.charges_n_max; ++n) {
    std::vector<Complex> series_n;
    for (const auto& r : rows) series_n.push_back(r.charges[static_cast<std::size_t>(n - 1)]);
    const DriftStats ds = drift_stats(series_n);
    rep += fmt("I%d: first=%s abs_drift=%.6e re_drift=%.6e im_drift=%.6e\n", n,
               format_complex(series_n.front()).c_str(), ds.max_abs_drift, ds.max_re_drift,
               ds.max_im_drift);
  }
  for (std::size_t k = 0; k < oc.monodromy_zetas.size(); ++k) {
    std::vector<Complex> tr;
    double max_det_err = 0.0;
    for (const auto& r : rows) {
      tr.push_back(r.tr_t[k]);
      max_det_err = std::max(max_det_err, r.det_err[k]);
    }
    const DriftStats ds = drift_stats(tr);
    rep += fmt("trT(zeta=%s): first=%s rel_drift=%.6e re_drift=%.6e im_drift=%.6e "
               "max_det_err=%.3e\n",
               format_complex_brief(oc.monodromy_zetas[k]).c_str(),
               format_complex(tr.front()).c_str(), ds.max_rel_drift, ds.max_re_drift,
               ds.max_im_drift, max_det_err);
    if (!oc.curvature_zetas.empty()) {
      const double drift = ds.max_abs_drift;
      const double allowance = 10.0 * rows.back().residual_budget;
      rep += fmt("  conservation monitor: drift %.6e vs 10 x integrated residual %.6e (%s)\n",
                 drift, allowance, drift <= allowance ? "within budget" : "EXCEEDS budget");
    }
  }
  if (oc.continuity) {
    rep += fmt("continuity_adjoint_residual_Linf = %.6e\n", rows.back().continuity_adjoint);
    rep += fmt("continuity_paper_residual_Linf = %.6e\n", rows.back().continuity_paper);
    if (rows.size() >= 3) {
      std::vector<double> t, ntot, src;
      for (const auto& r : rows) {
        t.push_back(r.t);
        ntot.push_back(r.n_total);
        src.push_back(r.anomaly_source);
      }
      const GrowthLawReport gl = growth_law_check(t, ntot, src);
      rep += fmt("growth_law_mismatch_rel = %.6e\n", gl.max_rel_mismatch);
    }
  }
  if (oc.gauge_check) {
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, r.gauge_defect);
    rep += fmt("gauge_lemma_defect = %.6e\n", worst);
  }
  if (!oc.curvature_zetas.empty()) {
    rep += curvature_report(final_state, p, spec, oc.curvature_zetas, oc.curvature_mode)
               .summary();
  }
  art.report_txt = rep;
  return art;
}

int write_simulation(const ScenarioConfig& cfg) {
  const SimulationArtifacts art = run_simulate(cfg);
  std::filesystem::create_directories(cfg.output_dir);
  auto write = [&](const char* name, const std::string& body) {
    std::ofstream f(std::filesystem::path(cfg.output_dir) / name, std::ios::binary);
    f << body;
  };
  if (art.exit_code == 0) {
    write("timeseries.csv", art.timeseries_csv);
    write("final_state.csv", art.final_state_csv);
  }
  write("report.txt", art.report_txt);
  return art.exit_code;
}

std::string densities_export(const ModelParams& p, int n_max) {
  const AknsSeries s = akns_build(p, n_max);
  std::string out;
  out += fmt("# conserved densities, theta0 = %.17g, lambda = %.17g, mu = %.17g, beta = %.17g\n",
             p.theta0, p.lambda, p.mu, p.beta);
  out += "# grammar: coeff * E[q] * u1^a1 * u2^a2 ...\n";
  for (int n = 1; n <= n_max; ++n) {
    out += fmt("rho[%d] = %s\n", n, s.rho[static_cast<std::size_t>(n - 1)].str().c_str());
  }
  return out;
}

int write_charges(const ScenarioConfig& cfg, int n_max) {
  const std::string body = densities_export(cfg.params, n_max);
  std::filesystem::create_directories(cfg.output_dir);
  const int deg = static_cast<int>(std::llround(cfg.params.theta0 * 180.0 / kPi));
  const std::string name = fmt("densities_theta%02d.txt", deg);
  std::ofstream f(std::filesystem::path(cfg.output_dir) / name, std::ios::binary);
  f << body;
  return 0;
}

std::string build_report(const ScenarioConfig& cfg) {
  const VerifyResult vr = run_verify(cfg);
  std::string out = vr.report;
  out += "\n";
  out += densities_export(cfg.params, 4);
  out += "\n";
  out += rho3_diff_block(cfg.params);
  // lambda != 1 exposes the coefficient (not just phase) discrepancy
  const ModelParams off_unity(cfg.params.m_s, cfg.params.m_f, cfg.params.beta, cfg.params.g,
                              cfg.params.theta0, 1.5, cfg.params.mu);
  out += rho3_diff_block(off_unity);
  return out;
}

int write_report(const ScenarioConfig& cfg) {
  const VerifyResult vr = run_verify(cfg);
  std::string body = build_report(cfg);
  std::filesystem::create_directories(cfg.output_dir);
  std::ofstream f(std::filesystem::path(cfg.output_dir) / "report.txt", std::ios::binary);
  f << body;
  return vr.pass ? 0 : 1;
}

}  // namespace laxlab
