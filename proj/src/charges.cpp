#include "laxlab/charges.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "laxlab/dynamics.hpp"
#include "laxlab/lax.hpp"

namespace laxlab {

namespace {
constexpr Complex kI{0.0, 1.0};
}

AknsSeries akns_build(const ModelParams& p, int n_max) {
  if (n_max < 1) throw InvalidIndex("akns_build: n_max must be >= 1");

  AknsSeries s;
  s.theta0 = p.theta0;
  s.kappa = p.lambda * std::polar(1.0, 0.5 * p.theta0);
  s.L = s.kappa;
  s.R = JetExpr::exponential(p.mu * std::polar(1.0, -0.5 * p.theta0), 1);

  const Complex step = -1.0 / (2.0 * s.kappa);
  s.r.reserve(static_cast<std::size_t>(n_max));
  s.r.push_back(je_scale(1.0 / (2.0 * s.kappa), s.R));
  for (int n = 1; n < n_max; ++n) {
    JetExpr bracket = d_plus(s.r.back(), p.beta);
    JetExpr quad;  // sum_{k=1}^{n-1} r_k r_{n-k}
    for (int k = 1; k <= n - 1; ++k) {
      quad = je_add(quad, je_mul(s.r[static_cast<std::size_t>(k - 1)],
                                 s.r[static_cast<std::size_t>(n - 1 - k)]));
    }
    bracket = je_add(bracket, je_scale(s.L, quad));
    s.r.push_back(je_scale(step, bracket));
  }
  s.rho.reserve(s.r.size());
  for (const auto& rn : s.r) s.rho.push_back(je_scale(s.L, rn));
  return s;
}

JetExpr closed_form_density(int n, const ModelParams& p) {
  const double th = p.theta0;
  switch (n) {
    case 1:
      // (mu/2) e^{-i th/2} e^{+beta phi}; the constant phase is kept rather
      // than absorbed so the form agrees with the recursion at every theta0.
      return JetExpr::exponential(0.5 * p.mu * std::polar(1.0, -0.5 * th), 1);
    case 2: {
      // -(mu beta / 4 lambda) e^{-i th} e^{+beta phi} u1
      const Complex c = -(p.mu * p.beta / (4.0 * p.lambda)) * std::polar(1.0, -th);
      return je_mul(JetExpr::exponential(c, 1), JetExpr::jet(1));
    }
    case 3: {
      // (mu beta e^{-i th} / (8 lambda e^{+i th/2})) (beta u1^2 + u2) e^{+beta phi}
      //   - (mu^2 e^{-2 i th} / (8 lambda)) e^{+2 beta phi}
      const Complex c1 =
          (p.mu * p.beta / (8.0 * p.lambda)) * std::polar(1.0, -th) / std::polar(1.0, 0.5 * th);
      const Complex c2 = -(p.mu * p.mu / (8.0 * p.lambda)) * std::polar(1.0, -2.0 * th);
      JetExpr u1 = JetExpr::jet(1);
      JetExpr scalar_part = je_add(je_scale(p.beta, je_mul(u1, u1)), JetExpr::jet(2));
      return je_add(je_mul(JetExpr::exponential(c1, 1), scalar_part),
                    JetExpr::exponential(c2, 2));
    }
    default:
      throw InvalidIndex("closed_form_density: n must be 1, 2 or 3");
  }
}

PhaseMeasurement measure_density_phase(int n, const JetExpr& rho_base, const JetExpr& rho_def,
                                       double beta, double theta_star, std::uint64_t seed) {
  std::mt19937_64 rng(seed + static_cast<std::uint64_t>(n));
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  constexpr int kSamples = 6;
  constexpr double kRatioTol = 1e-8;
  const int order = std::max(rho_base.max_jet_order(), rho_def.max_jet_order());

  PhaseMeasurement m;
  m.n = n;
  m.pattern_phase = -0.5 * (n - 1) * theta_star;

  std::vector<Complex> ratios;
  for (int sample = 0; sample < kSamples; ++sample) {
    const double phi = 0.5 * unit(rng);
    std::vector<Complex> u(static_cast<std::size_t>(order));
    for (auto& v : u) v = Complex{unit(rng) + 1.5, 0.0};  // bounded away from zero
    const Complex v0 = je_eval(rho_base, beta, phi, u);
    const Complex vt = je_eval(rho_def, beta, phi, u);
    if (std::abs(v0) < 1e-12) continue;
    ratios.push_back(vt / v0);
  }

  Complex mean{0.0, 0.0};
  for (const Complex& r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  double spread = 0.0;
  for (const Complex& r : ratios) spread = std::max(spread, std::abs(r - mean));

  if (spread <= kRatioTol * std::max(std::abs(mean), 1.0)) {
    m.constant_ratio = true;
    m.measured_phase = std::arg(mean);
    m.ratio_magnitude = std::abs(mean);
  } else {
    // per-monomial ratios on matching canonical keys
    m.constant_ratio = false;
    const auto& m0 = rho_base.monomials();
    const auto& mt = rho_def.monomials();
    for (std::size_t i = 0; i < std::min(m0.size(), mt.size()); ++i) {
      if (!key_equal(m0[i], mt[i])) continue;
      const Complex ratio = mt[i].coeff / m0[i].coeff;
      std::string key = "E[" + std::to_string(m0[i].exp_weight) + "]";
      for (const auto& [k, a] : m0[i].powers) {
        key += " u" + std::to_string(k) + (a > 1 ? "^" + std::to_string(a) : "");
      }
      m.per_monomial.emplace_back(key, std::arg(ratio));
    }
  }
  return m;
}

std::vector<PhaseMeasurement> phase_pattern_probe(int n_max, double lambda, double mu,
                                                  double beta, double theta_star,
                                                  std::uint64_t seed) {
  if (n_max < 2) throw InvalidIndex("phase_pattern_probe: n_max must be >= 2");

  ModelParams p0(1.0, 1.0, beta, 1.0, 0.0, lambda, mu);
  ModelParams pt(1.0, 1.0, beta, 1.0, theta_star, lambda, mu);
  const AknsSeries s0 = akns_build(p0, n_max);
  const AknsSeries st = akns_build(pt, n_max);

  std::vector<PhaseMeasurement> out;
  for (int n = 1; n <= n_max; ++n) {
    out.push_back(measure_density_phase(n, s0.rho[static_cast<std::size_t>(n - 1)],
                                        st.rho[static_cast<std::size_t>(n - 1)], beta,
                                        theta_star, seed));
  }
  return out;
}

Complex evaluate_charge(const JetExpr& rho_n, const FieldState& state, const ModelParams& p,
                        const GridSpec& spec, bool fermion_substitution) {
  const int order = rho_n.max_jet_order();
  if (order > 3) {
    throw JetOrderTooLow("evaluate_charge: jets implemented up to u3, density needs u" +
                         std::to_string(order));
  }

  const RealGrid phi_x = dx_central(state.phi, spec);
  RealGrid u1 = 0.5 * (state.phi_t + phi_x);

  RealGrid u2, u3;
  StateDerivative d;
  RealGrid rho, rho_t;
  if (order >= 2 || fermion_substitution) {
    d = rhs(state, p, spec);
    rho = bilinear(state);
    rho_t = bilinear_time_derivative(state, d);
  }
  if (order >= 2) {
    const RealGrid phi_xt = dx_central(state.phi_t, spec);
    u2 = 0.25 * (d.d_phi_t + 2.0 * phi_xt + dxx(state.phi, spec));
  }
  if (order >= 3) {
    // d+^3 phi = (1/8)(phi_ttt + 3 dx phi_tt + 3 dxx phi_t + phi_xxx) with
    // phi_ttt from differentiating the equation of motion in time.
    const RealGrid phi_ttt = dxx(state.phi_t, spec) -
                             p.m_s * p.m_s * (p.beta * state.phi).cosh() * state.phi_t +
                             p.backreaction_coefficient() * rho_t;
    u3 = 0.125 * (phi_ttt + 3.0 * dx_central(d.d_phi_t, spec) + 3.0 * dxx(state.phi_t, spec) +
                  dx_central(dxx(state.phi, spec), spec));
  }

  ComplexGrid cu1 = u1.cast<Complex>();
  ComplexGrid cu2 = order >= 2 ? ComplexGrid(u2.cast<Complex>()) : ComplexGrid();
  if (fermion_substitution) {
    cu1 += kI * rho.cast<Complex>();
    if (order >= 2) {
      const RealGrid dplus_rho = 0.5 * (rho_t + dx_central(rho, spec));
      cu2 += kI * dplus_rho.cast<Complex>();
    }
  }

  Complex sum{0.0, 0.0};
  std::vector<Complex> u(static_cast<std::size_t>(order));
  for (int i = 0; i < spec.n; ++i) {
    if (order >= 1) u[0] = cu1[i];
    if (order >= 2) u[1] = cu2[i];
    if (order >= 3) u[2] = u3[i];
    sum += je_eval(rho_n, p.beta, state.phi[i], u);
  }
  return sum * spec.dx();
}

MonodromyResult monodromy(const FieldState& state, const ModelParams& p, const GridSpec& spec,
                          Complex zeta, Connection connection, bool reverse) {
  const std::vector<LaxPoint> pts = lax_points(state, p, spec, zeta);
  auto cell_matrix = [&](int i) {
    const int j = (i + 1) % spec.n;
    Mat2 ai = pts[static_cast<std::size_t>(i)].a_plus;
    Mat2 aj = pts[static_cast<std::size_t>(j)].a_plus;
    if (connection == Connection::a_x) {
      ai -= pts[static_cast<std::size_t>(i)].a_minus;
      aj -= pts[static_cast<std::size_t>(j)].a_minus;
    }
    return Mat2(0.5 * (ai + aj));  // midpoint rule
  };

  Mat2 t = Mat2::Identity();
  const double dx = spec.dx();
  if (!reverse) {
    for (int i = 0; i < spec.n; ++i) t = mat_exp(Mat2(cell_matrix(i) * dx)) * t;
  } else {
    for (int i = 0; i < spec.n; ++i) t = t * mat_exp(Mat2(cell_matrix(i) * (-dx)));
  }

  MonodromyResult res;
  res.t_matrix = t;
  res.trace = t(0, 0) + t(1, 1);
  res.zeta = zeta;
  res.connection_choice = connection;
  return res;
}

DriftStats drift_stats(std::span<const Complex> series) {
  DriftStats s;
  if (series.empty()) return s;
  const Complex first = series.front();
  for (const Complex& v : series) {
    s.max_abs_drift = std::max(s.max_abs_drift, std::abs(v - first));
    s.max_re_drift = std::max(s.max_re_drift, std::abs(v.real() - first.real()));
    s.max_im_drift = std::max(s.max_im_drift, std::abs(v.imag() - first.imag()));
  }
  const double scale = std::abs(first);
  s.max_rel_drift = scale > 0.0 ? s.max_abs_drift / scale : s.max_abs_drift;
  return s;
}

}  // namespace laxlab
