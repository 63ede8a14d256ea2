#include "laxlab/dynamics.hpp"

#include <cmath>
#include <cstdio>

namespace laxlab {

Complex effective_mass(double phi_value, const ModelParams& p) {
  return p.m_f * std::polar(1.0, p.theta0) * std::exp(p.beta * phi_value);
}

StateDerivative rhs(const FieldState& state, const ModelParams& p, const GridSpec& spec) {
  if (state.size() != spec.n) throw LengthMismatch("rhs: state/spec mismatch");

  const RealGrid beta_phi = p.beta * state.phi;
  if (beta_phi.abs().maxCoeff() > 700.0) {
    throw NumericalBlowup("rhs: |beta*phi| > 700, sinh would overflow");
  }

  StateDerivative d;
  d.d_phi = state.phi_t;

  const RealGrid rho = bilinear(state);
  d.d_phi_t = dxx(state.phi, spec) - (p.m_s * p.m_s / p.beta) * beta_phi.sinh() +
              p.backreaction_coefficient() * rho;

  // Pointwise complex mass M = m_f e^{i theta0} e^{beta phi}
  const Complex phase = p.m_f * std::polar(1.0, p.theta0);
  ComplexGrid mass(spec.n);
  for (int i = 0; i < spec.n; ++i) mass[i] = phase * std::exp(beta_phi[i]);

  const ComplexGrid dpsi_p = dx_central(state.psi_plus, spec);
  const ComplexGrid dpsi_m = dx_central(state.psi_minus, spec);
  const Complex iu{0.0, 1.0};
  d.d_psi_plus = -iu * mass * state.psi_plus - dpsi_m;
  d.d_psi_minus = iu * mass * state.psi_minus - dpsi_p;
  return d;
}

RealGrid bilinear_time_derivative(const FieldState& state, const StateDerivative& d) {
  return 2.0 * ((state.psi_plus.conjugate() * d.d_psi_plus).real() -
                (state.psi_minus.conjugate() * d.d_psi_minus).real());
}

namespace {

FieldState add_scaled(const FieldState& s, double c, const StateDerivative& d, double dt_shift) {
  return FieldState(s.t + dt_shift, s.phi + c * d.d_phi, s.phi_t + c * d.d_phi_t,
                    s.psi_plus + c * d.d_psi_plus, s.psi_minus + c * d.d_psi_minus);
}

}  // namespace

FieldState step_rk4(const FieldState& state, double dt, const ModelParams& p,
                    const GridSpec& spec, CflPolicy cfl) {
  if (dt == 0.0) throw ValidationError("time.dt", "must be nonzero");
  if (std::abs(dt) > 0.5 * spec.dx()) {
    if (cfl == CflPolicy::strict) {
      throw CflViolation("step_rk4: |dt| > 0.5*dx");
    }
    static bool warned = false;
    if (!warned) {
      std::fprintf(stderr, "warning: |dt| = %g exceeds the CFL bound 0.5*dx = %g\n",
                   std::abs(dt), 0.5 * spec.dx());
      warned = true;
    }
  }

  const StateDerivative k1 = rhs(state, p, spec);
  const StateDerivative k2 = rhs(add_scaled(state, 0.5 * dt, k1, 0.5 * dt), p, spec);
  const StateDerivative k3 = rhs(add_scaled(state, 0.5 * dt, k2, 0.5 * dt), p, spec);
  const StateDerivative k4 = rhs(add_scaled(state, dt, k3, dt), p, spec);

  const double c = dt / 6.0;
  return FieldState(state.t + dt,
                    state.phi + c * (k1.d_phi + 2.0 * k2.d_phi + 2.0 * k3.d_phi + k4.d_phi),
                    state.phi_t +
                        c * (k1.d_phi_t + 2.0 * k2.d_phi_t + 2.0 * k3.d_phi_t + k4.d_phi_t),
                    state.psi_plus + c * (k1.d_psi_plus + 2.0 * k2.d_psi_plus +
                                          2.0 * k3.d_psi_plus + k4.d_psi_plus),
                    state.psi_minus + c * (k1.d_psi_minus + 2.0 * k2.d_psi_minus +
                                           2.0 * k3.d_psi_minus + k4.d_psi_minus));
}

std::vector<BasicRecord> simulate(
    FieldState state, const ModelParams& p, const GridSpec& spec, double dt, int n_steps,
    int observer_stride,
    const std::function<void(const FieldState&, const BasicRecord&)>& observer, CflPolicy cfl) {
  if (n_steps < 1) throw ValidationError("time.n_steps", "must be >= 1");
  if (observer_stride < 1) observer_stride = 1;

  std::vector<BasicRecord> records;
  auto observe = [&](const FieldState& s) {
    BasicRecord rec{s.t, integrate(number_density(s), spec), integrate(bilinear(s), spec),
                    integrate(vector_current(s), spec)};
    records.push_back(rec);
    if (observer) observer(s, rec);
  };
  auto check_blowup = [&](const FieldState& s) {
    const double m =
        std::max({s.phi.abs().maxCoeff(), s.phi_t.abs().maxCoeff(),
                  s.psi_plus.abs().maxCoeff(), s.psi_minus.abs().maxCoeff()});
    if (!(m < 1e12)) {
      throw NumericalBlowup("simulate: field magnitude " + std::to_string(m) + " at t = " +
                            std::to_string(s.t));
    }
  };

  observe(state);
  for (int step = 1; step <= n_steps; ++step) {
    state = step_rk4(state, dt, p, spec, cfl);
    check_blowup(state);
    if (step % observer_stride == 0 || step == n_steps) observe(state);
  }
  return records;
}

}  // namespace laxlab
