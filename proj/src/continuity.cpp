#include "laxlab/continuity.hpp"

#include <cmath>

#include "laxlab/dynamics.hpp"

namespace laxlab {

RealGrid continuity_residual(const FieldState& state, const ModelParams& p,
                             const GridSpec& spec, ContinuityVariant variant) {
  if (state.size() != spec.n) throw LengthMismatch("continuity_residual: state/spec mismatch");

  const StateDerivative d = rhs(state, p, spec);
  const RealGrid dx_j = dx_central(vector_current(state), spec);
  const RealGrid source_factor =
      2.0 * p.m_f * p.sin_theta0() * (p.beta * state.phi).exp();

  if (variant == ContinuityVariant::adjoint) {
    const RealGrid dt_n = 2.0 * ((state.psi_plus.conjugate() * d.d_psi_plus).real() +
                                 (state.psi_minus.conjugate() * d.d_psi_minus).real());
    return dt_n + dx_j - source_factor * bilinear(state);
  }
  const RealGrid dt_rho = bilinear_time_derivative(state, d);
  return dt_rho + dx_j - source_factor * number_density(state);
}

GrowthLawReport growth_law_check(std::span<const double> t, std::span<const double> n_total,
                                 std::span<const double> source_total) {
  const std::size_t n = t.size();
  if (n != n_total.size() || n != source_total.size()) {
    throw LengthMismatch("growth_law_check: series lengths differ");
  }
  if (n < 3) {
    throw InsufficientSamples("growth_law_check: need at least 3 observer rows, have " +
                              std::to_string(n));
  }

  double source_scale = 0.0;
  for (const double s : source_total) source_scale = std::max(source_scale, std::abs(s));
  const double floor = std::max(source_scale, 1e-30);

  GrowthLawReport rep;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double slope = (n_total[i + 1] - n_total[i - 1]) / (t[i + 1] - t[i - 1]);
    rep.max_rel_mismatch =
        std::max(rep.max_rel_mismatch, std::abs(slope - source_total[i]) / floor);
    ++rep.samples;
  }
  return rep;
}

}  // namespace laxlab
