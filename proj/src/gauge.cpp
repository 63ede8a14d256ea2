#include "laxlab/gauge.hpp"

#include <cmath>

#include "laxlab/lax.hpp"

namespace laxlab {

Mat2 h_matrix(double theta) {
  Mat2 h = Mat2::Zero();
  h(0, 0) = std::polar(1.0, -0.25 * theta);
  h(1, 1) = std::polar(1.0, 0.25 * theta);
  return h;
}

Mat2 conjugate(const Mat2& h, const Mat2& m) {
  const Complex det = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
  if (std::abs(det) < 1e-14) throw SingularMatrix("conjugate: h is singular");
  Mat2 inv;
  inv << h(1, 1), -h(0, 1), -h(1, 0), h(0, 0);
  inv /= det;
  return inv * m * h;
}

double verify_gauge_lemma(const FieldState& state, const ModelParams& p, const GridSpec& spec,
                          Complex zeta) {
  return verify_gauge_lemma(state, p, spec, zeta, &build_a_plus, &build_a_minus);
}

double verify_gauge_lemma(const FieldState& state, const ModelParams& p, const GridSpec& spec,
                          Complex zeta, const LaxBuilder& plus, const LaxBuilder& minus) {
  if (zeta == Complex{0.0, 0.0}) throw ZeroSpectralParameter{};
  ModelParams p0 = p;
  p0.theta0 = 0.0;
  const Mat2 h = h_matrix(p.theta0);

  const RealGrid phi_x = dx_central(state.phi, spec);
  const auto [dp, dm] = lightcone_pair<double>(state.phi_t, phi_x);
  const RealGrid rho = bilinear(state);

  double defect = 0.0;
  for (int i = 0; i < spec.n; ++i) {
    const Mat2 lhs_p = plus(state.phi[i], dp[i], rho[i], zeta, p);
    const Mat2 lhs_m = minus(state.phi[i], dm[i], rho[i], zeta, p);
    const Mat2 rhs_p = conjugate(h, build_a_plus(state.phi[i], dp[i], rho[i], zeta, p0));
    const Mat2 rhs_m = conjugate(h, build_a_minus(state.phi[i], dm[i], rho[i], zeta, p0));
    defect = std::max(defect, (lhs_p - rhs_p).cwiseAbs().maxCoeff());
    defect = std::max(defect, (lhs_m - rhs_m).cwiseAbs().maxCoeff());
  }
  return defect;
}

FieldState transform_spinor(const FieldState& state, double theta) {
  const Complex wp = std::polar(1.0, -0.25 * theta);
  const Complex wm = std::polar(1.0, 0.25 * theta);
  return FieldState(state.t, state.phi, state.phi_t, wp * state.psi_plus,
                    wm * state.psi_minus);
}

}  // namespace laxlab
