#include "laxlab/fields.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace laxlab {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

ModelParams::ModelParams(double m_s_, double m_f_, double beta_, double g_, double theta0_)
    : m_s(m_s_), m_f(m_f_), beta(beta_), g(g_), theta0(theta0_),
      lambda(m_s_ / beta_), mu(m_s_ / beta_) {
  validate();
}

ModelParams::ModelParams(double m_s_, double m_f_, double beta_, double g_, double theta0_,
                         double lambda_, double mu_)
    : m_s(m_s_), m_f(m_f_), beta(beta_), g(g_), theta0(theta0_), lambda(lambda_), mu(mu_) {
  validate();
}

double ModelParams::cos_theta0() const {
  // The endpoint is exactly the double nearest pi/2; cos of that double is
  // ~6e-17 rather than 0, which would leak spinor data into the scalar
  // equation where the model has none.
  if (theta0 == kHalfPi) return 0.0;
  return std::cos(theta0);
}

double ModelParams::sin_theta0() const { return std::sin(theta0); }

void ModelParams::validate() const {
  if (!(m_s > 0.0)) throw ValidationError("params.m_s", "must be > 0");
  if (!(m_f > 0.0)) throw ValidationError("params.m_f", "must be > 0");
  if (!(beta > 0.0)) throw ValidationError("params.beta", "must be > 0");
  if (!(theta0 >= 0.0 && theta0 <= kHalfPi)) {
    throw ValidationError("params.theta0", "must lie in [0, pi/2]");
  }
  if (!(lambda > 0.0)) throw ValidationError("params.lambda", "must be > 0");
  if (!(mu > 0.0)) throw ValidationError("params.mu", "must be > 0");
}

GridSpec::GridSpec(int n_, double length_, int fd_order_)
    : n(n_), length(length_), fd_order(fd_order_) {
  if (n < 8) throw ValidationError("grid.n", "must be >= 8");
  if (!(length > 0.0)) throw ValidationError("grid.length", "must be > 0");
  if (fd_order != 2 && fd_order != 4) throw ValidationError("grid.fd_order", "must be 2 or 4");
}

RealGrid GridSpec::x() const {
  RealGrid out(n);
  for (int i = 0; i < n; ++i) out[i] = i * dx();
  return out;
}

FieldState::FieldState(double t_, RealGrid phi_, RealGrid phi_t_, ComplexGrid psi_plus_,
                       ComplexGrid psi_minus_)
    : t(t_), phi(std::move(phi_)), phi_t(std::move(phi_t_)),
      psi_plus(std::move(psi_plus_)), psi_minus(std::move(psi_minus_)) {
  const Eigen::Index n = phi.size();
  if (phi_t.size() != n || psi_plus.size() != n || psi_minus.size() != n) {
    throw LengthMismatch("FieldState: all four grids must have identical length");
  }
}

FieldState FieldState::vacuum(const GridSpec& spec) {
  return FieldState(0.0, RealGrid::Zero(spec.n), RealGrid::Zero(spec.n),
                    ComplexGrid::Zero(spec.n), ComplexGrid::Zero(spec.n));
}

RealGrid bilinear(const FieldState& s) {
  return s.psi_plus.abs2() - s.psi_minus.abs2();
}

RealGrid vector_current(const FieldState& s) {
  return 2.0 * (s.psi_plus.conjugate() * s.psi_minus).real();
}

RealGrid number_density(const FieldState& s) {
  return s.psi_plus.abs2() + s.psi_minus.abs2();
}

ComplexGrid axial_combination(const FieldState& s) {
  return s.psi_plus.conjugate() * s.psi_minus - s.psi_minus.conjugate() * s.psi_plus;
}

double integrate(const RealGrid& v, const GridSpec& spec) {
  if (v.size() != spec.n) throw LengthMismatch("integrate: grid length mismatch");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) sum += v[i];
  return sum * spec.dx();
}

Complex integrate(const ComplexGrid& v, const GridSpec& spec) {
  if (v.size() != spec.n) throw LengthMismatch("integrate: grid length mismatch");
  Complex sum{0.0, 0.0};
  for (Eigen::Index i = 0; i < v.size(); ++i) sum += v[i];
  return sum * spec.dx();
}

std::string snapshot_csv(const FieldState& s, const GridSpec& spec) {
  if (s.size() != spec.n) throw LengthMismatch("snapshot_csv: state/spec mismatch");
  std::string out = "x,phi,phi_t,re_psi_plus,im_psi_plus,re_psi_minus,im_psi_minus\n";
  char buf[256];
  for (int i = 0; i < spec.n; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  i * spec.dx(), s.phi[i], s.phi_t[i], s.psi_plus[i].real(),
                  s.psi_plus[i].imag(), s.psi_minus[i].real(), s.psi_minus[i].imag());
    out += buf;
  }
  return out;
}

}  // namespace laxlab
