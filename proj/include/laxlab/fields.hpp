#ifndef LAXLAB_FIELDS_HPP
#define LAXLAB_FIELDS_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "laxlab/errors.hpp"

namespace laxlab {

using Complex = std::complex<double>;
using RealGrid = Eigen::ArrayXd;
using ComplexGrid = Eigen::ArrayXcd;

/// Physical couplings of one member of the deformed family.
/// theta0 rotates the Yukawa phase (m_f e^{i theta0}) and rescales the scalar
/// backreaction by cos(theta0); lambda and mu are the Lax mass parameters and
/// default to m_s/beta.
struct ModelParams {
  double m_s = 1.0;
  double m_f = 1.0;
  double beta = 1.0;
  double g = 1.0;
  double theta0 = 0.0;
  double lambda = 1.0;
  double mu = 1.0;

  ModelParams() = default;
  ModelParams(double m_s_, double m_f_, double beta_, double g_, double theta0_);
  ModelParams(double m_s_, double m_f_, double beta_, double g_, double theta0_,
              double lambda_, double mu_);

  /// cos(theta0), returning exactly 0 at the theta0 = pi/2 endpoint so the
  /// backreaction channel closes bit-exactly there.
  double cos_theta0() const;
  double sin_theta0() const;
  /// g * cos(theta0)
  double backreaction_coefficient() const { return g * cos_theta0(); }

  void validate() const;
};

/// Uniform periodic grid; index arithmetic is modulo n.
struct GridSpec {
  int n = 8;
  double length = 1.0;
  int fd_order = 2;  // 2 (default) or 4, for first-derivative stencils

  GridSpec() = default;
  GridSpec(int n_, double length_, int fd_order_ = 2);

  double dx() const { return length / n; }
  RealGrid x() const;  // grid point coordinates, x_i = i*dx
};

/// One time slice of the coupled system.  phi and phi_t are strictly real.
struct FieldState {
  double t = 0.0;
  RealGrid phi;
  RealGrid phi_t;
  ComplexGrid psi_plus;
  ComplexGrid psi_minus;

  FieldState() = default;
  FieldState(double t_, RealGrid phi_, RealGrid phi_t_, ComplexGrid psi_plus_,
             ComplexGrid psi_minus_);

  Eigen::Index size() const { return phi.size(); }
  static FieldState vacuum(const GridSpec& spec);
};

// ---- bilinear observables ----

/// psi-bar psi = |psi+|^2 - |psi-|^2
RealGrid bilinear(const FieldState& s);
/// J = psi+^* psi- + psi-^* psi+  (= 2 Re psi+^* psi-)
RealGrid vector_current(const FieldState& s);
/// psi^dagger psi = |psi+|^2 + |psi-|^2
RealGrid number_density(const FieldState& s);
/// N~ = psi+^* psi- - psi-^* psi+, purely imaginary for any state
ComplexGrid axial_combination(const FieldState& s);

// ---- derivative stencils (periodic) ----

namespace detail {
template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, 1> central_diff(
    const Eigen::Array<Scalar, Eigen::Dynamic, 1>& v, const GridSpec& spec) {
  if (v.size() != spec.n) {
    throw LengthMismatch("central_diff: grid length " + std::to_string(v.size()) +
                         " != spec.n " + std::to_string(spec.n));
  }
  const Eigen::Index n = v.size();
  Eigen::Array<Scalar, Eigen::Dynamic, 1> out(n);
  if (spec.fd_order == 4) {
    const double c = 1.0 / (12.0 * spec.dx());
    for (Eigen::Index i = 0; i < n; ++i) {
      const Scalar vm2 = v[(i - 2 + 2 * n) % n], vm1 = v[(i - 1 + n) % n];
      const Scalar vp1 = v[(i + 1) % n], vp2 = v[(i + 2) % n];
      out[i] = c * (8.0 * (vp1 - vm1) - (vp2 - vm2));
    }
  } else {
    const double c = 1.0 / (2.0 * spec.dx());
    for (Eigen::Index i = 0; i < n; ++i) {
      out[i] = c * (v[(i + 1) % n] - v[(i - 1 + n) % n]);
    }
  }
  return out;
}

template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, 1> second_diff(
    const Eigen::Array<Scalar, Eigen::Dynamic, 1>& v, const GridSpec& spec) {
  if (v.size() != spec.n) {
    throw LengthMismatch("second_diff: grid length mismatch");
  }
  const Eigen::Index n = v.size();
  const double c = 1.0 / (spec.dx() * spec.dx());
  Eigen::Array<Scalar, Eigen::Dynamic, 1> out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out[i] = c * (v[(i + 1) % n] - 2.0 * v[i] + v[(i - 1 + n) % n]);
  }
  return out;
}
}  // namespace detail

inline RealGrid dx_central(const RealGrid& v, const GridSpec& spec) {
  return detail::central_diff<double>(v, spec);
}
inline ComplexGrid dx_central(const ComplexGrid& v, const GridSpec& spec) {
  return detail::central_diff<Complex>(v, spec);
}
/// Compact 3-point second difference (phi_{i+1} - 2 phi_i + phi_{i-1}) / dx^2.
inline RealGrid dxx(const RealGrid& v, const GridSpec& spec) {
  return detail::second_diff<double>(v, spec);
}
inline ComplexGrid dxx(const ComplexGrid& v, const GridSpec& spec) {
  return detail::second_diff<Complex>(v, spec);
}

/// (d+, d-) = (1/2 (dt + dx), 1/2 (dt - dx)) from time- and space-derivative grids.
template <typename Scalar>
std::pair<Eigen::Array<Scalar, Eigen::Dynamic, 1>, Eigen::Array<Scalar, Eigen::Dynamic, 1>>
lightcone_pair(const Eigen::Array<Scalar, Eigen::Dynamic, 1>& dt_grid,
               const Eigen::Array<Scalar, Eigen::Dynamic, 1>& dx_grid) {
  if (dt_grid.size() != dx_grid.size()) {
    throw LengthMismatch("lightcone_pair: grids differ in length");
  }
  return {0.5 * (dt_grid + dx_grid), 0.5 * (dt_grid - dx_grid)};
}

/// Periodic trapezoid rule, dx * sum(values), with a fixed left-to-right reduction.
double integrate(const RealGrid& v, const GridSpec& spec);
Complex integrate(const ComplexGrid& v, const GridSpec& spec);

/// Snapshot CSV: x, phi, phi_t, re_psi_plus, im_psi_plus, re_psi_minus, im_psi_minus
std::string snapshot_csv(const FieldState& s, const GridSpec& spec);

}  // namespace laxlab

#endif
