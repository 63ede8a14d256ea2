#include "laxlab/presets.hpp"

#include <cmath>
#include <numbers>

namespace laxlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

RealGrid periodic_bump(const GridSpec& spec, double amplitude, double width, double center) {
  const double kappa = (spec.length / (kTwoPi * width)) * (spec.length / (kTwoPi * width));
  RealGrid out(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    const double x = i * spec.dx();
    out[i] = amplitude * std::exp(kappa * (std::cos(kTwoPi * (x - center) / spec.length) - 1.0));
  }
  return out;
}

double snap_momentum(const GridSpec& spec, double momentum) {
  const double mode = std::round(momentum * spec.length / kTwoPi);
  return kTwoPi * mode / spec.length;
}
}  // namespace

FieldState homogeneous_phi(const GridSpec& spec, double phi0, double phi_t0) {
  return FieldState(0.0, RealGrid::Constant(spec.n, phi0), RealGrid::Constant(spec.n, phi_t0),
                    ComplexGrid::Zero(spec.n), ComplexGrid::Zero(spec.n));
}

FieldState gaussian_phi_bump(const GridSpec& spec, double amplitude, double width,
                             double center, bool zero_mean) {
  RealGrid phi = periodic_bump(spec, amplitude, width, center);
  if (zero_mean) phi -= phi.mean();
  return FieldState(0.0, std::move(phi), RealGrid::Zero(spec.n), ComplexGrid::Zero(spec.n),
                    ComplexGrid::Zero(spec.n));
}

FieldState spinor_packet(const GridSpec& spec, double amplitude, double width, double center,
                         double momentum) {
  const double k = snap_momentum(spec, momentum);
  const RealGrid env = periodic_bump(spec, amplitude, width, center);
  ComplexGrid psi_p(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    psi_p[i] = env[i] * std::polar(1.0, k * (i * spec.dx()));
  }
  return FieldState(0.0, RealGrid::Zero(spec.n), RealGrid::Zero(spec.n), std::move(psi_p),
                    ComplexGrid::Zero(spec.n));
}

FieldState constrained_preset(const GridSpec& spec, double phi0, double amplitude,
                              double width, double center, double momentum) {
  const double k = snap_momentum(spec, momentum);
  const RealGrid env = periodic_bump(spec, amplitude, width, center);
  ComplexGrid psi(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    psi[i] = env[i] * std::polar(1.0, k * (i * spec.dx()));
  }
  return FieldState(0.0, RealGrid::Constant(spec.n, phi0), RealGrid::Zero(spec.n), psi, psi);
}

FieldState random_smooth_state(const GridSpec& spec, std::mt19937_64& rng, double amplitude,
                               int n_modes) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);

  auto real_field = [&]() {
    RealGrid out = RealGrid::Zero(spec.n);
    for (int m = 1; m <= n_modes; ++m) {
      const double a = amplitude * unit(rng) / (m * m);
      const double ph = angle(rng);
      for (int i = 0; i < spec.n; ++i) {
        out[i] += a * std::cos(kTwoPi * m * (i * spec.dx()) / spec.length + ph);
      }
    }
    return out;
  };
  auto complex_field = [&]() {
    RealGrid re = real_field();
    RealGrid im = real_field();
    ComplexGrid out(spec.n);
    for (int i = 0; i < spec.n; ++i) out[i] = Complex{re[i], im[i]};
    return out;
  };

  RealGrid phi = real_field();
  RealGrid phi_t = real_field();
  ComplexGrid psi_p = complex_field();
  ComplexGrid psi_m = complex_field();
  return FieldState(0.0, std::move(phi), std::move(phi_t), std::move(psi_p), std::move(psi_m));
}

}  // namespace laxlab
