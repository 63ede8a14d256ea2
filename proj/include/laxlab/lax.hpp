#ifndef LAXLAB_LAX_HPP
#define LAXLAB_LAX_HPP

#include <utility>
#include <vector>

#include "laxlab/fields.hpp"
#include "laxlab/sl2.hpp"

namespace laxlab {

// The light-cone Lax connection of the deformed system.  Writing
// P(pm) = d(pm)phi + i psi-bar-psi:
//
//   A+ = [[ P+,                     lambda e^{+i th/2}        ],
//         [ mu e^{-i th/2} e^{+beta phi} / zeta,   -P+        ]]
//   A- = [[ P-,                     mu e^{+i th/2} e^{-beta phi} zeta ],
//         [ lambda e^{-i th/2},     -P-                       ]]
//
// The curvature measured here is F = d+ A- - d- A+ + [A-, A+].  Its Laurent/
// grade content is exactly five slots (E+ at zeta^0 and zeta^+1, E- at zeta^0
// and zeta^-1, H at zeta^0); with this orientation the zeta^0 E+ coefficient
// is +2 lambda e^{+i th/2} (d- phi + i psi-bar-psi).

Mat2 build_a_plus(double phi, Complex dplus_phi, double rho, Complex zeta,
                  const ModelParams& p);
Mat2 build_a_minus(double phi, Complex dminus_phi, double rho, Complex zeta,
                   const ModelParams& p);

/// Both Lax matrices at one grid point.
struct LaxPoint {
  Mat2 a_plus;
  Mat2 a_minus;
};

/// A+/A- over the whole grid, with d(pm)phi from phi_t and the centered stencil.
std::vector<LaxPoint> lax_points(const FieldState& state, const ModelParams& p,
                                 const GridSpec& spec, Complex zeta);

struct CurvatureMode {
  enum class Kind { analytic, fd_time };
  Kind kind = Kind::analytic;
  double dt_probe = 1e-3;

  static CurvatureMode analytic() { return {Kind::analytic, 0.0}; }
  static CurvatureMode fd_time(double dt_probe) { return {Kind::fd_time, dt_probe}; }
};

/// Pointwise curvature matrices F at the probe zeta.  Entry time derivatives
/// come either from the equations of motion (analytic) or from stepping the
/// state by +-dt_probe and center-differencing the entries (fd_time).
std::vector<Mat2> curvature_field(const FieldState& state, const ModelParams& p,
                                  const GridSpec& spec, Complex zeta, CurvatureMode mode);

/// Curvature coefficients per (generator, zeta power) slot.
struct LaurentGradeCoeffs {
  ComplexGrid c_em_zm1;  // zeta^-1 E-
  ComplexGrid c_ep_zp1;  // zeta^+1 E+
  ComplexGrid c_ep_z0;   // zeta^0  E+
  ComplexGrid c_em_z0;   // zeta^0  E-
  ComplexGrid c_h_z0;    // zeta^0  H

  /// c_em_zm1/zeta E- + c_ep_zp1 zeta E+ + zeta^0 slots, at one point.
  Mat2 reassemble(Eigen::Index i, Complex zeta) const;
};

/// Coefficients assembled by tracking which entries carry which zeta power,
/// with entry derivatives taken numerically per `mode`.
LaurentGradeCoeffs laurent_grade_split(const FieldState& state, const ModelParams& p,
                                       const GridSpec& spec, CurvatureMode mode);

/// Same coefficients recovered from curvature_field at probes zeta = 1, 2, i
/// by Laurent interpolation (cross-validation path).
LaurentGradeCoeffs laurent_split_via_probes(const FieldState& state, const ModelParams& p,
                                            const GridSpec& spec, CurvatureMode mode);

/// Closed forms of the five coefficients evaluated from field data:
///   zeta^0  E+:  2 lambda e^{+i th/2} (d- phi + i rho)
///   zeta^0  E-:  2 lambda e^{-i th/2} (d+ phi + i rho)
///   zeta^+1 E+: -mu e^{+i th/2} e^{-beta phi} (beta d+ phi + 2 (d+ phi + i rho))
///   zeta^-1 E-: -mu e^{-i th/2} e^{+beta phi} (beta d- phi + 2 (d- phi + i rho))
///   zeta^0  H :  (mu^2 - lambda^2) + i (d+ rho - d- rho)
LaurentGradeCoeffs predicted_coefficients(const FieldState& state, const ModelParams& p,
                                          const GridSpec& spec);

/// The commutator part of the zeta^0 H slot, kept separate so its exact
/// theta0-independence can be checked directly.
ComplexGrid grade0_commutator_h(const FieldState& state, const ModelParams& p,
                                const GridSpec& spec);

/// Constraint expressions: d- phi + i rho, d+ phi + i rho, dx(rho).
struct ConstraintResiduals {
  ComplexGrid dminus_constraint;
  ComplexGrid dplus_constraint;
  RealGrid dx_bilinear;
};
ConstraintResiduals constraint_residuals(const FieldState& state, const ModelParams& p,
                                         const GridSpec& spec);

struct GradeSlotDiffs {
  double em_zm1 = 0, ep_zp1 = 0, ep_z0 = 0, em_z0 = 0, h_z0 = 0;
  double max_diff() const;
};
GradeSlotDiffs slot_linf(const LaurentGradeCoeffs& a, const LaurentGradeCoeffs& b);

struct CurvatureReport {
  std::vector<std::pair<Complex, std::vector<Mat2>>> curvature;  // per probe zeta
  LaurentGradeCoeffs split;
  LaurentGradeCoeffs predicted;
  GradeSlotDiffs diffs;  // Linf(split - predicted) per slot
  ConstraintResiduals constraints;
  double curvature_linf = 0.0;  // max entry magnitude over probes and points

  std::string summary() const;            // max norms per slot, text block
  std::string csv(const GridSpec&) const;  // per-point coefficient magnitudes
};
CurvatureReport curvature_report(const FieldState& state, const ModelParams& p,
                                 const GridSpec& spec, const std::vector<Complex>& zetas,
                                 CurvatureMode mode);

}  // namespace laxlab

#endif
