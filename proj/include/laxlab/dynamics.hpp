#ifndef LAXLAB_DYNAMICS_HPP
#define LAXLAB_DYNAMICS_HPP

#include <functional>
#include <vector>

#include "laxlab/fields.hpp"

namespace laxlab {

/// Right-hand sides of the first-order (method-of-lines) system.
struct StateDerivative {
  RealGrid d_phi;        // = phi_t
  RealGrid d_phi_t;      // = phi_tt
  ComplexGrid d_psi_plus;
  ComplexGrid d_psi_minus;
};

/// M = m_f e^{i theta0} e^{beta phi}
Complex effective_mass(double phi_value, const ModelParams& p);

/// Coupled field equations in lab-frame component form:
///   phi_tt  = phi_xx - (m_s^2/beta) sinh(beta phi) + g cos(theta0) psi-bar-psi
///   dt psi+ = -i M psi+ - dx psi-
///   dt psi- = +i M psi- - dx psi+
StateDerivative rhs(const FieldState& state, const ModelParams& p, const GridSpec& spec);

/// d/dt of the bilinear psi-bar-psi given the state and its derivative.
RealGrid bilinear_time_derivative(const FieldState& state, const StateDerivative& d);

enum class CflPolicy { warn, strict };

/// Classical RK4 over all four grids.  dt may be negative (used by the
/// finite-difference curvature probe); the CFL check applies to |dt|.
FieldState step_rk4(const FieldState& state, double dt, const ModelParams& p,
                    const GridSpec& spec, CflPolicy cfl = CflPolicy::warn);

struct BasicRecord {
  double t;
  double n_total;    // integral of psi^dagger psi
  double rho_total;  // integral of psi-bar psi
  double j_total;    // integral of the vector current
};

/// Repeated RK4 stepping with an observer every `observer_stride` steps (the
/// initial and final states are always observed).  Throws NumericalBlowup when
/// any field magnitude exceeds 1e12.
std::vector<BasicRecord> simulate(
    FieldState state, const ModelParams& p, const GridSpec& spec, double dt, int n_steps,
    int observer_stride,
    const std::function<void(const FieldState&, const BasicRecord&)>& observer = nullptr,
    CflPolicy cfl = CflPolicy::warn);

}  // namespace laxlab

#endif
