#ifndef LAXLAB_PRESETS_HPP
#define LAXLAB_PRESETS_HPP

#include <random>

#include "laxlab/fields.hpp"

namespace laxlab {

// Initial-condition library.  Bumps use the periodic-analytic profile
// exp(kappa (cos(2 pi (x-c)/L) - 1)), which matches a Gaussian of the given
// width near the center and is C-infinity on the circle.

FieldState homogeneous_phi(const GridSpec& spec, double phi0, double phi_t0 = 0.0);

FieldState gaussian_phi_bump(const GridSpec& spec, double amplitude, double width,
                             double center, bool zero_mean = false);

/// psi+ carries the packet; momentum snaps to the nearest grid-commensurate
/// mode so the field stays exactly periodic.
FieldState spinor_packet(const GridSpec& spec, double amplitude, double width, double center,
                         double momentum);

/// Constraint-surface preset: homogeneous static phi with psi+ = psi-, so the
/// bilinear vanishes pointwise and d(pm) phi + i psi-bar-psi = 0 holds exactly.
FieldState constrained_preset(const GridSpec& spec, double phi0, double amplitude,
                              double width, double center, double momentum);

/// Smooth random state from a low-mode Fourier synthesis (for the randomized
/// verification suites).  Deterministic for a given rng state.
FieldState random_smooth_state(const GridSpec& spec, std::mt19937_64& rng,
                               double amplitude = 0.3, int n_modes = 4);

}  // namespace laxlab

#endif
