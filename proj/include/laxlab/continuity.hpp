#ifndef LAXLAB_CONTINUITY_HPP
#define LAXLAB_CONTINUITY_HPP

#include <span>

#include "laxlab/fields.hpp"

namespace laxlab {

// Candidate continuity relations for the bilinear sector with complex
// effective mass.  Substituting the component equations shows (see
// docs/continuity_note.md) that the identity holds with psi^dagger psi as the
// density and psi-bar-psi in the source:
//
//   dt (psi^dagger psi) + dx J = 2 m_f sin(theta0) e^{beta phi} psi-bar-psi
//
// while the variant with the two bilinears swapped leaves the residual
// 4 Re(psi-^* dx psi+).  The `adjoint` variant is the identity; `paper` is the
// swapped form, kept so both residuals can be reported side by side.

enum class ContinuityVariant { paper, adjoint };

/// Pointwise residual of the selected relation.  Time derivatives come from
/// substituting the Dirac right-hand sides, never from time stepping.
RealGrid continuity_residual(const FieldState& state, const ModelParams& p,
                             const GridSpec& spec, ContinuityVariant variant);

struct GrowthLawReport {
  double max_rel_mismatch = 0.0;
  int samples = 0;
};

/// Compares d/dt of the total psi^dagger psi (center-differenced across
/// observer samples) against the recorded source 2 m_f sin(theta0)
/// integral(e^{beta phi} psi-bar-psi).  Throws InsufficientSamples below 3 rows.
GrowthLawReport growth_law_check(std::span<const double> t, std::span<const double> n_total,
                                 std::span<const double> source_total);

}  // namespace laxlab

#endif
