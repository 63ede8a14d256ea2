#ifndef LAXLAB_GAUGE_HPP
#define LAXLAB_GAUGE_HPP

#include <functional>

#include "laxlab/fields.hpp"
#include "laxlab/sl2.hpp"

namespace laxlab {

/// h_theta = diag(e^{-i theta/4}, e^{+i theta/4}), det = 1.  Conjugation by
/// h_theta sends E+ -> e^{+i theta/2} E+ and E- -> e^{-i theta/2} E-, so it
/// generates the deformed connection from the undeformed one.
Mat2 h_matrix(double theta);

/// h^{-1} m h.  Throws SingularMatrix when h is not invertible.
Mat2 conjugate(const Mat2& h, const Mat2& m);

/// Max entrywise defect of A(pm)(zeta; theta0) vs h^{-1} A(pm)(zeta; 0) h over
/// the grid.  An exact algebraic identity; anything above rounding is a bug.
double verify_gauge_lemma(const FieldState& state, const ModelParams& p, const GridSpec& spec,
                          Complex zeta);

/// Builder-injected variant used by the mutation-sensitivity check.
using LaxBuilder =
    std::function<Mat2(double phi, Complex dphi, double rho, Complex zeta, const ModelParams&)>;
double verify_gauge_lemma(const FieldState& state, const ModelParams& p, const GridSpec& spec,
                          Complex zeta, const LaxBuilder& plus, const LaxBuilder& minus);

/// psi+ -> e^{-i theta/4} psi+, psi- -> e^{+i theta/4} psi-; phi untouched.
FieldState transform_spinor(const FieldState& state, double theta);

}  // namespace laxlab

#endif
