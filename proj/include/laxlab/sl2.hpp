#ifndef LAXLAB_SL2_HPP
#define LAXLAB_SL2_HPP

#include <Eigen/Dense>
#include <complex>

#include "laxlab/errors.hpp"

namespace laxlab {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

/// Coefficients of a traceless matrix in the (H, E+, E-) basis.
struct GradedElement {
  Complex h{0.0, 0.0};
  Complex ep{0.0, 0.0};
  Complex em{0.0, 0.0};

  Mat2 reconstruct() const {
    Mat2 m;
    m << h, ep, em, -h;
    return m;
  }
};

enum class Generator { H, E_plus, E_minus };

Mat2 generator(Generator name);

inline Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b - b * a; }

/// Default tracelessness tolerance: relative to the largest entry, floored at 1.
double traceless_tol(const Mat2& m);

/// Splits a traceless matrix into grade components.  Throws NonTraceless when
/// |trace| exceeds tol (pass a negative tol to use the default).
GradedElement grade_decompose(const Mat2& m, double tol = -1.0);

/// One-parameter twist of the grading: E+ -> e^{+2i theta} E+, E- -> e^{-2i theta} E-.
GradedElement twisted_involution(double theta, const GradedElement& g);

/// Matrix exponential via the closed 2x2 form, with a series branch for the
/// sinh(delta)/delta factor when the eigenvalue gap is small.
Mat2 mat_exp(const Mat2& m);

}  // namespace laxlab

#endif
