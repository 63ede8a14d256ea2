#include "laxlab/sl2.hpp"

#include <cmath>

namespace laxlab {

Mat2 generator(Generator name) {
  Mat2 m = Mat2::Zero();
  switch (name) {
    case Generator::H:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    case Generator::E_plus:
      m(0, 1) = 1.0;
      break;
    case Generator::E_minus:
      m(1, 0) = 1.0;
      break;
  }
  return m;
}

double traceless_tol(const Mat2& m) {
  double scale = m.cwiseAbs().maxCoeff();
  return 1e-10 * std::max(scale, 1.0);
}

GradedElement grade_decompose(const Mat2& m, double tol) {
  if (tol < 0.0) tol = traceless_tol(m);
  const Complex tr = m(0, 0) + m(1, 1);
  if (std::abs(tr) > tol) {
    throw NonTraceless("grade_decompose: |trace| = " + std::to_string(std::abs(tr)));
  }
  return GradedElement{m(0, 0), m(0, 1), m(1, 0)};
}

GradedElement twisted_involution(double theta, const GradedElement& g) {
  const Complex wp = std::polar(1.0, 2.0 * theta);
  const Complex wm = std::polar(1.0, -2.0 * theta);
  return GradedElement{g.h, wp * g.ep, wm * g.em};
}

Mat2 mat_exp(const Mat2& m) {
  // Split off the trace: m = s*I + N with N traceless, so
  // exp(m) = e^s (cosh(d) I + sinh(d)/d N) where d^2 = -det(N).
  const Complex s = 0.5 * (m(0, 0) + m(1, 1));
  Mat2 n = m;
  n(0, 0) -= s;
  n(1, 1) -= s;
  const Complex d2 = n(0, 0) * n(0, 0) + n(0, 1) * n(1, 0);  // = -det(N)
  const Complex d = std::sqrt(d2);

  const double norm = m.norm();
  Complex ch, shc;  // cosh(d), sinh(d)/d
  if (std::abs(d) < 1e-6 * std::max(norm, 1.0)) {
    // Eigenvalue gap too small for the quotient; use the Taylor series in d^2.
    // Truncation error ~ |d2|^4 / 9! which is far below 1e-12 here.
    ch = 1.0 + d2 * (1.0 / 2.0 + d2 * (1.0 / 24.0 + d2 / 720.0));
    shc = 1.0 + d2 * (1.0 / 6.0 + d2 * (1.0 / 120.0 + d2 / 5040.0));
  } else {
    ch = std::cosh(d);
    shc = std::sinh(d) / d;
  }

  Mat2 out = shc * n;
  out(0, 0) += ch;
  out(1, 1) += ch;
  return std::exp(s) * out;
}

}  // namespace laxlab
