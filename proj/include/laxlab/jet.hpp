#ifndef LAXLAB_JET_HPP
#define LAXLAB_JET_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "laxlab/errors.hpp"

namespace laxlab {

using Complex = std::complex<double>;

// Exact symbolic calculus over the jet variables u_k (k-th forward light-cone
// derivative of the scalar) and integer powers of e^{beta phi}, with complex
// constant coefficients.  Expressions are kept in a canonical normal form:
// monomials sorted by (exp weight, jet powers), like terms merged, negligible
// coefficients dropped.  Structural equality of normal forms then decides
// mathematical equality.

struct JetMonomial {
  Complex coeff{0.0, 0.0};
  int exp_weight = 0;                         // q in e^{q beta phi}
  std::vector<std::pair<int, int>> powers;    // sorted (k, a_k), k >= 1, a_k >= 1

  // Canonical key: exp weight first, then the powers map lexicographically.
  friend bool key_less(const JetMonomial& a, const JetMonomial& b) {
    if (a.exp_weight != b.exp_weight) return a.exp_weight < b.exp_weight;
    return a.powers < b.powers;
  }
  friend bool key_equal(const JetMonomial& a, const JetMonomial& b) {
    return a.exp_weight == b.exp_weight && a.powers == b.powers;
  }
};

class JetExpr {
 public:
  JetExpr() = default;
  explicit JetExpr(std::vector<JetMonomial> monomials);

  static JetExpr zero() { return JetExpr{}; }
  static JetExpr constant(Complex c);
  /// c * e^{q beta phi}
  static JetExpr exponential(Complex c, int q);
  /// u_k
  static JetExpr jet(int k);

  const std::vector<JetMonomial>& monomials() const { return monomials_; }
  bool is_zero() const { return monomials_.empty(); }
  std::size_t size() const { return monomials_.size(); }

  /// Highest jet index appearing anywhere in the expression (0 if none).
  int max_jet_order() const;

  /// Deterministic plain-text form: `coeff * E[q] * u1^a1 * u2^a2 ...`
  /// per monomial, terms joined by " + ".  Empty expression prints "0".
  std::string str() const;

  friend JetExpr je_add(const JetExpr& a, const JetExpr& b);
  friend JetExpr je_mul(const JetExpr& a, const JetExpr& b);
  friend JetExpr je_scale(Complex c, const JetExpr& a);
  friend JetExpr d_plus(const JetExpr& a, double beta);

  /// Exact structural equality (bitwise coefficients).
  friend bool operator==(const JetExpr& a, const JetExpr& b);

 private:
  std::vector<JetMonomial> monomials_;
  void normalize();
};

JetExpr je_add(const JetExpr& a, const JetExpr& b);
JetExpr je_sub(const JetExpr& a, const JetExpr& b);
JetExpr je_mul(const JetExpr& a, const JetExpr& b);
JetExpr je_scale(Complex c, const JetExpr& a);

/// Formal derivation: d(u_k) = u_{k+1}, d(e^{q beta phi}) = q beta u_1 e^{q beta phi},
/// extended by linearity and the Leibniz rule.
JetExpr d_plus(const JetExpr& a, double beta);

/// Numerical substitution.  u[j] supplies the value of u_{j+1}; throws
/// JetOrderTooLow when the expression references a jet beyond u.size().
/// Summation runs in canonical monomial order.
Complex je_eval(const JetExpr& a, double beta, double phi, std::span<const Complex> u);

/// Canonical-form comparison with a coefficient tolerance: identical keys and
/// coefficients agreeing to rel_tol (relative to the largest coefficient).
bool je_close(const JetExpr& a, const JetExpr& b, double rel_tol = 1e-13);

std::string format_complex(Complex z);

}  // namespace laxlab

#endif
