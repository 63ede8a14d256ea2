#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "laxlab/gauge.hpp"
#include "laxlab/lax.hpp"
#include "laxlab/presets.hpp"

using namespace laxlab;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

FieldState smooth_profile(const GridSpec& spec) {
  RealGrid phi(spec.n), phi_t(spec.n);
  ComplexGrid pp(spec.n), pm(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    const double w = kTwoPi * (i * spec.dx()) / spec.length;
    phi[i] = 0.4 * std::sin(w + 0.7) + 0.15 * std::cos(2.0 * w);
    phi_t[i] = 0.3 * std::cos(w) - 0.1 * std::sin(2.0 * w + 0.3);
    pp[i] = Complex{0.3 * std::cos(w + 0.2) + 0.05, 0.2 * std::sin(2.0 * w)};
    pm[i] = Complex{0.25 * std::sin(w + 1.1), 0.15 * std::cos(2.0 * w + 0.4) + 0.1};
  }
  return FieldState(0.0, std::move(phi), std::move(phi_t), std::move(pp), std::move(pm));
}
}  // namespace

TEST_CASE("lax builders: pinned entries") {
  ModelParams p(1.0, 1.0, 1.0, 1.0, 0.0);

  const Mat2 ap = build_a_plus(0.0, Complex{0, 0}, 0.0, Complex{1, 0}, p);
  CHECK(ap(0, 0) == Complex{0, 0});
  CHECK(ap(0, 1) == Complex{1, 0});
  CHECK(ap(1, 0) == Complex{1, 0});
  CHECK(ap(1, 1) == Complex{0, 0});
  const GradedElement g = grade_decompose(ap);
  CHECK(g.h == Complex{0, 0});
  CHECK(g.ep == Complex{1, 0});
  CHECK(g.em == Complex{1, 0});

  ModelParams ph(1.0, 1.0, 1.0, 1.0, kPi / 2.0);
  const Mat2 aph = build_a_plus(0.0, Complex{0, 0}, 0.0, Complex{1, 0}, ph);
  CHECK(std::abs(aph(0, 1) - std::polar(1.0, kPi / 4.0)) <= 1e-15);
  CHECK(std::abs(aph(1, 0) - std::polar(1.0, -kPi / 4.0)) <= 1e-15);

  // zeta = 2, phi = ln 3, beta = mu = 1: the (2,1) entry is 3/2
  const Mat2 az = build_a_plus(std::log(3.0), Complex{0, 0}, 0.0, Complex{2, 0}, p);
  CHECK(std::abs(az(1, 0) - Complex{1.5, 0.0}) <= 1e-15);

  const Mat2 am = build_a_minus(0.0, Complex{0, 0}, 0.0, Complex{1, 0}, p);
  CHECK(am(0, 1) == Complex{1, 0});
  CHECK(am(1, 0) == Complex{1, 0});

  // the (1,2) entry of A- is linear in zeta
  const Mat2 ami = build_a_minus(0.2, Complex{0.1, 0}, 0.0, Complex{0, 1}, p);
  const Mat2 am1 = build_a_minus(0.2, Complex{0.1, 0}, 0.0, Complex{1, 0}, p);
  CHECK(std::abs(ami(0, 1) - Complex{0, 1} * am1(0, 1)) <= 1e-15);

  CHECK_THROWS_AS(build_a_plus(0.0, Complex{0, 0}, 0.0, Complex{0, 0}, p),
                  ZeroSpectralParameter);
  CHECK_THROWS_AS(build_a_minus(0.0, Complex{0, 0}, 0.0, Complex{0, 0}, p),
                  ZeroSpectralParameter);
}

TEST_CASE("lax builders match a literal transcription oracle on random input") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    ModelParams p(0.5 + u(rng) * 0.4 + 1.0, 1.0, 0.5 + 0.4 * (u(rng) + 1.0), 1.0,
                  0.25 * kPi * (u(rng) + 1.0));
    const double phi = u(rng), rho = u(rng);
    const Complex dp{u(rng), u(rng)};
    const Complex zeta = std::polar(0.5 + u(rng) + 1.0, kPi * u(rng));

    const Mat2 ap = build_a_plus(phi, dp, rho, zeta, p);
    const Complex i{0, 1};
    CHECK(std::abs(ap(0, 0) - (dp + i * rho)) == 0.0);
    CHECK(std::abs(ap(1, 1) + (dp + i * rho)) == 0.0);
    CHECK(std::abs(ap(0, 1) - p.lambda * std::exp(i * (0.5 * p.theta0))) <= 1e-15);
    CHECK(std::abs(ap(1, 0) - p.mu * std::exp(-i * (0.5 * p.theta0)) *
                                  std::exp(p.beta * phi) / zeta) <= 1e-15 * std::abs(ap(1, 0)) + 1e-15);

    const Mat2 am = build_a_minus(phi, dp, rho, zeta, p);
    CHECK(std::abs(am(0, 1) - p.mu * std::exp(i * (0.5 * p.theta0)) * std::exp(-p.beta * phi) *
                                  zeta) <= 1e-15 * std::abs(am(0, 1)) + 1e-15);
    CHECK(std::abs(am(1, 0) - p.lambda * std::exp(-i * (0.5 * p.theta0))) <= 1e-15);

    // traceless by construction, bitwise
    CHECK(ap(0, 0) == -ap(1, 1));
    CHECK(am(0, 0) == -am(1, 1));
  }
}

TEST_CASE("vacuum curvature vanishes for lambda = mu at every theta0 and probe") {
  GridSpec spec(32, 4.0);
  const FieldState vac = FieldState::vacuum(spec);
  for (double th : {0.0, kPi / 6.0, kPi / 4.0, kPi / 3.0, kPi / 2.0}) {
    ModelParams p(1.0, 1.0, 1.0, 1.0, th);
    for (const Complex z : {Complex{0.5, 0}, Complex{1, 0}, Complex{2, 0}, Complex{0, 1}}) {
      for (const Mat2& f : curvature_field(vac, p, spec, z, CurvatureMode::analytic())) {
        CHECK(f.cwiseAbs().maxCoeff() <= 1e-13);
      }
    }
  }
}

TEST_CASE("curvature is traceless and the split reassembles it") {
  GridSpec spec(64, kTwoPi);
  ModelParams p(1.0, 1.0, 1.0, 1.0, kPi / 3.0);
  const FieldState s = smooth_profile(spec);
  const auto mode = CurvatureMode::analytic();

  const std::vector<Mat2> f = curvature_field(s, p, spec, Complex{3, 0}, mode);
  double scale = 0.0;
  for (const Mat2& m : f) scale = std::max(scale, m.cwiseAbs().maxCoeff());
  for (const Mat2& m : f) {
    CHECK(std::abs(m(0, 0) + m(1, 1)) <= 1e-12 * std::max(scale, 1.0));
  }

  const LaurentGradeCoeffs split = laurent_grade_split(s, p, spec, mode);
  for (int i = 0; i < spec.n; ++i) {
    CHECK((split.reassemble(i, Complex{3, 0}) - f[static_cast<std::size_t>(i)])
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
  }

  const LaurentGradeCoeffs via = laurent_split_via_probes(s, p, spec, mode);
  CHECK(slot_linf(split, via).max_diff() <= 1e-10);
}

TEST_CASE("analytic and fd_time modes agree at O(dt_probe^2)") {
  GridSpec spec(64, kTwoPi);
  ModelParams p(1.0, 1.0, 1.0, 1.0, kPi / 4.0);
  const FieldState s = smooth_profile(spec);

  const LaurentGradeCoeffs ref = laurent_grade_split(s, p, spec, CurvatureMode::analytic());
  auto gap = [&](double dt) {
    return slot_linf(laurent_grade_split(s, p, spec, CurvatureMode::fd_time(dt)), ref)
        .max_diff();
  };
  const double g1 = gap(2e-3), g2 = gap(1e-3);
  CHECK(g1 / g2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("measured coefficients converge to the predicted closed forms at order 2") {
  ModelParams p(1.0, 1.0, 1.0, 1.0, kPi / 6.0);
  std::vector<double> diffs;
  double ep_z0_rel = 0.0, em_z0_rel = 0.0;
  for (int n : {64, 128, 256}) {
    GridSpec g(n, kTwoPi);
    const FieldState s = smooth_profile(g);
    const auto split = laurent_grade_split(s, p, g, CurvatureMode::fd_time(g.dx() / 4.0));
    const auto pred = predicted_coefficients(s, p, g);
    const GradeSlotDiffs d = slot_linf(split, pred);
    diffs.push_back(d.max_diff());
    ep_z0_rel = d.ep_z0 / pred.c_ep_z0.abs().maxCoeff();
    em_z0_rel = d.em_z0 / pred.c_em_z0.abs().maxCoeff();
  }
  CHECK(std::log2(diffs[0] / diffs[1]) == doctest::Approx(2.0).epsilon(0.15));
  CHECK(std::log2(diffs[1] / diffs[2]) == doctest::Approx(2.0).epsilon(0.15));
  // the zeta^0 E(pm) slots are commutator-only and match at rounding level
  CHECK(ep_z0_rel <= 1e-12);
  CHECK(em_z0_rel <= 1e-12);
}

TEST_CASE("grade-0 commutator contribution is independent of theta0") {
  GridSpec spec(48, 5.0);
  ModelParams base(1.0, 1.0, 1.0, 1.0, 0.0);
  const FieldState s = smooth_profile(spec);
  const ComplexGrid ref = grade0_commutator_h(s, base, spec);
  for (double th : {kPi / 6.0, kPi / 4.0, kPi / 3.0, kPi / 2.0}) {
    ModelParams p(1.0, 1.0, 1.0, 1.0, th);
    CHECK((grade0_commutator_h(s, p, spec) - ref).abs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("curvature transforms covariantly under the constant gauge map") {
  GridSpec spec(48, kTwoPi);
  const FieldState s = smooth_profile(spec);
  const double th = kPi / 3.0;
  ModelParams p_def(1.0, 1.0, 1.0, 1.0, th);
  ModelParams p_0(1.0, 1.0, 1.0, 1.0, 0.0);
  const Complex z{1.0, 1.0};

  const auto f_def = curvature_field(s, p_def, spec, z, CurvatureMode::analytic());
  const auto f_0 = curvature_field(s, p_0, spec, z, CurvatureMode::analytic());
  const Mat2 h = h_matrix(th);
  for (int i = 0; i < spec.n; ++i) {
    const Mat2 expected = conjugate(h, f_0[static_cast<std::size_t>(i)]);
    CHECK((f_def[static_cast<std::size_t>(i)] - expected).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("constraint residuals: constructed solutions and the definitional oracle") {
  GridSpec spec(64, kTwoPi);
  ModelParams p(1.0, 1.0, 1.0, 1.0, kPi / 4.0);

  // psi = 0, homogeneous static phi: all three residuals vanish exactly
  const FieldState hom = homogeneous_phi(spec, 0.37);
  const ConstraintResiduals r0 = constraint_residuals(hom, p, spec);
  CHECK(r0.dminus_constraint.abs().maxCoeff() == 0.0);
  CHECK(r0.dplus_constraint.abs().maxCoeff() == 0.0);
  CHECK(r0.dx_bilinear.abs().maxCoeff() == 0.0);

  // psi+ = psi- profile over a homogeneous static phi: still exactly zero
  const FieldState cons = constrained_preset(spec, 0.2, 0.5, spec.length / 8.0,
                                             spec.length / 2.0, 2.0);
  const ConstraintResiduals r1 = constraint_residuals(cons, p, spec);
  CHECK(r1.dminus_constraint.abs().maxCoeff() == 0.0);
  CHECK(r1.dplus_constraint.abs().maxCoeff() == 0.0);
  CHECK(r1.dx_bilinear.abs().maxCoeff() == 0.0);

  // generic state: the dx(rho) residual is definitionally the stencil of the bilinear
  const FieldState gen = smooth_profile(spec);
  const ConstraintResiduals r2 = constraint_residuals(gen, p, spec);
  const RealGrid oracle = dx_central(bilinear(gen), spec);
  CHECK((r2.dx_bilinear - oracle).abs().maxCoeff() == 0.0);
}

TEST_CASE("curvature report carries summaries and csv") {
  GridSpec spec(32, kTwoPi);
  ModelParams p(1.0, 1.0, 1.0, 1.0, kPi / 4.0);
  const FieldState s = smooth_profile(spec);
  const CurvatureReport rep =
      curvature_report(s, p, spec, {Complex{1, 0}, Complex{2, 0}}, CurvatureMode::analytic());
  CHECK(rep.curvature.size() == 2);
  CHECK(rep.curvature_linf > 0.0);
  CHECK(rep.summary().find("curvature_linf") != std::string::npos);
  const std::string csv = rep.csv(spec);
  CHECK(csv.rfind("x,abs_em_zm1,abs_ep_zp1,abs_ep_z0,abs_em_z0,abs_h_z0\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == spec.n + 1);
}

TEST_CASE("errors: zero spectral parameter and length mismatch") {
  GridSpec spec(32, kTwoPi);
  ModelParams p(1.0, 1.0, 1.0, 1.0, 0.0);
  const FieldState s = smooth_profile(spec);
  CHECK_THROWS_AS(curvature_field(s, p, spec, Complex{0, 0}, CurvatureMode::analytic()),
                  ZeroSpectralParameter);
  GridSpec other(64, kTwoPi);
  CHECK_THROWS_AS(curvature_field(s, p, other, Complex{1, 0}, CurvatureMode::analytic()),
                  LengthMismatch);
  CHECK_THROWS_AS(lax_points(s, p, other, Complex{1, 0}), LengthMismatch);
}
