#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "laxlab/continuity.hpp"
#include "laxlab/dynamics.hpp"
#include "laxlab/presets.hpp"

using namespace laxlab;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

FieldState smooth_spinor_state(const GridSpec& g) {
  RealGrid phi(g.n), phi_t(g.n);
  ComplexGrid pp(g.n), pm(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double w = kTwoPi * (i * g.dx()) / g.length;
    phi[i] = 0.2 * std::sin(w);
    phi_t[i] = 0.1 * std::cos(2.0 * w);
    pp[i] = Complex{0.4 * std::cos(w + 0.3), 0.2 * std::sin(2.0 * w)};
    pm[i] = Complex{0.3 * std::sin(w), 0.25 * std::cos(w + 1.0)};
  }
  return FieldState(0.0, phi, phi_t, pp, pm);
}
}  // namespace

TEST_CASE("both residuals vanish identically on the spinor vacuum") {
  GridSpec spec(32, 4.0);
  ModelParams p(1.0, 1.0, 1.0, 1.0, kPi / 3.0);
  const FieldState s = homogeneous_phi(spec, 0.3, 0.1);
  CHECK(continuity_residual(s, p, spec, ContinuityVariant::paper).abs().maxCoeff() == 0.0);
  CHECK(continuity_residual(s, p, spec, ContinuityVariant::adjoint).abs().maxCoeff() == 0.0);
}

TEST_CASE("adjoint variant is the identity: residual is pure truncation error") {
  for (double th : {0.0, kPi / 4.0, kPi / 2.0}) {
    ModelParams p(1.0, 1.0, 1.0, 1.0, th);
    double prev = 0.0;
    for (int n : {64, 128, 256}) {
      GridSpec g(n, kTwoPi);
      const double linf =
          continuity_residual(smooth_spinor_state(g), p, g, ContinuityVariant::adjoint)
              .abs()
              .maxCoeff();
      if (prev > 0.0) {
        CHECK(std::log2(prev / linf) == doctest::Approx(2.0).epsilon(0.15));
      }
      prev = linf;
    }
  }
}

TEST_CASE("paper variant converges to the 4 Re(psi-* dx psi+) defect") {
  ModelParams p(1.0, 1.0, 1.0, 1.0, kPi / 4.0);
  double prev = 0.0;
  for (int n : {64, 128, 256}) {
    GridSpec g(n, kTwoPi);
    const FieldState s = smooth_spinor_state(g);
    const RealGrid residual = continuity_residual(s, p, g, ContinuityVariant::paper);
    const RealGrid defect =
        4.0 * (s.psi_minus.conjugate() * dx_central(s.psi_plus, g)).real();
    const double gap = (residual - defect).abs().maxCoeff();
    if (prev > 0.0) CHECK(std::log2(prev / gap) == doctest::Approx(2.0).epsilon(0.2));
    prev = gap;
    // and the defect itself does not vanish
    CHECK(defect.abs().maxCoeff() > 0.1);
  }
}

TEST_CASE("free-transport plane wave: both variants at rounding level") {
  GridSpec g(64, kTwoPi);
  ModelParams p(1.0, 1.0, 1.0, 1.0, 0.0);
  ComplexGrid w(g.n);
  for (int i = 0; i < g.n; ++i) w[i] = 0.5 * std::polar(1.0, 3.0 * i * g.dx());
  const FieldState plane(0.0, RealGrid::Zero(g.n), RealGrid::Zero(g.n), w, w);
  CHECK(continuity_residual(plane, p, g, ContinuityVariant::adjoint).abs().maxCoeff() <= 1e-12);
  CHECK(continuity_residual(plane, p, g, ContinuityVariant::paper).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("growth law bookkeeping on a synthetic series") {
  std::vector<double> t, n_tot, src;
  const double a = 0.8;
  for (int k = 0; k <= 40; ++k) {
    const double tk = 0.05 * k;
    t.push_back(tk);
    n_tot.push_back(std::sin(a * tk));
    src.push_back(a * std::cos(a * tk));
  }
  const GrowthLawReport rep = growth_law_check(t, n_tot, src);
  CHECK(rep.samples == 39);
  // centered-difference error ~ (a dt)^2 / 6
  CHECK(rep.max_rel_mismatch <= 5e-4);

  std::vector<double> too_short{0.0, 1.0};
  CHECK_THROWS_AS(growth_law_check(too_short, too_short, too_short), InsufficientSamples);
  std::vector<double> mismatched{0.0, 1.0, 2.0};
  CHECK_THROWS_AS(growth_law_check(mismatched, too_short, mismatched), LengthMismatch);
}

TEST_CASE("anomalous growth: source sign drives the particle number up") {
  GridSpec spec(128, kTwoPi);
  ModelParams p(1.0, 1.0, 1.0, 1.0, kPi / 3.0);
  // psi- = 0 so the bilinear equals the (positive) density
  FieldState s = spinor_packet(spec, 0.5, spec.length / 10.0, spec.length / 2.0, 2.0);
  const auto recs = simulate(s, p, spec, 0.125 * spec.dx(), 64, 8);
  for (std::size_t k = 1; k < recs.size(); ++k) {
    CHECK(recs[k].n_total > recs[k - 1].n_total);
  }
}

TEST_CASE("growth law on a real run at the sine endpoint, frozen scalar") {
  GridSpec spec(128, kTwoPi);
  ModelParams p(1.0, 1.0, 1.0, 1.0, kPi / 2.0);
  FieldState s = spinor_packet(spec, 0.5, spec.length / 10.0, spec.length / 2.0, 3.0);
  const double dt = spec.dx() / 8.0;
  const int steps = static_cast<int>(std::llround(0.5 / dt));

  std::vector<double> t, ntot, src;
  const auto recs = simulate(
      s, p, spec, dt, steps, 4, [&](const FieldState& st, const BasicRecord& rec) {
        t.push_back(rec.t);
        ntot.push_back(rec.n_total);
        src.push_back(2.0 * p.m_f * p.sin_theta0() *
                      integrate(RealGrid((p.beta * st.phi).exp() * bilinear(st)), spec));
        // phi == 0 is preserved exactly: zero backreaction at the endpoint
        CHECK(st.phi.abs().maxCoeff() == 0.0);
      });
  const GrowthLawReport rep = growth_law_check(t, ntot, src);
  CHECK(rep.max_rel_mismatch <= 0.01);
}
