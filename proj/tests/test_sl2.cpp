#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "laxlab/sl2.hpp"

using namespace laxlab;

namespace {

Mat2 random_mat2(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Mat2 m;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) m(r, c) = Complex{u(rng), u(rng)};
  }
  return m;
}

Mat2 random_traceless(std::mt19937_64& rng, double scale = 1.0) {
  Mat2 m = random_mat2(rng, scale);
  m(1, 1) = -m(0, 0);
  return m;
}

// truncated-series oracle, 30 terms
Mat2 taylor_exp(const Mat2& m) {
  Mat2 sum = Mat2::Identity();
  Mat2 term = Mat2::Identity();
  for (int k = 1; k <= 30; ++k) {
    term = Mat2(term * m / static_cast<double>(k));
    sum += term;
  }
  return sum;
}

// scaling-and-squaring oracle
Mat2 scaling_squaring_exp(const Mat2& m) {
  int s = 0;
  double norm = m.norm();
  while (norm > 0.25) {
    norm /= 2.0;
    ++s;
  }
  Mat2 r = taylor_exp(Mat2(m / std::pow(2.0, s)));
  for (int k = 0; k < s; ++k) r = Mat2(r * r);
  return r;
}

}  // namespace

TEST_CASE("generators match the fundamental representation") {
  Mat2 h = generator(Generator::H);
  CHECK(h(0, 0) == Complex{1, 0});
  CHECK(h(1, 1) == Complex{-1, 0});
  CHECK(h(0, 1) == Complex{0, 0});
  Mat2 ep = generator(Generator::E_plus);
  CHECK(ep(0, 1) == Complex{1, 0});
  CHECK(ep(1, 0) == Complex{0, 0});
  Mat2 em = generator(Generator::E_minus);
  CHECK(em(1, 0) == Complex{1, 0});
  CHECK(em(0, 1) == Complex{0, 0});
}

TEST_CASE("commutation relations of the basis") {
  const Mat2 h = generator(Generator::H);
  const Mat2 ep = generator(Generator::E_plus);
  const Mat2 em = generator(Generator::E_minus);
  CHECK((commutator(h, ep) - 2.0 * ep).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((commutator(h, em) + 2.0 * em).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((commutator(ep, em) - h).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("commutator is antisymmetric and matches the entrywise oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat2 a = random_mat2(rng);
    const Mat2 b = random_mat2(rng);
    CHECK(commutator(a, a).cwiseAbs().maxCoeff() == 0.0);

    Mat2 oracle;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        oracle(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c) - b(r, 0) * a(0, c) -
                       b(r, 1) * a(1, c);
      }
    }
    CHECK((commutator(a, b) - oracle).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("commutator of traceless matrices is traceless") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat2 a = random_traceless(rng);
    const Mat2 b = random_traceless(rng);
    const Mat2 c = commutator(a, b);
    const double scale = c.cwiseAbs().maxCoeff();
    CHECK(std::abs(c(0, 0) + c(1, 1)) <= 1e-14 * std::max(scale, 1.0));
  }
}

TEST_CASE("grade_decompose round-trips traceless matrices exactly") {
  std::mt19937_64 rng(13);
  const GradedElement gh = grade_decompose(generator(Generator::H));
  CHECK(gh.h == Complex{1, 0});
  CHECK(gh.ep == Complex{0, 0});
  CHECK(gh.em == Complex{0, 0});

  for (int trial = 0; trial < 50; ++trial) {
    const Mat2 m = random_traceless(rng);
    const GradedElement g = grade_decompose(m);
    CHECK((g.reconstruct() - m).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("grade_decompose rejects non-traceless input") {
  Mat2 m = Mat2::Identity();
  CHECK_THROWS_AS(grade_decompose(m), NonTraceless);
  // within the default tolerance it passes
  Mat2 nearly = generator(Generator::H);
  nearly(1, 1) = Complex{-1.0 + 1e-12, 0.0};
  CHECK_NOTHROW(grade_decompose(nearly));
}

TEST_CASE("twisted involution phases and h-invariance") {
  const GradedElement g{Complex{0.3, -0.2}, Complex{1, 0}, Complex{0, 0}};
  const GradedElement id = twisted_involution(0.0, g);
  CHECK(id.h == g.h);
  CHECK(id.ep == g.ep);
  CHECK(id.em == g.em);

  // applying twice multiplies E+ by e^{4 i theta}
  const double theta = 0.77;
  const GradedElement twice = twisted_involution(theta, twisted_involution(theta, g));
  CHECK(std::abs(twice.ep - std::polar(1.0, 4.0 * theta) * g.ep) <= 1e-15);
  CHECK(std::abs(std::polar(1.0, 4.0 * theta) - Complex{1.0, 0.0}) > 0.1);  // not identity

  const GradedElement em_in{Complex{0, 0}, Complex{0, 0}, Complex{1, 0}};
  const GradedElement r = twisted_involution(M_PI / 4.0, em_in);
  CHECK(std::abs(r.em - Complex{0.0, -1.0}) <= 1e-15);

  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const GradedElement x{Complex{u(rng), u(rng)}, Complex{u(rng), u(rng)},
                          Complex{u(rng), u(rng)}};
    CHECK(twisted_involution(u(rng), x).h == x.h);
  }
}

TEST_CASE("mat_exp: trivial cases") {
  CHECK((mat_exp(Mat2::Zero()) - Mat2::Identity()).cwiseAbs().maxCoeff() == 0.0);

  Mat2 d = Mat2::Zero();
  d(0, 0) = Complex{0.7, 0.3};
  d(1, 1) = Complex{-0.7, -0.3};
  const Mat2 e = mat_exp(d);
  CHECK(std::abs(e(0, 0) - std::exp(Complex{0.7, 0.3})) <= 1e-14);
  CHECK(std::abs(e(1, 1) - std::exp(Complex{-0.7, -0.3})) <= 1e-14);
  CHECK(std::abs(e(0, 1)) <= 1e-15);
}

TEST_CASE("mat_exp matches the 30-term Taylor oracle for ||m|| <= 1") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    Mat2 m = random_mat2(rng, 0.5);
    if (m.norm() > 1.0) m /= m.norm();
    const Mat2 e = mat_exp(m);
    const Mat2 oracle = taylor_exp(m);
    CHECK((e - oracle).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, oracle.norm()));
  }
}

TEST_CASE("mat_exp matches scaling-and-squaring for larger matrices") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat2 m = random_mat2(rng, 3.0);
    const Mat2 e = mat_exp(m);
    const Mat2 oracle = scaling_squaring_exp(m);
    CHECK((e - oracle).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, oracle.norm()));
  }
}

TEST_CASE("mat_exp handles near-degenerate eigenvalues") {
  // nilpotent: exp = I + m exactly
  Mat2 nil = Mat2::Zero();
  nil(0, 1) = Complex{0.4, -0.1};
  const Mat2 e = mat_exp(nil);
  CHECK(std::abs(e(0, 0) - 1.0) <= 1e-14);
  CHECK(std::abs(e(0, 1) - nil(0, 1)) <= 1e-14);

  // tiny eigenvalue gap exercises the series branch
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat2 m;
    const Complex eps{1e-9 * u(rng), 1e-9 * u(rng)};
    m << eps, Complex{u(rng), u(rng)}, Complex{0.0, 0.0}, -eps;
    const Mat2 got = mat_exp(m);
    const Mat2 oracle = taylor_exp(m);
    CHECK((got - oracle).cwiseAbs().maxCoeff() <= 1e-12);
  }
}
