#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ballshape/constants.hpp"
#include "ballshape/errors.hpp"

using namespace ballshape;

namespace {
constexpr double kPi = 3.14159265358979323846;
const std::vector<double> kEpsGrid = {1e-3, 1e-2, 0.1, 0.5, 1.0,
                                      2.0,  5.0,  10.0, 100.0};
}  // namespace

TEST_CASE("f evaluates the closed formula") {
  CHECK(f_of_alpha(kPi / 3.0) ==
        doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
  CHECK(f_of_alpha(kPi / 4.0) ==
        doctest::Approx(kPi / std::sqrt(2.0)).epsilon(1e-14));
  // f -> 0 as alpha -> 0+.
  CHECK(f_of_alpha(1e-12) < 1e-11);
  CHECK_THROWS_AS(f_of_alpha(0.0), DomainError);
  CHECK_THROWS_AS(f_of_alpha(kPi / 2.0), DomainError);
}

TEST_CASE("f_inverse inverts f and stays below epsilon/2") {
  CHECK(f_inverse(4.0 * kPi / 3.0) == doctest::Approx(kPi / 3.0).epsilon(1e-10));
  for (double eps : {0.01, 0.1, 1.0, 10.0}) CHECK(f_inverse(eps) < eps / 2.0);
  for (double eps : kEpsGrid) {
    const double alpha = f_inverse(eps);
    CHECK(f_of_alpha(alpha) == doctest::Approx(eps).epsilon(1e-10));
  }
}

TEST_CASE("f_eta matches the closed formula and its limits") {
  // Direct formula evaluation: (3*pi/4 + 2*sqrt(2*1/32)) / cos(pi/4).
  const double expected =
      (3.0 * kPi / 4.0 + 2.0 * std::sqrt(2.0 / 32.0)) / std::cos(kPi / 4.0);
  CHECK(f_eta(kPi / 4.0, 1.0, 1.0 / 32.0) ==
        doctest::Approx(expected).epsilon(1e-14));
  // eta -> 0 recovers 3*alpha/cos(alpha).
  for (double alpha : {0.2, 0.7, 1.2})
    CHECK(f_eta(alpha, 1.0, 1e-30) ==
          doctest::Approx(3.0 * alpha / std::cos(alpha)).epsilon(1e-9));
  // Strictly increasing in alpha.
  double prev = 0.0;
  for (double alpha = 0.05; alpha < 1.5; alpha += 0.05) {
    const double value = f_eta(alpha, 1.0, 0.01);
    CHECK(value > prev);
    prev = value;
  }
}

TEST_CASE("g_inverse inverts g and satisfies the inequality chain") {
  for (double eps : kEpsGrid) {
    const double eta = g_inverse(eps);
    CHECK(g_of_eta(eta) == doctest::Approx(eps).epsilon(1e-10));
    CHECK(eta < eps / 32.0);
    CHECK(eta < 0.25 * f_eta_inverse(eps, eta));
  }
}

TEST_CASE("f_eta round trip") {
  for (double eps : kEpsGrid) {
    const double eta = g_inverse(eps);
    const double alpha = f_eta_inverse(eps, eta);
    CHECK(f_eta(alpha, eps, eta) == doctest::Approx(eps).epsilon(1e-10));
  }
}

TEST_CASE("radii table assembles positive finite entries") {
  for (double eps : {0.1, 1.0}) {
    const RadiiTable t = radii_table(eps);
    CHECK(t.epsilon == eps);
    CHECK(t.f_inv > 0.0);
    CHECK(t.f_inv < eps / 2.0);
    CHECK(t.g_inv > 0.0);
    CHECK(t.g_inv < eps / 32.0);
    CHECK(t.g_inv < t.f_eta_inv / 4.0);
    CHECK(t.chart_radius > 0.0);
    CHECK(std::isfinite(t.lipschitz_L));
    CHECK(t.lipschitz_L > 0.0);
  }
}

TEST_CASE("chart radius is asymptotically homogeneous at small epsilon") {
  // The defining maps carry cosine factors, so exact homogeneity fails;
  // the linear scaling emerges as epsilon -> 0.
  const double eps = 0.01;
  const double base = radii_table(eps).chart_radius;
  for (double lambda : {2.0, 5.0}) {
    const double scaled = radii_table(lambda * eps).chart_radius;
    CHECK(scaled / (lambda * base) == doctest::Approx(1.0).epsilon(0.01));
  }
}

TEST_CASE("all inverses are monotone increasing in epsilon") {
  // chart_radius itself is not monotone: both terms saturate (f_eta_inv/4
  // and g_inv tend to pi/8), so it peaks and decays to zero while staying
  // positive.
  double prev_f = 0.0, prev_g = 0.0, prev_fe = 0.0;
  for (double eps : kEpsGrid) {
    const RadiiTable t = radii_table(eps);
    CHECK(t.f_inv > prev_f);
    CHECK(t.g_inv > prev_g);
    CHECK(t.f_eta_inv > prev_fe);
    CHECK(t.chart_radius > 0.0);
    prev_f = t.f_inv;
    prev_g = t.g_inv;
    prev_fe = t.f_eta_inv;
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(f_inverse(0.0), DomainError);
  CHECK_THROWS_AS(g_inverse(-1.0), DomainError);
  CHECK_THROWS_AS(g_of_eta(kPi / 8.0), DomainError);
  CHECK_THROWS_AS(f_eta(0.5, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(f_eta_inverse(1.0, 0.2), DomainError);
  CHECK_THROWS_AS(radii_table(0.0), DomainError);
}
