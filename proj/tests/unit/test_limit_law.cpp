#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cbl/errors.hpp"
#include "cbl/limit_law.hpp"
#include "cbl/quadrature.hpp"
#include "cbl/spectral.hpp"

using cbl::LimitLaw;

namespace {

const double kG14 = std::tgamma(0.25);
const double kG34 = std::tgamma(0.75);

// Moments of exp(-xi x^4) by quadrature, independent of the closed forms.
struct QuarticQuad {
  double z, m2, m4;
};

QuarticQuad quartic_quad(double xi) {
  const double l = 12 * std::pow(xi, -0.25);
  auto w = [xi](double x) { return std::exp(-xi * x * x * x * x); };
  const double z = cbl::quad::integrate(w, -l, l);
  const double m2 = cbl::quad::integrate([&](double x) { return x * x * w(x); }, -l, l) / z;
  const double m4 = cbl::quad::integrate([&](double x) { return x * x * x * x * w(x); }, -l, l) / z;
  return {z, m2, m4};
}

}  // namespace

TEST_CASE("normalization") {
  const LimitLaw law(0.25, 1.0 / 24);
  const double closed = std::sqrt(std::numbers::pi / 0.25) * 0.5 * kG14 * std::pow(1.0 / 24, -0.25);
  CHECK(law.normalizing_integral() == doctest::Approx(closed).epsilon(1e-14));
  CHECK(law.log_norm() == doctest::Approx(std::log(closed)).epsilon(1e-14));

  for (double xi1 : {0.01, 0.25, 3.0, 100.0}) {
    for (double xi2 : {0.01, 1.0 / 24, 1.0, 100.0}) {
      const LimitLaw l(xi1, xi2);
      const double g = l.gaussian_half_width(), q = l.quartic_half_width();
      const double z1 = cbl::quad::integrate([&](double x) { return std::exp(-xi1 * x * x); }, -g, g);
      const double z2 = quartic_quad(xi2).z;
      CHECK(std::fabs(z1 * z2 / l.normalizing_integral() - 1) <= 1e-10);
      (void)q;
    }
  }
}

TEST_CASE("density") {
  const LimitLaw law(0.25, 1.0 / 24);
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int k = 0; k < 100; ++k) {
    const double a = u(rng), b = u(rng);
    const double d = law.density(a, b);
    CHECK(d == law.density(-a, b));
    CHECK(d == law.density(a, -b));
    CHECK(d == doctest::Approx(law.pdf_x1(a) * law.pdf_x2(b)).epsilon(1e-14));
  }
  const double total = cbl::quad::integrate_2d([&](double a, double b) { return law.density(a, b); },
                                               -law.gaussian_half_width(), law.gaussian_half_width(),
                                               -law.quartic_half_width(), law.quartic_half_width(),
                                               {1e-10, 15});
  CHECK(std::fabs(total - 1) <= 1e-8);

  // first marginal is the Gaussian with variance 2
  for (double x : {-3.0, 0.0, 0.5, 2.0}) {
    CHECK(law.pdf_x1(x) == doctest::Approx(std::exp(-x * x / 4) / std::sqrt(4 * std::numbers::pi)).epsilon(1e-14));
  }

  // the quartic marginal is maximal at 0 and strictly decreasing on (0, inf)
  double prev = law.pdf_x2(0);
  for (int i = 1; i <= 1000; ++i) {
    const double v = law.pdf_x2(i * 0.01);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("marginal CDFs") {
  const LimitLaw law(0.25, 1.0 / 24);
  CHECK(law.marginal_cdf_x2(0) == 0.5);
  CHECK(law.marginal_cdf_x1(0) == 0.5);
  CHECK(law.marginal_cdf_x2(50 * std::pow(1.0 / 24, -0.25)) > 1 - 1e-12);
  CHECK(law.marginal_cdf_x2(-50 * std::pow(1.0 / 24, -0.25)) < 1e-12);

  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> u(-6, 6);
  for (int k = 0; k < 100; ++k) {
    const double t = u(rng);
    CHECK(std::fabs(law.marginal_cdf_x2(t) + law.marginal_cdf_x2(-t) - 1) <= 1e-10);
    CHECK(std::fabs(law.marginal_cdf_x1(t) + law.marginal_cdf_x1(-t) - 1) <= 1e-10);
  }

  SUBCASE("closed form agrees with quadrature of the density") {
    for (double t : {-4.0, -1.3, -0.2, 0.7, 2.5, 5.0}) {
      const double q2 = cbl::quad::integrate([&](double x) { return law.pdf_x2(x); },
                                             -law.quartic_half_width(), t);
      const double q1 = cbl::quad::integrate([&](double x) { return law.pdf_x1(x); },
                                             -law.gaussian_half_width(), t);
      CHECK(std::fabs(q2 - law.marginal_cdf_x2(t)) <= 1e-10);
      CHECK(std::fabs(q1 - law.marginal_cdf_x1(t)) <= 1e-10);
    }
  }

  SUBCASE("monotone on a grid") {
    double prev = 0;
    for (int i = -800; i <= 800; ++i) {
      const double c = law.marginal_cdf_x2(i * 0.01);
      CHECK(c >= prev);
      prev = c;
    }
  }

  SUBCASE("quantiles invert the CDFs") {
    for (double p : {1e-9, 0.01, 0.3, 0.5, 0.77, 0.999}) {
      CHECK(law.marginal_cdf_x2(law.quantile_x2(p)) == doctest::Approx(p).epsilon(1e-10));
      CHECK(law.marginal_cdf_x1(law.quantile_x1(p)) == doctest::Approx(p).epsilon(1e-10));
    }
  }
}

TEST_CASE("moments") {
  const LimitLaw law(0.25, 1.0 / 24);
  const auto m = law.moments();
  CHECK(m.var_x1 == doctest::Approx(2).epsilon(1e-15));
  CHECK(m.var_x2 == doctest::Approx(kG34 * std::sqrt(24.0) / kG14).epsilon(1e-14));
  CHECK(m.var_x2 == doctest::Approx(1.65580).epsilon(1e-5));
  CHECK(m.fourth_x2 == doctest::Approx(6).epsilon(1e-14));
  CHECK(m.kurtosis_x2 == doctest::Approx(2.18844).epsilon(1e-5));
  CHECK(cbl::quartic_kurtosis() == doctest::Approx(kG14 * kG14 / (4 * kG34 * kG34)).epsilon(1e-15));

  SUBCASE("kurtosis is universal") {
    for (double xi : {0.01, 1.0, 24.0}) {
      const auto q = quartic_quad(xi);
      CHECK(std::fabs(q.m4 / (q.m2 * q.m2) - cbl::quartic_kurtosis()) <= 1e-8);
    }
  }

  SUBCASE("closed forms match quadrature") {
    for (double xi : {0.01, 0.1, 1.0, 10.0, 100.0}) {
      const auto q = quartic_quad(xi);
      const auto mm = LimitLaw(xi, xi).moments();
      CHECK(std::fabs(q.m2 / mm.var_x2 - 1) <= 1e-8);
      CHECK(std::fabs(q.m4 / mm.fourth_x2 - 1) <= 1e-8);
      const double g = LimitLaw(xi, xi).gaussian_half_width();
      const double z = cbl::quad::integrate([&](double x) { return std::exp(-xi * x * x); }, -g, g);
      const double v = cbl::quad::integrate([&](double x) { return x * x * std::exp(-xi * x * x); }, -g, g) / z;
      CHECK(std::fabs(v / mm.var_x1 - 1) <= 1e-8);
    }
  }

  SUBCASE("scaling x2 -> c x2 maps xi2 to xi2 / c^4") {
    for (double c : {0.5, 2.0, 3.7}) {
      const double xi = 0.3;
      const auto base = quartic_quad(xi);
      const auto scaled = quartic_quad(xi / std::pow(c, 4));
      CHECK(std::fabs(scaled.m2 / (c * c * base.m2) - 1) <= 1e-8);
      CHECK(std::fabs(scaled.m4 / (std::pow(c, 4) * base.m4) - 1) <= 1e-8);
    }
  }
}

TEST_CASE("construction") {
  CHECK_THROWS_AS(LimitLaw(0, 1), cbl::DomainError);
  CHECK_THROWS_AS(LimitLaw(1, -1), cbl::DomainError);
  CHECK_THROWS_AS(LimitLaw(NAN, 1), cbl::DomainError);
  const cbl::ModelParams p{0.5, 1.5, 1.5, 0.5};
  const LimitLaw law(cbl::limit_coefficients(p, cbl::spectral_data(p)));
  CHECK(law.xi1() == doctest::Approx(0.25));
  CHECK(law.xi2() == doctest::Approx(1.0 / 24));
}
