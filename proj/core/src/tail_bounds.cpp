#include "cbl/tail_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/trapezoidal.hpp>

#include "cbl/quadrature.hpp"

namespace cbl {

double linearized_functional(double alpha, const GTildeCoefficients& c, double x1, double x2,
                             int t1, int t2) {
  const double quad = 0.5 * (c.jt11 * x1 * x1 + 2.0 * c.jt12 * x1 * x2 + c.jt22 * x2 * x2);
  return quad - alpha * t1 * (c.a1 * x1 + c.a2 * x2) -
         (1.0 - alpha) * t2 * (c.b1 * x1 + c.b2 * x2);
}

double min_linearized_functional(double alpha, const GTildeCoefficients& c, double x1, double x2) {
  double best = std::numeric_limits<double>::infinity();
  for (int t1 : {-1, 1})
    for (int t2 : {-1, 1}) best = std::min(best, linearized_functional(alpha, c, x1, x2, t1, t2));
  return best;
}

double gaussian_domination_bound(double alpha, const GTildeCoefficients& c, double n) {
  const Mat2 jt = c.jt();
  const double det = jt.det();
  if (!(jt.a11 > 0 && det > 0))
    throw std::domain_error("gaussian_domination_bound: J~ is not positive definite");
  const Mat2 inv = jt.inverse();
  double total = 0;
  for (int t1 : {-1, 1}) {
    for (int t2 : {-1, 1}) {
      const Vec2 lin{alpha * t1 * c.a1 + (1.0 - alpha) * t2 * c.b1,
                     alpha * t1 * c.a2 + (1.0 - alpha) * t2 * c.b2};
      const Vec2 sol = inv * lin;
      const double q = lin[0] * sol[0] + lin[1] * sol[1];
      total += 2.0 * std::numbers::pi / (n * std::sqrt(det)) * std::exp(0.5 * n * q);
    }
  }
  return total;
}

double boltzmann_integral(double alpha, const GTildeCoefficients& c, double n,
                          double half_width) {
  auto f = [&](double x1, double x2) {
    return std::exp(-n * transformed_functional(alpha, c, x1, x2));
  };
  return quad::integrate_2d(f, -half_width, half_width, -half_width, half_width);
}

double excluded_ball_integral(double alpha, const GTildeCoefficients& c, double n, double radius,
                              double outer, double min_value) {
  if (!(outer > radius && radius >= 0))
    throw std::invalid_argument("excluded_ball_integral: need 0 <= radius < outer");
  auto f = [&](double r, double theta) {
    const double g = transformed_functional(alpha, c, r * std::cos(theta), r * std::sin(theta));
    return r * std::exp(-n * (g - min_value));
  };
  // The angular integrand is smooth and periodic, where the trapezoidal rule
  // converges geometrically.
  auto ring = [&](double r) {
    auto g = [&](double theta) { return f(r, theta); };
    return boost::math::quadrature::trapezoidal(g, 0.0, 2.0 * std::numbers::pi, 1e-14);
  };
  return quad::integrate(ring, radius, outer);
}

double min_on_circle(double alpha, const GTildeCoefficients& c, double radius, int samples) {
  auto g = [&](double theta) {
    return transformed_functional(alpha, c, radius * std::cos(theta), radius * std::sin(theta));
  };
  const double step = 2.0 * std::numbers::pi / samples;
  int best_i = 0;
  double best = g(0.0);
  for (int i = 1; i < samples; ++i) {
    const double v = g(step * i);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }
  double lo = step * (best_i - 1);
  double hi = step * (best_i + 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double m1 = hi - inv_phi * (hi - lo);
  double m2 = lo + inv_phi * (hi - lo);
  double g1 = g(m1);
  double g2 = g(m2);
  for (int it = 0; it < 100 && hi - lo > 1e-14; ++it) {
    if (g1 < g2) {
      hi = m2;
      m2 = m1;
      g2 = g1;
      m1 = hi - inv_phi * (hi - lo);
      g1 = g(m1);
    } else {
      lo = m1;
      m1 = m2;
      g1 = g2;
      m2 = lo + inv_phi * (hi - lo);
      g2 = g(m2);
    }
  }
  return std::min({best, g1, g2});
}

}  // namespace cbl
