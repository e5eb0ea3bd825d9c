#pragma once

// Integrability and concentration of exp(-N G~): numerical counterparts of the
// two tail estimates used in the scaling-limit argument.

#include "cbl/spectral.hpp"

namespace cbl {

/// Gbar(x, t) = 1/2 <J~ x, x> - alpha t1 (a . x) - (1 - alpha) t2 (b . x).
/// Since log cosh z <= |z|, G~(x) >= min over t in {-1,1}^2 of Gbar(x, t).
double linearized_functional(double alpha, const GTildeCoefficients& c, double x1, double x2,
                             int t1, int t2);

double min_linearized_functional(double alpha, const GTildeCoefficients& c, double x1, double x2);

/// Sum over t of the Gaussian integrals of exp(-n Gbar(., t)); an upper bound
/// on the integral of exp(-n G~) over R^2. Requires J~ positive definite.
double gaussian_domination_bound(double alpha, const GTildeCoefficients& c, double n);

/// Integral of exp(-n G~) over the square [-half_width, half_width]^2.
double boltzmann_integral(double alpha, const GTildeCoefficients& c, double n, double half_width);

/// e^{n m} times the integral of exp(-n G~) over the annulus radius <= |x| <= outer,
/// i.e. the complement of the ball of the given radius, truncated at outer.
double excluded_ball_integral(double alpha, const GTildeCoefficients& c, double n, double radius,
                              double outer, double min_value = 0.0);

/// Minimum of G~ over the circle |x| = radius, by dense sampling followed by
/// golden-section refinement. For convex G~ with minimum at the origin this is
/// the infimum over the complement of the ball.
double min_on_circle(double alpha, const GTildeCoefficients& c, double radius, int samples = 4096);

}  // namespace cbl
