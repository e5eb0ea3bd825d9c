#pragma once

// Adaptive Gauss-Kronrod quadrature (Boost.Math) in one and two dimensions.

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cbl::quad {

struct Options {
  double rel_tol = 1e-13;
  unsigned max_depth = 20;
};

template <class F>
double integrate(F&& f, double lo, double hi, Options opt = {}) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  return GK::integrate(f, lo, hi, opt.max_depth, opt.rel_tol);
}

/// Iterated integral of f(x, y) over [x_lo, x_hi] x [y_lo, y_hi].
template <class F>
double integrate_2d(F&& f, double x_lo, double x_hi, double y_lo, double y_hi, Options opt = {}) {
  auto outer = [&](double x) {
    return integrate([&](double y) { return f(x, y); }, y_lo, y_hi, opt);
  };
  return integrate(outer, x_lo, x_hi, opt);
}

}  // namespace cbl::quad
