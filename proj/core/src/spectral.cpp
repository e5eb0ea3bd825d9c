#include "cbl/spectral.hpp"

#include <cmath>
#include <string>

#include "cbl/errors.hpp"

namespace cbl {

Hessian hessian_at_origin(const ModelParams& p) {
  const double a = p.alpha;
  const double b = 1.0 - a;
  const double j12sq = p.j12 * p.j12;
  return {a * a * p.j11 * (1.0 - a * p.j11) - a * a * b * j12sq,
          a * b * p.j12 * (1.0 - a * p.j11 - b * p.j22),
          b * b * p.j22 * (1.0 - b * p.j22) - a * b * b * j12sq};
}

namespace {

struct EigenOffsets {
  double lambda_max, lambda_min;
  double e_max, e_min;  // lambda - H11 for each eigenvalue
};

// The two offsets satisfy e_max * e_min = -H12^2; the one that would suffer
// cancellation is taken from that identity.
EigenOffsets eigen_offsets(const Hessian& h) {
  const double delta = h.h22 - h.h11;
  const double disc = std::hypot(delta, 2.0 * h.h12);
  const double mean = 0.5 * (h.h11 + h.h22);
  EigenOffsets e{mean + 0.5 * disc, mean - 0.5 * disc, 0, 0};
  if (delta >= 0) {
    e.e_max = 0.5 * (delta + disc);
    e.e_min = -h.h12 * h.h12 / e.e_max;
  } else {
    e.e_min = 0.5 * (delta - disc);
    e.e_max = -h.h12 * h.h12 / e.e_min;
  }
  return e;
}

Vec2 normalized(double x, double y) {
  const double n = std::hypot(x, y);
  return {x / n, y / n};
}

double sgn(double v) { return (v > 0) - (v < 0); }

}  // namespace

SpectralData eigen_decompose(const Hessian& h, double alpha) {
  if (h.h12 == 0.0)
    throw DegenerateHessian("eigen_decompose: H12 == 0 (eigenvector formulas undefined)");
  const EigenOffsets e = eigen_offsets(h);

  SpectralData s;
  s.alpha = alpha;
  s.hessian = h;
  s.lambda_max = e.lambda_max;
  s.lambda_min = e.lambda_min;
  s.v_max = normalized(1.0, e.e_max / h.h12);
  s.v_min = normalized(1.0, e.e_min / h.h12);
  s.P = Mat2::from_rows(s.v_max, s.v_min);
  s.A = Mat2::diag(std::sqrt(alpha), std::sqrt(1.0 - alpha));

  // Rows, not columns: P H P^T must come out diagonal with lambda_max first.
  const double scale = std::fmax(1.0, h.matrix().max_abs());
  const Mat2 ortho = s.P * s.P.transpose() - Mat2::identity();
  const Mat2 diag = s.P * h.matrix() * s.P.transpose() - Mat2::diag(s.lambda_max, s.lambda_min);
  if (ortho.max_abs() > 1e-12 || diag.max_abs() > 1e-12 * scale)
    throw InternalError("eigen_decompose: P fails to diagonalize the Hessian (ortho " +
                        std::to_string(ortho.max_abs()) + ", diag " +
                        std::to_string(diag.max_abs()) + ")");
  return s;
}

GTildeCoefficients transformed_coefficients(const ModelParams& p, const SpectralData& s) {
  const double a = p.alpha;
  const double b = 1.0 - a;
  const Hessian& h = s.hessian;
  const EigenOffsets e = eigen_offsets(h);
  const double eM = e.e_max;
  const double em = e.e_min;
  const double h12sq = h.h12 * h.h12;
  const double nM = h12sq + eM * eM;
  const double nm = h12sq + em * em;
  const double base = p.j11 * a * a * h12sq;

  GTildeCoefficients c;
  c.jt11 = (base + p.j22 * b * b * eM * eM + 2.0 * p.j12 * a * b * h.h12 * eM) / nM;
  c.jt22 = (base + p.j22 * b * b * em * em + 2.0 * p.j12 * a * b * h.h12 * em) / nm;
  c.jt12 = (base + p.j22 * b * b * eM * em + p.j12 * a * b * h.h12 * (h.h22 - h.h11)) /
           std::sqrt(nM * nm);

  const double abs12 = std::fabs(h.h12);
  const double sg = sgn(h.h12);
  const double rM = std::sqrt(nM);
  const double rm = std::sqrt(nm);
  c.a1 = (p.j11 * a * abs12 + p.j12 * b * sg * eM) / rM;
  c.a2 = (p.j11 * a * abs12 + p.j12 * b * sg * em) / rm;
  c.b1 = (p.j12 * a * abs12 + p.j22 * b * sg * eM) / rM;
  c.b2 = (p.j12 * a * abs12 + p.j22 * b * sg * em) / rm;
  return c;
}

double transformed_functional(double alpha, const GTildeCoefficients& c, double x1, double x2) {
  const double quad = 0.5 * (c.jt11 * x1 * x1 + 2.0 * c.jt12 * x1 * x2 + c.jt22 * x2 * x2);
  return quad - alpha * log_cosh(c.a1 * x1 + c.a2 * x2) -
         (1.0 - alpha) * log_cosh(c.b1 * x1 + c.b2 * x2);
}

namespace {

double compose(const ModelParams& p, const SpectralData& s, double x1, double x2) {
  const Vec2 y = s.P.transpose() * Vec2{x1, x2};
  return pressure_functional(p, y[0], y[1]);
}

}  // namespace

double transformed_functional_checked(const ModelParams& p, const SpectralData& s, double x1,
                                      double x2) {
  const double via_p = compose(p, s, x1, x2);
  const double via_c = transformed_functional(p.alpha, transformed_coefficients(p, s), x1, x2);
  if (std::fabs(via_p - via_c) > 1e-10 * std::fmax(1.0, std::fabs(via_p)))
    throw InternalError("transformed_functional: routes disagree at (" + std::to_string(x1) +
                        ", " + std::to_string(x2) + ")");
  return via_p;
}

double transformed_functional(const ModelParams& p, const SpectralData& s, double x1, double x2) {
#ifndef NDEBUG
  return transformed_functional_checked(p, s, x1, x2);
#else
  return compose(p, s, x1, x2);
#endif
}

Mat2 phi_hessian_at_origin(const GTildeCoefficients& c, const SpectralData& s) {
  return {c.jt11 - s.lambda_max, c.jt12, c.jt12, c.jt22 - s.lambda_min};
}

double variance_from_phi_hessian(const GTildeCoefficients& c, const SpectralData& s) {
  return s.alpha * phi_hessian_at_origin(c, s).det() / (s.lambda_max * c.jt().det());
}

TransformedModel limit_coefficients(const ModelParams& p, const SpectralData& s,
                                    double tol_critical, double tol_eigen) {
  const CriticalityReport rep = check_critical_conditions(p, tol_critical, tol_eigen);
  if (!rep.all() || std::fabs(s.lambda_min) > tol_eigen) {
    std::string msg = "limit_coefficients: parameters are not critical:";
    for (const auto& v : rep.violations()) msg += " [" + v + "]";
    throw NotCritical(msg);
  }

  const double a = p.alpha;
  const double b = 1.0 - a;
  TransformedModel tm;
  tm.coeffs = transformed_coefficients(p, s);
  tm.lambda_max = s.lambda_max;
  tm.zeta1 = s.lambda_max / (2.0 * a);

  const double u = 1.0 - a * p.j11;
  const double w = 1.0 - b * p.j22;
  const double mix = a * u + b * w;
  tm.zeta2 = 2.0 * a * (a * u * u + b * w * w) / (24.0 * mix * mix);

  const GTildeCoefficients& c = tm.coeffs;
  tm.d = a / s.lambda_max - a * c.jt22 / (c.jt11 * c.jt22 - c.jt12 * c.jt12);

  if (!(tm.zeta1 > 0) || !(tm.zeta2 > 0) || !(tm.d > 0))
    throw NonPositiveCoefficient("limit_coefficients: zeta1=" + std::to_string(tm.zeta1) +
                                 " zeta2=" + std::to_string(tm.zeta2) +
                                 " d=" + std::to_string(tm.d));
  tm.xi1 = 1.0 / (2.0 * tm.d);
  tm.xi2 = tm.zeta2;
  return tm;
}

Mat2 magnetization_transform(const SpectralData& s) {
  const Mat2 a2 = Mat2::diag(s.alpha, 1.0 - s.alpha);
  const Mat2 a2inv = Mat2::diag(1.0 / s.alpha, 1.0 / (1.0 - s.alpha));
  return a2inv * s.P * a2;
}

Vec2 transform_magnetization(const SpectralData& s, double s1, double s2) {
  return magnetization_transform(s) * Vec2{s1, s2};
}

}  // namespace cbl
