#pragma once

// Hessian of the pressure functional at the origin, its 2x2 eigen-structure,
// the rotated functional G~(x) = G(P^-1 x) and the closed-form coefficients of
// the critical scaling limit.

#include "cbl/mat2.hpp"
#include "cbl/model.hpp"

namespace cbl {

struct Hessian {
  double h11 = 0;
  double h12 = 0;
  double h22 = 0;

  Mat2 matrix() const { return {h11, h12, h12, h22}; }
};

/// Eigen-structure of the Hessian at the origin. Rows of P are the
/// normalized eigenvectors, v_max first, so that P H P^T = diag(lambda_max, lambda_min).
struct SpectralData {
  double alpha = 0.5;
  Hessian hessian;
  double lambda_max = 0;
  double lambda_min = 0;
  Vec2 v_max{};
  Vec2 v_min{};
  Mat2 P;
  /// diag(sqrt(alpha), sqrt(1 - alpha))
  Mat2 A;
};

/// Coefficients of G~: quadratic part J~ and the two log-cosh arguments.
struct GTildeCoefficients {
  double jt11 = 0, jt12 = 0, jt22 = 0;
  double a1 = 0, a2 = 0;
  double b1 = 0, b2 = 0;

  Mat2 jt() const { return {jt11, jt12, jt12, jt22}; }
};

/// G~ coefficients together with the limit-law coefficients.
struct TransformedModel {
  GTildeCoefficients coeffs;
  double lambda_max = 0;
  double zeta1 = 0;
  double zeta2 = 0;
  /// Limiting variance of the stiff component.
  double d = 0;
  double xi1 = 0;
  double xi2 = 0;
};

/// Closed-form Hessian of G at the origin.
Hessian hessian_at_origin(const ModelParams& p);

/// Throws DegenerateHessian if h.h12 == 0.
SpectralData eigen_decompose(const Hessian& h, double alpha);

inline SpectralData spectral_data(const ModelParams& p) {
  return eigen_decompose(hessian_at_origin(p), p.alpha);
}

/// Explicit-formula route to the G~ coefficients.
GTildeCoefficients transformed_coefficients(const ModelParams& p, const SpectralData& s);

/// G~(x) = G(P^T x). In builds without NDEBUG this also evaluates the
/// explicit-coefficient route and throws InternalError on disagreement.
double transformed_functional(const ModelParams& p, const SpectralData& s, double x1, double x2);

/// G~ from its coefficients.
double transformed_functional(double alpha, const GTildeCoefficients& c, double x1, double x2);

/// Evaluates both routes; throws InternalError if they differ by more than
/// 1e-10 * max(1, |G~|). Returns the composition value.
double transformed_functional_checked(const ModelParams& p, const SpectralData& s, double x1,
                                      double x2);

/// Hessian at the origin of Phi(x) = 1/2 <J~ x, x> - G~(x).
Mat2 phi_hessian_at_origin(const GTildeCoefficients& c, const SpectralData& s);

/// d through the Phi route: alpha det(H_Phi) / (lambda_max det J~).
double variance_from_phi_hessian(const GTildeCoefficients& c, const SpectralData& s);

/// zeta1, zeta2, d, xi1 = 1/(2d), xi2 = zeta2.
/// Throws NotCritical if p fails the critical conditions (at tol_critical) or
/// |lambda_min| > tol_eigen; NonPositiveCoefficient if zeta1, zeta2 or d <= 0.
TransformedModel limit_coefficients(const ModelParams& p, const SpectralData& s,
                                    double tol_critical = kTolCritical,
                                    double tol_eigen = kTolEigen);

/// The linear map (A^2)^-1 P A^2 acting on (S1, S2).
Mat2 magnetization_transform(const SpectralData& s);

Vec2 transform_magnetization(const SpectralData& s, double s1, double s2);

}  // namespace cbl
