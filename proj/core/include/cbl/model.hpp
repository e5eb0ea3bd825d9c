#pragma once

// Two-group mean-field spin model: parameters, pressure functional,
// mean-field equations and the critical-parameter conditions.

#include <array>
#include <string>
#include <vector>

namespace cbl {

/// Tolerance on the critical equality for parameters built by solve_critical_j12.
inline constexpr double kTolCritical = 1e-12;

/// Tolerance for declaring the smallest Hessian eigenvalue zero.
inline constexpr double kTolEigen = 1e-10;

/// Model parameters (alpha, J11, J22, J12). alpha is the relative size N1/N
/// of the first group; J is the reduced interaction matrix.
struct ModelParams {
  double alpha = 0.5;
  double j11 = 0.0;
  double j22 = 0.0;
  double j12 = 0.0;

  /// True iff J is positive definite.
  bool is_positive_definite() const;

  /// Throws DomainError unless 0 < alpha < 1, j11 > 0, j22 > 0 and all finite.
  /// The enumeration and sampling engines accept J = 0 and do not call this.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

/// Numerically stable log(cosh(z)), accurate in relative terms near zero.
double log_cosh(double z);

/// Pressure functional G(x1, x2), defined on all of R^2.
double pressure_functional(const ModelParams& p, double x1, double x2);

/// (x1 - tanh(.), x2 - tanh(.)): vanishes exactly at stationary points of G.
/// The gradient of G equals A^2 J A^2 times this residual, A^2 = diag(alpha, 1-alpha).
std::array<double, 2> mean_field_residual(const ModelParams& p, double x1, double x2);

/// Values of the two inverted mean-field curves at x.
struct CurvePoint {
  double x = 0;
  double f1 = 0;
  double f2 = 0;
};

/// f1(x) = (atanh x - alpha J11 x)/((1-alpha)J12), f2(x) = (atanh x - (1-alpha)J22 x)/(alpha J12).
/// Throws DomainError if |x| >= 1, DegenerateError if J12 == 0.
CurvePoint inverted_curves(const ModelParams& p, double x);

/// Counts solutions of the mean-field system by locating sign changes of
/// r(x) = x - f2(f1(x)) on a uniform grid of grid_n points over (-1, 1).
/// The origin is counted once and each symmetric pair twice.
/// Throws GridTooCoarse when a cell hides two roots, DegenerateError if J12 == 0,
/// std::invalid_argument if grid_n < 1000.
int count_mean_field_solutions(const ModelParams& p, int grid_n);

/// Outcome of checking the five critical conditions plus positive definiteness.
struct CriticalityReport {
  bool j12_nonzero = false;
  bool j11_below_inverse_alpha = false;
  bool j22_below_inverse_complement = false;
  bool equality_holds = false;
  bool trace_exceeds_one = false;
  bool positive_definite = false;
  bool lambda_min_is_zero = false;
  /// (1 - alpha J11)(1 - (1-alpha)J22) - alpha(1-alpha)J12^2
  double residual = 0;
  double lambda_min = 0;

  bool five_conditions() const {
    return j12_nonzero && j11_below_inverse_alpha && j22_below_inverse_complement &&
           equality_holds && trace_exceeds_one;
  }
  bool all() const { return five_conditions() && positive_definite && lambda_min_is_zero; }

  /// Human-readable names of the conditions that fail.
  std::vector<std::string> violations() const;
};

CriticalityReport check_critical_conditions(const ModelParams& p, double tol = kTolCritical,
                                            double tol_eigen = kTolEigen);

/// sign * sqrt((1 - alpha J11)(1 - (1-alpha)J22) / (alpha(1-alpha))).
/// Throws NoCriticalPoint when the radicand is not positive or the trace
/// condition alpha J11 + (1-alpha) J22 > 1 fails.
double solve_critical_j12(double alpha, double j11, double j22, int sign);

/// Convenience: critical ModelParams with J12 from solve_critical_j12.
ModelParams make_critical(double alpha, double j11, double j22, int sign = 1);

}  // namespace cbl
