#include "cbl/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "cbl/errors.hpp"
#include "cbl/spectral.hpp"

namespace cbl {

bool ModelParams::is_positive_definite() const {
  return j11 > 0 && j11 * j22 - j12 * j12 > 0;
}

void ModelParams::validate() const {
  if (!(std::isfinite(alpha) && std::isfinite(j11) && std::isfinite(j22) && std::isfinite(j12)))
    throw DomainError("model parameters must be finite");
  if (!(alpha > 0 && alpha < 1)) throw DomainError("alpha must lie in (0, 1)");
  if (!(j11 > 0)) throw DomainError("j11 must be strictly positive");
  if (!(j22 > 0)) throw DomainError("j22 must be strictly positive");
}

double log_cosh(double z) {
  const double a = std::fabs(z);
  if (a < 1.0) {
    // cosh(a) - 1 = 2 sinh^2(a/2), kept exact to relative precision
    const double s = std::sinh(0.5 * a);
    return std::log1p(2.0 * s * s);
  }
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double pressure_functional(const ModelParams& p, double x1, double x2) {
  const double a = p.alpha;
  const double b = 1.0 - a;
  const double quad =
      0.5 * (a * a * p.j11 * x1 * x1 + 2.0 * a * b * p.j12 * x1 * x2 + b * b * p.j22 * x2 * x2);
  return quad - a * log_cosh(a * p.j11 * x1 + b * p.j12 * x2) -
         b * log_cosh(a * p.j12 * x1 + b * p.j22 * x2);
}

std::array<double, 2> mean_field_residual(const ModelParams& p, double x1, double x2) {
  const double a = p.alpha;
  const double b = 1.0 - a;
  return {x1 - std::tanh(a * p.j11 * x1 + b * p.j12 * x2),
          x2 - std::tanh(a * p.j12 * x1 + b * p.j22 * x2)};
}

CurvePoint inverted_curves(const ModelParams& p, double x) {
  if (!(std::fabs(x) < 1.0)) throw DomainError("inverted_curves: |x| must be < 1");
  if (p.j12 == 0.0) throw DegenerateError("inverted_curves: J12 == 0");
  const double a = p.alpha;
  const double b = 1.0 - a;
  const double at = std::atanh(x);
  return {x, (at - a * p.j11 * x) / (b * p.j12), (at - b * p.j22 * x) / (a * p.j12)};
}

namespace {

constexpr double kEdge = 1.0 - 1e-12;

int sign_of(double v) { return (v > 0) - (v < 0); }

// r(x) = x - f2(f1(x)); empty where f1(x) leaves the open square.
std::optional<double> composed_residual(const ModelParams& p, double x) {
  const double a = p.alpha;
  const double b = 1.0 - a;
  const double xc = std::clamp(x, -kEdge, kEdge);
  const double y = (std::atanh(xc) - a * p.j11 * xc) / (b * p.j12);
  if (!(std::fabs(y) < kEdge)) return std::nullopt;
  return xc - (std::atanh(y) - b * p.j22 * y) / (a * p.j12);
}

}  // namespace

int count_mean_field_solutions(const ModelParams& p, int grid_n) {
  if (grid_n < 1000) throw std::invalid_argument("count_mean_field_solutions: grid_n < 1000");
  if (p.j12 == 0.0) throw DegenerateError("count_mean_field_solutions: J12 == 0");

  // r is odd, so the positive half-grid suffices: each root found there has a
  // mirror image, and the origin is always a root.
  const int half = grid_n / 2;
  const double h = kEdge / half;
  int positive_roots = 0;
  std::optional<double> prev;
  for (int i = 1; i <= half; ++i) {
    const double x = h * i;
    const auto r = composed_residual(p, x);
    if (r && prev) {
      const int sp = sign_of(*prev);
      const int sr = sign_of(*r);
      if ((sp * sr < 0) || (sr == 0 && sp != 0)) {
        ++positive_roots;
      } else if (sp != 0 && sp == sr) {
        const auto mid = composed_residual(p, x - 0.5 * h);
        if (mid && sign_of(*mid) == -sp)
          throw GridTooCoarse("count_mean_field_solutions: two roots within one cell near x = " +
                              std::to_string(x));
      }
    }
    prev = r;
  }
  return 1 + 2 * positive_roots;
}

std::vector<std::string> CriticalityReport::violations() const {
  std::vector<std::string> out;
  if (!j12_nonzero) out.emplace_back("J12 != 0");
  if (!j11_below_inverse_alpha) out.emplace_back("J11 < 1/alpha");
  if (!j22_below_inverse_complement) out.emplace_back("J22 < 1/(1-alpha)");
  if (!equality_holds)
    out.emplace_back("(1-alpha J11)(1-(1-alpha)J22) = alpha(1-alpha)J12^2");
  if (!trace_exceeds_one) out.emplace_back("alpha J11 + (1-alpha)J22 - 1 > 0");
  if (!positive_definite) out.emplace_back("J positive definite");
  if (!lambda_min_is_zero) out.emplace_back("lambda_min == 0");
  return out;
}

CriticalityReport check_critical_conditions(const ModelParams& p, double tol, double tol_eigen) {
  if (!(tol > 0)) throw std::invalid_argument("check_critical_conditions: tol must be > 0");
  const double a = p.alpha;
  const double b = 1.0 - a;
  CriticalityReport r;
  r.j12_nonzero = p.j12 != 0.0;
  r.j11_below_inverse_alpha = p.j11 < 1.0 / a;
  r.j22_below_inverse_complement = p.j22 < 1.0 / b;
  r.residual = (1.0 - a * p.j11) * (1.0 - b * p.j22) - a * b * p.j12 * p.j12;
  r.equality_holds = std::fabs(r.residual) <= tol;
  r.trace_exceeds_one = a * p.j11 + b * p.j22 - 1.0 > 0;
  r.positive_definite = p.is_positive_definite();

  const Hessian h = hessian_at_origin(p);
  r.lambda_min =
      0.5 * (h.h11 + h.h22 - std::sqrt((h.h11 - h.h22) * (h.h11 - h.h22) + 4.0 * h.h12 * h.h12));
  r.lambda_min_is_zero = std::fabs(r.lambda_min) <= tol_eigen;
  return r;
}

double solve_critical_j12(double alpha, double j11, double j22, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("solve_critical_j12: sign must be +-1");
  if (!(alpha > 0 && alpha < 1)) throw NoCriticalPoint("solve_critical_j12: alpha outside (0, 1)");
  const double u = 1.0 - alpha * j11;
  const double w = 1.0 - (1.0 - alpha) * j22;
  if (!(u > 0)) throw NoCriticalPoint("solve_critical_j12: requires J11 < 1/alpha");
  if (!(w > 0)) throw NoCriticalPoint("solve_critical_j12: requires J22 < 1/(1-alpha)");
  if (!(alpha * j11 + (1.0 - alpha) * j22 > 1.0))
    throw NoCriticalPoint("solve_critical_j12: requires alpha J11 + (1-alpha) J22 > 1");
  return sign * std::sqrt(u * w / (alpha * (1.0 - alpha)));
}

ModelParams make_critical(double alpha, double j11, double j22, int sign) {
  return {alpha, j11, j22, solve_critical_j12(alpha, j11, j22, sign)};
}

}  // namespace cbl
