#include "cbl/limit_law.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "cbl/errors.hpp"
#include "cbl/spectral.hpp"

namespace cbl {

namespace {
const double kGammaQuarter = std::tgamma(0.25);
const double kGammaThreeQuarters = std::tgamma(0.75);
}  // namespace

double quartic_kurtosis() {
  return kGammaQuarter * kGammaQuarter / (4.0 * kGammaThreeQuarters * kGammaThreeQuarters);
}

LimitLaw::LimitLaw(double xi1, double xi2) : xi1_(xi1), xi2_(xi2) {
  if (!(xi1 > 0 && std::isfinite(xi1))) throw DomainError("LimitLaw: xi1 must be > 0");
  if (!(xi2 > 0 && std::isfinite(xi2))) throw DomainError("LimitLaw: xi2 must be > 0");
  log_norm_x1_ = 0.5 * std::log(std::numbers::pi / xi1_);
  log_norm_x2_ = std::log(0.5 * kGammaQuarter) - 0.25 * std::log(xi2_);
  log_norm_ = log_norm_x1_ + log_norm_x2_;
}

LimitLaw::LimitLaw(const TransformedModel& tm) : LimitLaw(tm.xi1, tm.xi2) {}

double LimitLaw::normalizing_integral() const { return std::exp(log_norm_); }

double LimitLaw::density(double x1, double x2) const { return pdf_x1(x1) * pdf_x2(x2); }

double LimitLaw::pdf_x1(double x) const { return std::exp(-xi1_ * x * x - log_norm_x1_); }

double LimitLaw::pdf_x2(double x) const {
  const double x2 = x * x;
  return std::exp(-xi2_ * x2 * x2 - log_norm_x2_);
}

double LimitLaw::marginal_cdf_x1(double t) const {
  return 0.5 * std::erfc(-t * std::sqrt(xi1_));
}

double LimitLaw::marginal_cdf_x2(double t) const {
  if (t == 0.0) return 0.5;
  const double t2 = t * t;
  const double z = xi2_ * t2 * t2;
  if (t < 0) return 0.5 * boost::math::gamma_q(0.25, z);
  return 0.5 + 0.5 * boost::math::gamma_p(0.25, z);
}

double LimitLaw::quantile_x1(double u) const {
  if (!(u > 0 && u < 1)) throw DomainError("quantile_x1: u must lie in (0, 1)");
  // erfc(-t sqrt(xi1)) = 2u
  return -boost::math::erfc_inv(2.0 * u) / std::sqrt(xi1_);
}

double LimitLaw::quantile_x2(double u) const {
  if (!(u > 0 && u < 1)) throw DomainError("quantile_x2: u must lie in (0, 1)");
  if (u == 0.5) return 0.0;
  const double z = u < 0.5 ? boost::math::gamma_q_inv(0.25, 2.0 * u)
                           : boost::math::gamma_p_inv(0.25, 2.0 * u - 1.0);
  const double t = std::pow(z / xi2_, 0.25);
  return u < 0.5 ? -t : t;
}

LimitMoments LimitLaw::moments() const {
  LimitMoments m;
  m.var_x1 = 1.0 / (2.0 * xi1_);
  m.var_x2 = kGammaThreeQuarters / (kGammaQuarter * std::sqrt(xi2_));
  m.fourth_x2 = 1.0 / (4.0 * xi2_);
  m.kurtosis_x2 = quartic_kurtosis();
  return m;
}

double LimitLaw::gaussian_half_width() const { return 12.0 / std::sqrt(2.0 * xi1_); }

double LimitLaw::quartic_half_width() const { return 12.0 * std::pow(xi2_, -0.25); }

}  // namespace cbl
