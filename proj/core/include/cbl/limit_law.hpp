#pragma once

// Product law proportional to exp(-xi1 x1^2 - xi2 x2^4): a centred Gaussian
// in the first coordinate times a quartic-exponential law in the second.

namespace cbl {

struct TransformedModel;

struct LimitMoments {
  double var_x1 = 0;
  double var_x2 = 0;
  double fourth_x2 = 0;
  /// E[x2^4] / E[x2^2]^2, the same for every xi2.
  double kurtosis_x2 = 0;
};

/// Gamma(1/4)^2 / (4 Gamma(3/4)^2) ~ 2.18844.
double quartic_kurtosis();

class LimitLaw {
 public:
  /// Throws DomainError unless xi1 > 0 and xi2 > 0.
  LimitLaw(double xi1, double xi2);
  explicit LimitLaw(const TransformedModel& tm);

  double xi1() const { return xi1_; }
  double xi2() const { return xi2_; }
  /// log of the integral of exp(-xi1 x1^2 - xi2 x2^4) over R^2.
  double log_norm() const { return log_norm_; }

  /// sqrt(pi/xi1) * Gamma(1/4) / 2 * xi2^(-1/4)
  double normalizing_integral() const;

  double density(double x1, double x2) const;
  double pdf_x1(double x) const;
  double pdf_x2(double x) const;

  double marginal_cdf_x1(double t) const;
  /// Closed form through the regularized incomplete gamma function P(1/4, xi2 t^4).
  double marginal_cdf_x2(double t) const;

  double quantile_x1(double u) const;
  double quantile_x2(double u) const;

  LimitMoments moments() const;

  /// Truncation half-widths used for quadrature of each factor; the tails
  /// beyond them are below 1e-14.
  double gaussian_half_width() const;
  double quartic_half_width() const;

 private:
  double xi1_;
  double xi2_;
  double log_norm_;
  double log_norm_x1_;
  double log_norm_x2_;
};

}  // namespace cbl
