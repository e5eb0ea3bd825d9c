#pragma once

// Exact finite-N distribution of the magnetization vector (S1, S2) under the
// Boltzmann-Gibbs measure, by enumeration of the (N1+1) x (N2+1) lattice.
//
// Weights use the counting measure on spin values (weight 1 per value, not
// 1/2), so the finite-N pressure N^-1 ln Z_N tends to ln 2 - inf G.
// Probabilities do not depend on this choice.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "cbl/model.hpp"
#include "cbl/spectral.hpp"

namespace cbl {

struct SystemSize {
  int n1 = 1;
  int n2 = 1;

  int n() const { return n1 + n2; }
  double alpha_effective() const { return static_cast<double>(n1) / n(); }
  /// Throws std::invalid_argument unless n1 >= 1 and n2 >= 1.
  void validate() const;
  /// n1 = round(alpha n), n2 = n - n1.
  static SystemSize split(int n, double alpha);

  bool operator==(const SystemSize&) const = default;
};

inline constexpr std::size_t kDefaultLatticeBudget = 100'000'000;

/// Joint pmf over the lattice k1 in {-N1, -N1+2, ..., N1}, k2 likewise.
/// Tables are row-major with row i <-> k1 = -N1 + 2i and column j <-> k2 = -N2 + 2j.
class MagnetizationPmf {
 public:
  MagnetizationPmf(SystemSize sizes, std::vector<double> log_weights,
                   std::vector<double> probabilities, double log_partition);

  const SystemSize& sizes() const { return sizes_; }
  std::size_t rows() const { return static_cast<std::size_t>(sizes_.n1) + 1; }
  std::size_t cols() const { return static_cast<std::size_t>(sizes_.n2) + 1; }
  std::size_t size() const { return rows() * cols(); }

  int k1(std::size_t row) const { return -sizes_.n1 + 2 * static_cast<int>(row); }
  int k2(std::size_t col) const { return -sizes_.n2 + 2 * static_cast<int>(col); }
  std::size_t index(std::size_t row, std::size_t col) const { return row * cols() + col; }

  std::span<const double> log_weights() const { return log_weights_; }
  std::span<const double> probabilities() const { return probabilities_; }
  /// log of the counting-measure partition sum.
  double log_partition() const { return log_partition_; }

  /// Probability of (S1, S2) = (k1, k2); 0 off the lattice or for wrong parity.
  double prob(int k1, int k2) const;

 private:
  SystemSize sizes_;
  std::vector<double> log_weights_;
  std::vector<double> probabilities_;
  double log_partition_;
};

/// Enumerates weight(k1, k2) = C(N1,(N1+k1)/2) C(N2,(N2+k2)/2) exp(<J k, k>/(2N))
/// in the log domain and normalizes by a log-sum-exp with pairwise summation.
/// The result does not depend on the number of threads.
/// Throws BudgetExceeded if the lattice has more than `budget` points.
MagnetizationPmf exact_pmf(const ModelParams& p, SystemSize sz,
                           std::size_t budget = kDefaultLatticeBudget);

/// N^-1 ln Z_N under the counting measure.
double pressure(const MagnetizationPmf& pmf);

struct WeightedPoint {
  double x1 = 0;
  double x2 = 0;
  double p = 0;
};

using WeightedPoints = std::vector<WeightedPoint>;

struct ScalingExponents {
  double e1 = 0.5;
  double e2 = 0.75;
};

/// Pushes the pmf through S -> (A^2)^-1 P A^2 S and divides component l by N_l^{e_l}.
/// The default exponents give the critical rescaling (1/2, 3/4).
WeightedPoints rescaled_transformed_pmf(const MagnetizationPmf& pmf, const SpectralData& s,
                                        ScalingExponents exps = {});

struct EmpiricalSummary {
  double mean_x1 = 0;
  double mean_x2 = 0;
  double var_x1 = 0;
  double var_x2 = 0;
  double fourth_x2 = 0;
  /// E[x2^4] / E[x2^2]^2
  double kurtosis_x2 = 0;
  double cross_corr = 0;
  /// Sup-distances of the marginal CDFs to the limit law; NaN when no law was given.
  double ks_x1 = std::numeric_limits<double>::quiet_NaN();
  double ks_x2 = std::numeric_limits<double>::quiet_NaN();
};

/// Moments only.
EmpiricalSummary summarize_moments(const WeightedPoints& pts);

/// Moments and exact KS distances against LimitLaw(tm).
EmpiricalSummary summarize(const WeightedPoints& pts, const TransformedModel& tm);

/// Exact sup |F_step - F| for the step CDF of the weighted atoms vs a
/// continuous CDF F, checked on both sides of every jump.
template <class Cdf>
double ks_distance(std::vector<std::pair<double, double>> atoms, Cdf&& cdf);

}  // namespace cbl

#include "cbl/detail/ks_distance.ipp"
