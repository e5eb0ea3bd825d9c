#include "cbl/exact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cbl/errors.hpp"
#include "cbl/limit_law.hpp"
#include "cbl/parallel.hpp"

namespace cbl {

void SystemSize::validate() const {
  if (n1 < 1 || n2 < 1)
    throw std::invalid_argument("SystemSize: n1 and n2 must be >= 1 (got " + std::to_string(n1) +
                                ", " + std::to_string(n2) + ")");
}

SystemSize SystemSize::split(int n, double alpha) {
  const int n1 = static_cast<int>(std::lround(alpha * n));
  SystemSize sz{n1, n - n1};
  sz.validate();
  return sz;
}

MagnetizationPmf::MagnetizationPmf(SystemSize sizes, std::vector<double> log_weights,
                                   std::vector<double> probabilities, double log_partition)
    : sizes_(sizes),
      log_weights_(std::move(log_weights)),
      probabilities_(std::move(probabilities)),
      log_partition_(log_partition) {
  if (log_weights_.size() != size() || probabilities_.size() != size())
    throw std::invalid_argument("MagnetizationPmf: table size does not match the lattice");
}

double MagnetizationPmf::prob(int k1, int k2) const {
  if (std::abs(k1) > sizes_.n1 || std::abs(k2) > sizes_.n2) return 0.0;
  if ((k1 + sizes_.n1) % 2 != 0 || (k2 + sizes_.n2) % 2 != 0) return 0.0;
  const auto row = static_cast<std::size_t>((k1 + sizes_.n1) / 2);
  const auto col = static_cast<std::size_t>((k2 + sizes_.n2) / 2);
  return probabilities_[index(row, col)];
}

namespace {

std::vector<double> log_factorials(int n) {
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
  long double acc = 0;
  for (int i = 2; i <= n; ++i) {
    acc += std::log(static_cast<long double>(i));
    out[static_cast<std::size_t>(i)] = static_cast<double>(acc);
  }
  return out;
}

// log C(n, i) for i = 0..n. lf[i] + lf[n-i] is commutative, so row i and
// row n-i get bit-identical values.
std::vector<double> log_binomials(int n, const std::vector<double>& lf) {
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    out[static_cast<std::size_t>(i)] =
        lf[static_cast<std::size_t>(n)] -
        (lf[static_cast<std::size_t>(i)] + lf[static_cast<std::size_t>(n - i)]);
  return out;
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 16) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

}  // namespace

MagnetizationPmf exact_pmf(const ModelParams& p, SystemSize sz, std::size_t budget) {
  sz.validate();
  const std::size_t rows = static_cast<std::size_t>(sz.n1) + 1;
  const std::size_t cols = static_cast<std::size_t>(sz.n2) + 1;
  if (rows * cols > budget)
    throw BudgetExceeded("exact_pmf: lattice of " + std::to_string(rows * cols) +
                         " points exceeds budget " + std::to_string(budget));

  const auto lf = log_factorials(std::max(sz.n1, sz.n2));
  const auto lb1 = log_binomials(sz.n1, lf);
  const auto lb2 = log_binomials(sz.n2, lf);
  const double inv_2n = 1.0 / (2.0 * sz.n());

  std::vector<double> logw(rows * cols);
  std::vector<double> row_max(rows);
  parallel_for(rows, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::int64_t k1 = -sz.n1 + 2 * static_cast<std::int64_t>(i);
      double m = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < cols; ++j) {
        const std::int64_t k2 = -sz.n2 + 2 * static_cast<std::int64_t>(j);
        const double q = p.j11 * static_cast<double>(k1 * k1) +
                         2.0 * p.j12 * static_cast<double>(k1 * k2) +
                         p.j22 * static_cast<double>(k2 * k2);
        const double lw = lb1[i] + lb2[j] + q * inv_2n;
        logw[i * cols + j] = lw;
        m = std::max(m, lw);
      }
      row_max[i] = m;
    }
  });
  const double shift = *std::max_element(row_max.begin(), row_max.end());

  std::vector<double> row_sum(rows);
  parallel_for(rows, [&](std::size_t begin, std::size_t end) {
    std::vector<double> buf(cols);
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = 0; j < cols; ++j) buf[j] = std::exp(logw[i * cols + j] - shift);
      row_sum[i] = pairwise_sum(buf.data(), cols);
    }
  });
  const double log_z = shift + std::log(pairwise_sum(row_sum.data(), rows));

  std::vector<double> probs(rows * cols);
  parallel_for(rows, [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin * cols; idx < end * cols; ++idx)
      probs[idx] = std::exp(logw[idx] - log_z);
  });

  return MagnetizationPmf(sz, std::move(logw), std::move(probs), log_z);
}

double pressure(const MagnetizationPmf& pmf) { return pmf.log_partition() / pmf.sizes().n(); }

WeightedPoints rescaled_transformed_pmf(const MagnetizationPmf& pmf, const SpectralData& s,
                                        ScalingExponents exps) {
  const Mat2 t = magnetization_transform(s);
  const double c1 = std::pow(static_cast<double>(pmf.sizes().n1), -exps.e1);
  const double c2 = std::pow(static_cast<double>(pmf.sizes().n2), -exps.e2);
  const auto probs = pmf.probabilities();
  WeightedPoints out(pmf.size());
  for (std::size_t i = 0; i < pmf.rows(); ++i) {
    const double k1 = pmf.k1(i);
    for (std::size_t j = 0; j < pmf.cols(); ++j) {
      const double k2 = pmf.k2(j);
      const std::size_t idx = pmf.index(i, j);
      out[idx] = {(t.a11 * k1 + t.a12 * k2) * c1, (t.a21 * k1 + t.a22 * k2) * c2, probs[idx]};
    }
  }
  return out;
}

namespace {

// Neumaier-compensated accumulator.
struct Accumulator {
  double sum = 0;
  double comp = 0;
  void add(double v) {
    const double t = sum + v;
    comp += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

EmpiricalSummary summarize_moments(const WeightedPoints& pts) {
  Accumulator mass, m1, m2, s11, s22, s12, f22;
  for (const auto& w : pts) {
    mass.add(w.p);
    m1.add(w.p * w.x1);
    m2.add(w.p * w.x2);
    s11.add(w.p * w.x1 * w.x1);
    s22.add(w.p * w.x2 * w.x2);
    s12.add(w.p * w.x1 * w.x2);
    const double x2sq = w.x2 * w.x2;
    f22.add(w.p * x2sq * x2sq);
  }
  const double total = mass.value();
  EmpiricalSummary out;
  out.mean_x1 = m1.value() / total;
  out.mean_x2 = m2.value() / total;
  const double e11 = s11.value() / total;
  const double e22 = s22.value() / total;
  const double e12 = s12.value() / total;
  out.var_x1 = e11 - out.mean_x1 * out.mean_x1;
  out.var_x2 = e22 - out.mean_x2 * out.mean_x2;
  out.fourth_x2 = f22.value() / total;
  out.kurtosis_x2 = out.fourth_x2 / (e22 * e22);
  out.cross_corr = (e12 - out.mean_x1 * out.mean_x2) / std::sqrt(out.var_x1 * out.var_x2);
  return out;
}

EmpiricalSummary summarize(const WeightedPoints& pts, const TransformedModel& tm) {
  EmpiricalSummary out = summarize_moments(pts);
  const LimitLaw law(tm);
  std::vector<std::pair<double, double>> atoms(pts.size());
  std::transform(pts.begin(), pts.end(), atoms.begin(),
                 [](const WeightedPoint& w) { return std::pair{w.x1, w.p}; });
  out.ks_x1 = ks_distance(atoms, [&](double t) { return law.marginal_cdf_x1(t); });
  std::transform(pts.begin(), pts.end(), atoms.begin(),
                 [](const WeightedPoint& w) { return std::pair{w.x2, w.p}; });
  out.ks_x2 = ks_distance(std::move(atoms), [&](double t) { return law.marginal_cdf_x2(t); });
  return out;
}

}  // namespace cbl
