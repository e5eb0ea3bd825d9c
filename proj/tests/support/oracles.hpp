#pragma once

// Independent reference computations used only by the tests: brute-force
// spin enumeration, finite differences, bisection, random parameter draws.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "cbl/model.hpp"

namespace oracle {

/// Joint pmf of (S1, S2) and partition sum from all 2^N spin configurations,
/// using the pairwise form -H = (1/2N) sum_ij J_ij s_i s_j.
struct BruteForce {
  std::map<std::pair<int, int>, double> prob;
  double z = 0;
};

inline BruteForce brute_force_pmf(const cbl::ModelParams& p, int n1, int n2) {
  const int n = n1 + n2;
  std::map<std::pair<int, int>, double> weight;
  double z = 0;
  std::vector<int> spin(static_cast<std::size_t>(n));
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    for (int i = 0; i < n; ++i) spin[static_cast<std::size_t>(i)] = (mask >> i) & 1u ? 1 : -1;
    double pair_sum = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const bool gi = i < n1;
        const bool gj = j < n1;
        const double jij = gi && gj ? p.j11 : (!gi && !gj ? p.j22 : p.j12);
        pair_sum += jij * spin[static_cast<std::size_t>(i)] * spin[static_cast<std::size_t>(j)];
      }
    }
    int s1 = 0;
    int s2 = 0;
    for (int i = 0; i < n; ++i) (i < n1 ? s1 : s2) += spin[static_cast<std::size_t>(i)];
    const double w = std::exp(pair_sum / (2.0 * n));
    weight[{s1, s2}] += w;
    z += w;
  }
  BruteForce out;
  out.z = z;
  for (const auto& [k, w] : weight) out.prob[k] = w / z;
  return out;
}

using F2 = std::function<double(double, double)>;

inline double d1_x(const F2& f, double x, double y, double h) {
  return (f(x + h, y) - f(x - h, y)) / (2 * h);
}
inline double d1_y(const F2& f, double x, double y, double h) {
  return (f(x, y + h) - f(x, y - h)) / (2 * h);
}

/// Second derivative along direction (ux, uy), Richardson-extrapolated.
inline double d2_dir(const F2& f, double x, double y, double ux, double uy, double h) {
  auto c = [&](double s) {
    return (f(x + s * ux, y + s * uy) - 2 * f(x, y) + f(x - s * ux, y - s * uy)) / (s * s);
  };
  return (4 * c(h / 2) - c(h)) / 3;
}

inline double d2_mixed(const F2& f, double x, double y, double h) {
  auto c = [&](double s) {
    return (f(x + s, y + s) - f(x + s, y - s) - f(x - s, y + s) + f(x - s, y - s)) / (4 * s * s);
  };
  return (4 * c(h / 2) - c(h)) / 3;
}

/// Fourth derivative along direction (ux, uy), Richardson-extrapolated.
inline double d4_dir(const F2& f, double x, double y, double ux, double uy, double h) {
  auto g = [&](double s) { return f(x + s * ux, y + s * uy); };
  auto c = [&](double s) {
    return (g(2 * s) - 4 * g(s) + 6 * g(0) - 4 * g(-s) + g(-2 * s)) / (s * s * s * s);
  };
  return (4 * c(h / 2) - c(h)) / 3;
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Random critical parameters: alpha in [0.15, 0.85], J11 < 1/alpha,
/// J22 < 1/(1-alpha), alpha J11 + (1-alpha) J22 > 1, J12 from the equality.
inline cbl::ModelParams random_critical(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ua(0.15, 0.85);
  std::uniform_real_distribution<double> u01(0.05, 0.95);
  for (;;) {
    const double a = ua(rng);
    const double j11 = u01(rng) / a;
    const double j22 = u01(rng) / (1 - a);
    if (a * j11 + (1 - a) * j22 <= 1.05) continue;
    const int sign = (rng() & 1u) ? 1 : -1;
    return cbl::make_critical(a, j11, j22, sign);
  }
}

/// Random parameters with positive diagonal and any sign of J12.
inline cbl::ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ua(0.1, 0.9);
  std::uniform_real_distribution<double> uj(0.1, 3.0);
  std::uniform_real_distribution<double> u12(-2.0, 2.0);
  return {ua(rng), uj(rng), uj(rng), u12(rng)};
}

}  // namespace oracle
