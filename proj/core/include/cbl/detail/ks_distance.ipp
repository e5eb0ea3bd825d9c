#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace cbl {

template <class Cdf>
double ks_distance(std::vector<std::pair<double, double>> atoms, Cdf&& cdf) {
  std::erase_if(atoms, [](const auto& a) { return !(a.second > 0); });
  std::sort(atoms.begin(), atoms.end());
  double below = 0;
  double worst = 0;
  std::size_t i = 0;
  while (i < atoms.size()) {
    const double v = atoms[i].first;
    double mass = 0;
    for (; i < atoms.size() && atoms[i].first == v; ++i) mass += atoms[i].second;
    const double f = cdf(v);
    worst = std::max({worst, std::fabs(below - f), std::fabs(below + mass - f)});
    below += mass;
  }
  return std::min(worst, 1.0);
}

}  // namespace cbl
