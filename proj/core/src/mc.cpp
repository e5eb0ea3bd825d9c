#include "cbl/mc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "cbl/parallel.hpp"

namespace cbl {

std::uint64_t splitmix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t chain_seed(std::uint64_t seed, std::uint64_t chain_index) {
  return splitmix64(seed + (chain_index + 1) * 0x9E3779B97F4A7C15ULL);
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  // reject the top partial block so every residue is equally likely
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

void ChainConfig::validate() const {
  if (burn_in < 0) throw std::invalid_argument("ChainConfig: burn_in must be >= 0");
  if (sweeps <= burn_in) throw std::invalid_argument("ChainConfig: sweeps must exceed burn_in");
  if (thinning < 1) throw std::invalid_argument("ChainConfig: thinning must be >= 1");
  if (n_chains < 1) throw std::invalid_argument("ChainConfig: n_chains must be >= 1");
}

double energy(const ModelParams& p, SystemSize sz, MagnetizationState s) {
  const double q = p.j11 * s.s1 * s.s1 + 2.0 * p.j12 * s.s1 * s.s2 + p.j22 * s.s2 * s.s2;
  return -q / (2.0 * sz.n());
}

double energy_change(const ModelParams& p, SystemSize sz, MagnetizationState s, int group,
                     int delta) {
  const std::int64_t d = delta;
  const std::int64_t a = s.s1;
  const std::int64_t b = s.s2;
  double dq;
  if (group == 0)
    dq = p.j11 * static_cast<double>(d * (2 * a + d)) + 2.0 * p.j12 * static_cast<double>(d * b);
  else
    dq = p.j22 * static_cast<double>(d * (2 * b + d)) + 2.0 * p.j12 * static_cast<double>(d * a);
  return -dq / (2.0 * sz.n());
}

double glauber_acceptance(double delta_h) { return 1.0 / (1.0 + std::exp(delta_h)); }

MagnetizationState glauber_step(MagnetizationState s, const ModelParams& p, SystemSize sz,
                                Rng& rng) {
  const auto idx = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(sz.n())));
  const int group = idx < sz.n1 ? 0 : 1;
  const int local = group == 0 ? idx : idx - sz.n1;
  const int n_group = group == 0 ? sz.n1 : sz.n2;
  const int m = group == 0 ? s.s1 : s.s2;
  const int ups = (n_group + m) / 2;
  const int delta = local < ups ? -2 : 2;
  const double acc = glauber_acceptance(energy_change(p, sz, s, group, delta));
  if (uniform01(rng) < acc) (group == 0 ? s.s1 : s.s2) += delta;
  return s;
}

namespace {

int random_magnetization(int n, Rng& rng) {
  int ups = 0;
  int left = n;
  while (left > 0) {
    std::uint64_t bits = rng();
    if (left < 64) bits &= (1ULL << left) - 1;
    ups += std::popcount(bits);
    left -= 64;
  }
  return 2 * ups - n;
}

template <class Sink>
void run_chain(const ModelParams& p, SystemSize sz, const ChainConfig& cfg, int chain,
               Sink&& sink) {
  Rng rng(chain_seed(cfg.seed, static_cast<std::uint64_t>(chain)));
  MagnetizationState s = random_initial_state(sz, rng);
  const int n = sz.n();
  for (std::int64_t sweep = 0; sweep < cfg.sweeps; ++sweep) {
    for (int k = 0; k < n; ++k) s = glauber_step(s, p, sz, rng);
    if (sweep >= cfg.burn_in && (sweep - cfg.burn_in) % cfg.thinning == 0) sink(sweep, s);
  }
}

std::size_t lattice_index(SystemSize sz, int s1, int s2) {
  return static_cast<std::size_t>((s1 + sz.n1) / 2) * (static_cast<std::size_t>(sz.n2) + 1) +
         static_cast<std::size_t>((s2 + sz.n2) / 2);
}

}  // namespace

MagnetizationState random_initial_state(SystemSize sz, Rng& rng) {
  const int s1 = random_magnetization(sz.n1, rng);
  const int s2 = random_magnetization(sz.n2, rng);
  return {s1, s2};
}

SampleBatch sample_direct(const MagnetizationPmf& pmf, std::size_t n_draws, std::uint64_t seed) {
  SampleBatch batch;
  batch.sizes = pmf.sizes();
  if (n_draws == 0) return batch;
  batch.config = ChainConfig{seed, static_cast<std::int64_t>(n_draws), 0, 1, 1};

  const auto probs = pmf.probabilities();
  std::vector<double> cdf(probs.size());
  double acc = 0;
  double comp = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double y = probs[i] - comp;
    const double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
    cdf[i] = acc;
  }
  const double total = cdf.back();

  Rng rng(seed);
  batch.draws.reserve(n_draws);
  for (std::size_t d = 0; d < n_draws; ++d) {
    const double u = uniform01(rng) * total;
    std::size_t idx =
        static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (idx == cdf.size()) {
      // u rounded up to the total: take the last cell with positive mass
      idx = cdf.size() - 1;
      while (idx > 0 && probs[idx] == 0.0) --idx;
    }
    const std::size_t row = idx / pmf.cols();
    const std::size_t col = idx % pmf.cols();
    batch.draws.push_back({0, static_cast<std::int64_t>(d), pmf.k1(row), pmf.k2(col)});
  }
  return batch;
}

SampleBatch run_chains(const ModelParams& p, SystemSize sz, const ChainConfig& cfg) {
  sz.validate();
  cfg.validate();
  std::vector<std::vector<Draw>> per_chain(static_cast<std::size_t>(cfg.n_chains));
  parallel_for(per_chain.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      auto& out = per_chain[c];
      out.reserve(static_cast<std::size_t>((cfg.sweeps - cfg.burn_in + cfg.thinning - 1) / cfg.thinning));
      run_chain(p, sz, cfg, static_cast<int>(c), [&](std::int64_t sweep, MagnetizationState s) {
        out.push_back({static_cast<int>(c), sweep, s.s1, s.s2});
      });
    }
  });
  SampleBatch batch;
  batch.config = cfg;
  batch.sizes = sz;
  for (auto& v : per_chain) batch.draws.insert(batch.draws.end(), v.begin(), v.end());
  return batch;
}

std::vector<std::uint64_t> chain_histogram(const ModelParams& p, SystemSize sz,
                                           const ChainConfig& cfg) {
  sz.validate();
  cfg.validate();
  const std::size_t cells = (static_cast<std::size_t>(sz.n1) + 1) * (static_cast<std::size_t>(sz.n2) + 1);
  std::vector<std::vector<std::uint64_t>> per_chain(static_cast<std::size_t>(cfg.n_chains),
                                                    std::vector<std::uint64_t>(cells, 0));
  parallel_for(per_chain.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      auto& h = per_chain[c];
      run_chain(p, sz, cfg, static_cast<int>(c), [&](std::int64_t, MagnetizationState s) {
        ++h[lattice_index(sz, s.s1, s.s2)];
      });
    }
  });
  std::vector<std::uint64_t> total(cells, 0);
  for (const auto& h : per_chain)
    for (std::size_t i = 0; i < cells; ++i) total[i] += h[i];
  return total;
}

std::vector<std::uint64_t> histogram(const SampleBatch& batch) {
  const SystemSize sz = batch.sizes;
  std::vector<std::uint64_t> counts((static_cast<std::size_t>(sz.n1) + 1) *
                                        (static_cast<std::size_t>(sz.n2) + 1),
                                    0);
  for (const auto& d : batch.draws) ++counts[lattice_index(sz, d.s1, d.s2)];
  return counts;
}

double total_variation(const MagnetizationPmf& pmf, const std::vector<std::uint64_t>& counts) {
  if (counts.size() != pmf.size())
    throw std::invalid_argument("total_variation: histogram does not match the pmf lattice");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw std::invalid_argument("total_variation: empty histogram");
  const auto probs = pmf.probabilities();
  double tv = 0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    tv += std::fabs(static_cast<double>(counts[i]) / static_cast<double>(total) - probs[i]);
  return 0.5 * tv;
}

}  // namespace cbl
