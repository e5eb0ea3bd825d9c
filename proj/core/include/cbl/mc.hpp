#pragma once

// Markov-chain and direct sampling of the magnetization pair (S1, S2).
// The Hamiltonian depends on a configuration only through (S1, S2), so chains
// track that pair and never store individual spins.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "cbl/exact.hpp"
#include "cbl/model.hpp"

namespace cbl {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Per-chain seed: splitmix64(seed + (chain_index + 1) * 0x9E3779B97F4A7C15).
std::uint64_t chain_seed(std::uint64_t seed, std::uint64_t chain_index);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(Rng& rng);

/// Uniform integer in [0, n), n > 0 (modulo with rejection of the biased tail).
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

struct MagnetizationState {
  int s1 = 0;
  int s2 = 0;
  bool operator==(const MagnetizationState&) const = default;
};

struct ChainConfig {
  std::uint64_t seed = 0;
  /// Total sweeps per chain, burn-in included. One sweep is N single-spin proposals.
  std::int64_t sweeps = 1;
  std::int64_t burn_in = 0;
  std::int64_t thinning = 1;
  int n_chains = 1;

  /// Throws std::invalid_argument unless sweeps > burn_in >= 0, thinning >= 1, n_chains >= 1.
  void validate() const;

  /// 10 N sweeps. A heuristic: at criticality no fixed burn-in is safe.
  static std::int64_t default_burn_in(SystemSize sz) { return 10 * static_cast<std::int64_t>(sz.n()); }
};

struct Draw {
  int chain = 0;
  std::int64_t sweep = 0;
  int s1 = 0;
  int s2 = 0;
  bool operator==(const Draw&) const = default;
};

struct SampleBatch {
  std::vector<Draw> draws;
  std::optional<ChainConfig> config;
  SystemSize sizes;
};

/// H = -<J S, S> / (2N).
double energy(const ModelParams& p, SystemSize sz, MagnetizationState s);

/// H(S + delta e_group) - H(S) with the quadratic-form differences formed in
/// exact integer arithmetic. group is 0 or 1.
double energy_change(const ModelParams& p, SystemSize sz, MagnetizationState s, int group,
                     int delta);

/// Glauber acceptance 1/(1 + exp(dH)).
double glauber_acceptance(double delta_h);

/// One single-spin-flip proposal at a uniformly chosen particle.
MagnetizationState glauber_step(MagnetizationState s, const ModelParams& p, SystemSize sz,
                                Rng& rng);

/// Magnetizations of independent fair spins.
MagnetizationState random_initial_state(SystemSize sz, Rng& rng);

/// i.i.d. draws by inverse CDF over the row-major lattice order of the pmf.
SampleBatch sample_direct(const MagnetizationPmf& pmf, std::size_t n_draws, std::uint64_t seed);

/// n_chains independent Glauber chains seeded by chain_seed; after burn_in
/// sweeps, every thinning-th sweep is recorded. Draws are concatenated in
/// chain order.
SampleBatch run_chains(const ModelParams& p, SystemSize sz, const ChainConfig& cfg);

/// Same chains as run_chains, accumulated into counts over the lattice of
/// MagnetizationPmf (row-major (S1, S2) order) instead of stored draws.
std::vector<std::uint64_t> chain_histogram(const ModelParams& p, SystemSize sz,
                                           const ChainConfig& cfg);

std::vector<std::uint64_t> histogram(const SampleBatch& batch);

/// 1/2 sum |counts/total - p| over the lattice.
double total_variation(const MagnetizationPmf& pmf, const std::vector<std::uint64_t>& counts);

}  // namespace cbl
