#ifndef ACG_SAMPLER_HPP
#define ACG_SAMPLER_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "acg/bridge.hpp"
#include "acg/grid.hpp"
#include "acg/potential.hpp"
#include "acg/rng.hpp"
#include "acg/stats.hpp"

namespace acg {

enum class KernelKind { BlockIndependence, Pcn };

struct SamplerConfig {
  double epsilon = 0.1;
  Grid grid;
  double u_minus = -1.0;
  double u_plus = 1.0;
  int block_len = 16;  // in grid points (segments per block)
  KernelKind kernel = KernelKind::BlockIndependence;
  double pcn_beta = 0.2;
  long sweeps = 10000;
  long burn_in = 1000;
  long thinning = 10;
  std::uint64_t seed = 1;

  void validate() const;
  std::uint64_t hash() const;
};

/// Mutable chain state: the current path plus per-cell trapezoid integrals
/// of V, so a block move only touches its own cells.
struct ChainState {
  Path path;
  std::vector<double> cell_pv;  // dx (V(u_i)+V(u_{i+1}))/2 per segment
  long steps = 0;
  long proposals = 0;
  long accepts = 0;

  double acceptance_rate() const {
    return proposals ? static_cast<double>(accepts) / proposals : 0.0;
  }
};

ChainState make_chain_state(const SamplerConfig& cfg, const Potential& pot);

/// Check the cached integrals against recomputation (testing hook).
double cache_drift(const ChainState& state, const Potential& pot);

struct Ensemble {
  Grid grid;
  double epsilon = 0.0;
  double u_minus = 0.0, u_plus = 0.0;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  double acceptance = 0.0;
  std::vector<Path> paths;
};

/// Acceptance-ratio exponent for a block proposal:
/// -(1/eps) (int_block V(proposal) - int_block V(current)), trapezoid rule.
/// Throws ContractViolation if the two paths differ outside the block.
double log_target_ratio(const Path& proposal, const Path& current, int i0, int i1,
                        double epsilon, const Potential& pot);

/// One Metropolis update of the block (i0, i1): propose a bridge resample of
/// the interior pinned at the current endpoint values (or a pCN blend),
/// accept with probability min(1, exp(log ratio)).
void block_step(ChainState& state, int i0, int i1, double epsilon, const Potential& pot,
                KernelKind kernel, double pcn_beta, RandomSource& rng);

/// Run a full chain: systematic sweeps of overlapping blocks with a random
/// offset per sweep, discarding burn-in and thinning the rest.
/// Deterministic given (config, potential).
Ensemble run_chain(const SamplerConfig& cfg, const Potential& pot);

/// Same chain on an explicit RNG stream (chains on distinct streams are
/// independent and individually deterministic).
Ensemble run_chain_stream(const SamplerConfig& cfg, const Potential& pot,
                          std::uint64_t stream);

/// Run `n_chains` chains on distinct RNG streams (in parallel when threads
/// allow) and merge their thinned paths.
Ensemble run_chains(const SamplerConfig& cfg, const Potential& pot, int n_chains,
                    int threads = 0);

struct EventEstimate {
  double p = 0.0;
  double se = -1.0;     // batch-means standard error; < 0 when undefined
  double ess = 0.0;
  bool degenerate = false;
};

EventEstimate estimate_event_probability(const Ensemble& ens,
                                         const std::function<bool(const Path&)>& event);

}  // namespace acg

#endif
