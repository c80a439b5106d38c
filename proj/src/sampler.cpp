#include "acg/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <thread>

#include "acg/errors.hpp"

namespace acg {

void SamplerConfig::validate() const {
  if (!(epsilon >= 0.0)) throw ConfigError("sampler: epsilon must be >= 0");
  if (block_len < 2) throw ConfigError("sampler: block length must be >= 2");
  if (block_len > grid.n + 1) throw ConfigError("sampler: block longer than the grid");
  if (sweeps <= burn_in) throw ConfigError("sampler: sweeps must exceed burn-in");
  if (thinning < 1) throw ConfigError("sampler: thinning must be >= 1");
  if (kernel == KernelKind::Pcn && !(pcn_beta > 0.0 && pcn_beta <= 1.0))
    throw ConfigError("sampler: pcn beta must lie in (0, 1]");
}

std::uint64_t SamplerConfig::hash() const {
  auto mix = [](std::uint64_t h, std::uint64_t x) {
    h ^= x + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return h;
  };
  auto dbl = [](double x) {
    std::uint64_t u;
    std::memcpy(&u, &x, sizeof(u));
    return u;
  };
  std::uint64_t h = 0xACF00Dull;
  h = mix(h, dbl(epsilon));
  h = mix(h, dbl(grid.x_minus));
  h = mix(h, dbl(grid.x_plus));
  h = mix(h, static_cast<std::uint64_t>(grid.n));
  h = mix(h, dbl(u_minus));
  h = mix(h, dbl(u_plus));
  h = mix(h, static_cast<std::uint64_t>(block_len));
  h = mix(h, static_cast<std::uint64_t>(kernel));
  h = mix(h, dbl(pcn_beta));
  h = mix(h, static_cast<std::uint64_t>(sweeps));
  h = mix(h, static_cast<std::uint64_t>(burn_in));
  h = mix(h, static_cast<std::uint64_t>(thinning));
  h = mix(h, seed);
  return h;
}

ChainState make_chain_state(const SamplerConfig& cfg, const Potential& pot) {
  ChainState st;
  st.path = affine_interpolant(cfg.u_minus, cfg.u_plus, cfg.grid);
  const double dx = cfg.grid.dx();
  st.cell_pv.resize(cfg.grid.n + 1);
  for (int i = 0; i <= cfg.grid.n; ++i)
    st.cell_pv[i] = 0.5 * dx * (pot(st.path.values[i]) + pot(st.path.values[i + 1]));
  return st;
}

double cache_drift(const ChainState& state, const Potential& pot) {
  const double dx = state.path.grid.dx();
  double worst = 0.0;
  for (int i = 0; i <= state.path.grid.n; ++i) {
    const double fresh = 0.5 * dx * (pot(state.path.values[i]) + pot(state.path.values[i + 1]));
    worst = std::max(worst, std::abs(fresh - state.cell_pv[i]));
  }
  return worst;
}

double log_target_ratio(const Path& proposal, const Path& current, int i0, int i1,
                        double epsilon, const Potential& pot) {
  if (!(proposal.grid == current.grid)) throw ContractViolation("log_target_ratio: grid mismatch");
  for (int i = 0; i < current.num_points(); ++i) {
    if (i > i0 && i < i1) continue;
    if (proposal.values[i] != current.values[i])
      throw ContractViolation("log_target_ratio: proposal differs outside the block");
  }
  if (epsilon == 0.0) return 0.0;
  const double dx = current.grid.dx();
  double dv = 0.0;
  for (int i = i0; i < i1; ++i) {
    dv += 0.5 * dx *
          (pot(proposal.values[i]) + pot(proposal.values[i + 1]) - pot(current.values[i]) -
           pot(current.values[i + 1]));
  }
  return -dv / epsilon;
}

namespace {

// pCN blend on the block interior: u' = h + sqrt(1-b^2)(u-h) + b xi with h
// the chord between the pinned endpoint values and xi a fresh 0-bridge.
// W-reversible, so the Metropolis ratio is the potential term alone.
void pcn_propose(Path& prop, const Path& cur, int i0, int i1, double epsilon, double beta,
                 RandomSource& rng) {
  Path noise = cur;
  for (int i = i0; i <= i1; ++i) noise.values[i] = 0.0;
  resample_block_inplace(noise, i0, i1, epsilon, rng);
  const double keep = std::sqrt(1.0 - beta * beta);
  const double a = cur.values[i0], b = cur.values[i1];
  for (int i = i0 + 1; i < i1; ++i) {
    const double t = static_cast<double>(i - i0) / (i1 - i0);
    const double h = (1.0 - t) * a + t * b;
    prop.values[i] = h + keep * (cur.values[i] - h) + beta * noise.values[i];
  }
}

}  // namespace

void block_step(ChainState& state, int i0, int i1, double epsilon, const Potential& pot,
                KernelKind kernel, double pcn_beta, RandomSource& rng) {
  if (i0 < 0 || i1 > state.path.grid.n + 1 || i1 - i0 < 2)
    throw DomainError("block_step: bad block indices");
  Path prop = state.path;
  if (kernel == KernelKind::BlockIndependence) {
    resample_block_inplace(prop, i0, i1, epsilon, rng);
  } else {
    pcn_propose(prop, state.path, i0, i1, epsilon, pcn_beta, rng);
  }

  const double dx = state.path.grid.dx();
  double dv = 0.0;
  std::vector<double> new_cells(static_cast<std::size_t>(i1 - i0));
  for (int i = i0; i < i1; ++i) {
    const double c = 0.5 * dx * (pot(prop.values[i]) + pot(prop.values[i + 1]));
    new_cells[static_cast<std::size_t>(i - i0)] = c;
    dv += c - state.cell_pv[i];
  }
  const double log_ratio = (epsilon > 0.0) ? -dv / epsilon : 0.0;

  ++state.proposals;
  ++state.steps;
  const bool accept = log_ratio >= 0.0 || rng.uniform() < std::exp(log_ratio);
  if (accept) {
    ++state.accepts;
    for (int i = i0 + 1; i < i1; ++i) state.path.values[i] = prop.values[i];
    for (int i = i0; i < i1; ++i) state.cell_pv[i] = new_cells[static_cast<std::size_t>(i - i0)];
  }
}

Ensemble run_chain_stream(const SamplerConfig& cfg, const Potential& pot,
                          std::uint64_t stream) {
  cfg.validate();
  RandomSource rng(cfg.seed, stream);
  Ensemble ens;
  ChainState st = make_chain_state(cfg, pot);
  const int npts = cfg.grid.n + 2;
  const int B = cfg.block_len;
  const int stride = std::max(1, B / 2);
  for (long sweep = 0; sweep < cfg.sweeps; ++sweep) {
    const int offset = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(stride)));
    for (int start = -offset; start + 1 < npts; start += stride) {
      const int i0 = std::max(0, start);
      const int i1 = std::min(npts - 1, start + B);
      if (i1 - i0 < 2) continue;
      block_step(st, i0, i1, cfg.epsilon, pot, cfg.kernel, cfg.pcn_beta, rng);
    }
    if (sweep >= cfg.burn_in && (sweep - cfg.burn_in) % cfg.thinning == 0)
      ens.paths.push_back(st.path);
  }
  ens.grid = cfg.grid;
  ens.epsilon = cfg.epsilon;
  ens.u_minus = cfg.u_minus;
  ens.u_plus = cfg.u_plus;
  ens.config_hash = cfg.hash();
  ens.seed = cfg.seed;
  ens.acceptance = st.acceptance_rate();
  return ens;
}

Ensemble run_chain(const SamplerConfig& cfg, const Potential& pot) {
  return run_chain_stream(cfg, pot, 0);
}

Ensemble run_chains(const SamplerConfig& cfg, const Potential& pot, int n_chains, int threads) {
  cfg.validate();
  if (n_chains < 1) throw ConfigError("run_chains: need at least one chain");
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, n_chains));

  std::vector<Ensemble> parts(static_cast<std::size_t>(n_chains));
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int k = next.fetch_add(1);
      if (k >= n_chains) return;
      parts[static_cast<std::size_t>(k)] =
          run_chain_stream(cfg, pot, static_cast<std::uint64_t>(k));
    }
  };
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  Ensemble merged = std::move(parts[0]);
  for (int k = 1; k < n_chains; ++k) {
    if (!(parts[k].grid == merged.grid) || parts[k].epsilon != merged.epsilon)
      throw ContractViolation("run_chains: mismatched chain configs");
    merged.paths.insert(merged.paths.end(), parts[k].paths.begin(), parts[k].paths.end());
    merged.acceptance += parts[k].acceptance;
  }
  merged.acceptance /= n_chains;
  return merged;
}

EventEstimate estimate_event_probability(const Ensemble& ens,
                                         const std::function<bool(const Path&)>& event) {
  if (ens.paths.empty()) throw DomainError("estimate_event_probability: empty ensemble");
  std::vector<double> ind;
  ind.reserve(ens.paths.size());
  for (const auto& p : ens.paths) ind.push_back(event(p) ? 1.0 : 0.0);
  const MeanErr me = series_mean(ind);
  EventEstimate est;
  est.p = me.mean;
  est.se = me.se;
  est.ess = me.ess;
  est.degenerate = me.degenerate;
  return est;
}

}  // namespace acg
