// scratch: layer-position mixing diagnostics at eps = 0.1, L = 5
#include <cstdio>

#include "acg/potential.hpp"
#include "acg/sampler.hpp"
#include "acg/stats.hpp"

using namespace acg;

int main(int argc, char**) {
  const auto pot = Potential::quartic();
  SamplerConfig cfg;
  cfg.epsilon = 0.1;
  cfg.grid = Grid(-5.0, 5.0, 199);
  cfg.u_minus = -1.0;
  cfg.u_plus = 1.0;
  cfg.block_len = 30;
  cfg.sweeps = 60000;
  cfg.burn_in = 0;
  cfg.thinning = 1;
  cfg.seed = 2;
  (void)argc;
  const auto ens = run_chain(cfg, pot);
  std::vector<double> integ;
  for (const auto& p : ens.paths) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < p.values.size(); ++i)
      s += 0.5 * p.grid.dx() * (p.values[i] + p.values[i + 1]);
    integ.push_back(s);
  }
  // windowed means to see the trajectory of the slow mode
  for (int w = 0; w < 12; ++w) {
    const std::size_t lo = w * integ.size() / 12, hi = (w + 1) * integ.size() / 12;
    std::vector<double> part(integ.begin() + lo, integ.begin() + hi);
    std::printf("window %2d mean_int %+0.3f\n", w, sample_mean(part));
  }
  std::vector<double> tail(integ.begin() + integ.size() / 3, integ.end());
  std::printf("tau(int u) over tail = %.0f sweeps, mean %.3f\n",
              integrated_autocorrelation(tail), sample_mean(tail));
  return 0;
}
