// scratch diagnostic for the point-between-hits transform (not in the suite)
#include <cmath>
#include <cstdio>

#include "acg/layers.hpp"
#include "acg/potential.hpp"
#include "acg/reflect.hpp"
#include "acg/sampler.hpp"
#include "acg/stats.hpp"

using namespace acg;

int main() {
  const auto pot = Potential::quartic();
  SamplerConfig cfg;
  cfg.epsilon = 0.1;
  cfg.grid = Grid(-5.0, 5.0, 199);
  cfg.u_minus = -1.0;
  cfg.u_plus = 1.0;
  cfg.block_len = 30;
  cfg.sweeps = 8000;
  cfg.burn_in = 2000;
  cfg.thinning = 2;
  cfg.seed = 505;
  const auto ens = run_chain(cfg, pot);
  std::printf("paths %zu acc %.3f\n", ens.paths.size(), ens.acceptance);

  auto spec = ReflectionSpec::point_between_hits(-4.75, -3.25, 3.25, 4.75);
  int degenerate = 0, chi_mismatch = 0, invol_fail = 0;
  double max_jump_ratio = 0.0;
  std::vector<double> d_int, d_max, d_u0, o_int, o_max, o_u0;
  for (const auto& p : ens.paths) {
    const auto out = apply_reflection(p, spec);
    if (out.degenerate) {
      ++degenerate;
      continue;
    }
    auto cl0 = earliest_in_band(p, -4.75, -3.25, -1.0, -1.0);
    auto cr0 = latest_in_band(p, 3.25, 4.75, 1.0, 1.0);
    auto cl1 = earliest_in_band(out.path, -4.75, -3.25, -1.0, -1.0);
    auto cr1 = latest_in_band(out.path, 3.25, 4.75, 1.0, 1.0);
    if (!cl1 || !cr1 || std::abs(*cl1 - *cl0) > 1e-9 || std::abs(*cr1 - *cr0) > 1e-9)
      ++chi_mismatch;
    const auto back = apply_reflection(out.path, spec);
    double w = 0.0;
    for (std::size_t i = 0; i < p.values.size(); ++i)
      w = std::max(w, std::abs(back.path.values[i] - p.values[i]));
    if (w > 1e-9) ++invol_fail;
    // seam jump: largest |du| of transformed vs original
    double j0 = 0.0, j1 = 0.0;
    for (std::size_t i = 0; i + 1 < p.values.size(); ++i) {
      j0 = std::max(j0, std::abs(p.values[i + 1] - p.values[i]));
      j1 = std::max(j1, std::abs(out.path.values[i + 1] - out.path.values[i]));
    }
    max_jump_ratio = std::max(max_jump_ratio, j1 / j0);
    auto integ = [](const Path& q) {
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < q.values.size(); ++i)
        s += 0.5 * q.grid.dx() * (q.values[i] + q.values[i + 1]);
      return s;
    };
    o_int.push_back(integ(p));
    d_int.push_back(integ(out.path));
    o_max.push_back(*std::max_element(p.values.begin(), p.values.end()));
    d_max.push_back(*std::max_element(out.path.values.begin(), out.path.values.end()));
    o_u0.push_back(p.at(0.0));
    d_u0.push_back(out.path.at(0.0));
  }
  std::printf("degenerate %d chi_mismatch %d invol_fail %d max_jump_ratio %.3f\n", degenerate,
              chi_mismatch, invol_fail, max_jump_ratio);
  std::printf("int  mean %.4f -> %.4f\n", sample_mean(o_int), sample_mean(d_int));
  std::printf("max  mean %.4f -> %.4f\n", sample_mean(o_max), sample_mean(d_max));
  std::printf("u0   mean %.4f -> %.4f\n", sample_mean(o_u0), sample_mean(d_u0));
  std::printf("ks int %.3g max %.3g u0 %.3g\n", ks_two_sample_pvalue(o_int, d_int),
              ks_two_sample_pvalue(o_max, d_max), ks_two_sample_pvalue(o_u0, d_u0));
  return 0;
}
