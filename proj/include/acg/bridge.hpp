#ifndef ACG_BRIDGE_HPP
#define ACG_BRIDGE_HPP

#include "acg/grid.hpp"
#include "acg/rng.hpp"

namespace acg {

/// Reference Gaussian measure: a Brownian bridge on the grid with variance
/// proportional to epsilon, pinned to (u_minus, u_plus) at the ends.
struct BridgeSpec {
  Grid grid;
  double u_minus = 0.0;
  double u_plus = 0.0;
  double epsilon = 1.0;  // > 0 (0 is allowed as the degenerate affine limit)
};

/// Exact draw via the sequential conditional (Markov) recursion:
/// u(x_{i+1}) | u(x_i) = a ~ N(a + dx (u_+ - a)/(x_+ - x_i),
///                             eps dx (x_+ - x_{i+1})/(x_+ - x_i)).
Path sample_bridge(const BridgeSpec& spec, RandomSource& rng);

/// Covariance of the centered part at (x1, x2):
/// eps/(x_+ - x_-) min((x1-x_-)(x_+-x2), (x2-x_-)(x_+-x1)).
double bridge_covariance(const BridgeSpec& spec, double x1, double x2);

/// Replace the interior of [xh_minus, xh_plus] (grid points) by a fresh
/// bridge pinned at the path's current values there; outside is untouched.
Path resample_subinterval(const Path& path, double xh_minus, double xh_plus, double epsilon,
                          RandomSource& rng);

/// Index-based variant used by the samplers: resample strictly between
/// grid indices i0 < i1.
void resample_block_inplace(Path& path, int i0, int i1, double epsilon, RandomSource& rng);

/// Log density of the bridge measure shifted by f against the unshifted one,
/// evaluated at u:  -I(f)/eps + (1/eps) sum f'(x_i) (u(x_{i+1}) - u(x_i)),
/// with the discrete stochastic integral using the left-point rule.
/// f must vanish at both boundary points.
double cameron_martin_logdensity(const Path& f, const Path& u, double epsilon);

}  // namespace acg

#endif
