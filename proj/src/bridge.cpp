#include "acg/bridge.hpp"

#include <cmath>

#include "acg/errors.hpp"

namespace acg {

Path sample_bridge(const BridgeSpec& spec, RandomSource& rng) {
  if (spec.epsilon < 0.0) throw DomainError("sample_bridge: epsilon must be >= 0");
  Path p = affine_interpolant(spec.u_minus, spec.u_plus, spec.grid);
  resample_block_inplace(p, 0, spec.grid.n + 1, spec.epsilon, rng);
  return p;
}

void resample_block_inplace(Path& path, int i0, int i1, double epsilon, RandomSource& rng) {
  const double dx = path.grid.dx();
  const double b = path.values[i1];
  const double x_plus = path.grid.point(i1);
  for (int i = i0; i + 1 < i1; ++i) {
    const double xi = path.grid.point(i);
    const double rem = x_plus - xi;  // >= 2 dx here
    const double mean = path.values[i] + dx * (b - path.values[i]) / rem;
    const double var = epsilon * dx * (rem - dx) / rem;
    path.values[i + 1] = (var > 0.0) ? mean + std::sqrt(var) * rng.normal() : mean;
  }
}

double bridge_covariance(const BridgeSpec& spec, double x1, double x2) {
  const double xm = spec.grid.x_minus, xp = spec.grid.x_plus;
  if (x1 < xm || x1 > xp || x2 < xm || x2 > xp)
    throw DomainError("bridge_covariance: point outside interval");
  const double a = (x1 - xm) * (xp - x2);
  const double b = (x2 - xm) * (xp - x1);
  return spec.epsilon / (xp - xm) * std::min(a, b);
}

Path resample_subinterval(const Path& path, double xh_minus, double xh_plus, double epsilon,
                          RandomSource& rng) {
  bool e1 = false, e2 = false;
  const int i0 = path.grid.index_of(xh_minus, &e1);
  const int i1 = path.grid.index_of(xh_plus, &e2);
  if (!(e1 && e2)) throw DomainError("resample_subinterval: endpoints must be grid points");
  if (i0 >= i1) throw DomainError("resample_subinterval: xh_minus must be left of xh_plus");
  Path out = path;
  resample_block_inplace(out, i0, i1, epsilon, rng);
  return out;
}

double cameron_martin_logdensity(const Path& f, const Path& u, double epsilon) {
  if (!(f.grid == u.grid)) throw DomainError("cameron_martin_logdensity: grid mismatch");
  if (f.values.front() != 0.0 || f.values.back() != 0.0)
    throw DomainError("cameron_martin_logdensity: shift must vanish at the boundary");
  if (!(epsilon > 0.0)) throw DomainError("cameron_martin_logdensity: epsilon must be > 0");
  const double dx = f.grid.dx();
  double quad = 0.0, stoch = 0.0;
  for (std::size_t i = 0; i + 1 < f.values.size(); ++i) {
    const double df = f.values[i + 1] - f.values[i];
    quad += 0.5 * df * df / dx;
    stoch += (df / dx) * (u.values[i + 1] - u.values[i]);
  }
  return (-quad + stoch) / epsilon;
}

}  // namespace acg
