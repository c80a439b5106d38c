#include "acg/grid.hpp"

#include <cmath>

#include "acg/errors.hpp"

namespace acg {

Grid::Grid(double xm, double xp, int n_interior) : x_minus(xm), x_plus(xp), n(n_interior) {
  if (!(xp > xm)) throw DomainError("Grid: x_plus must exceed x_minus");
  if (n < 1) throw DomainError("Grid: need at least one interior point");
}

int Grid::index_of(double x, bool* exact) const {
  const double t = (x - x_minus) / dx();
  int i = static_cast<int>(std::lround(t));
  i = std::max(0, std::min(n + 1, i));
  if (exact) *exact = std::abs(t - i) <= 1e-9 * (std::abs(t) + 1.0);
  return i;
}

Path::Path(const Grid& g, std::vector<double> vals) : grid(g), values(std::move(vals)) {
  if (static_cast<int>(values.size()) != g.num_points())
    throw DomainError("Path: value count does not match grid");
}

double Path::at(double x) const {
  const double dx = grid.dx();
  if (x <= grid.x_minus) return values.front();
  if (x >= grid.x_plus) return values.back();
  const double t = (x - grid.x_minus) / dx;
  const int k = std::min(static_cast<int>(t), grid.n);
  const double s = t - k;
  return (1.0 - s) * values[k] + s * values[k + 1];
}

EnergyBreakdown energy(const Path& path, const Potential& pot) {
  if (path.num_points() < 2) throw DomainError("energy: path needs >= 2 points");
  const double dx = path.grid.dx();
  EnergyBreakdown e;
  const auto& u = path.values;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double du = u[i + 1] - u[i];
    e.gaussian += 0.5 * du * du / dx;
    e.potential += 0.5 * dx * (pot(u[i]) + pot(u[i + 1]));
  }
  e.total = e.gaussian + e.potential;
  return e;
}

double min_gaussian_energy(double u_minus, double u_plus, double x_minus, double x_plus) {
  if (!(x_plus > x_minus)) throw DomainError("min_gaussian_energy: empty interval");
  const double du = u_plus - u_minus;
  return 0.5 * du * du / (x_plus - x_minus);
}

Path affine_interpolant(double u_minus, double u_plus, const Grid& grid) {
  std::vector<double> vals(grid.num_points());
  const double len = grid.x_plus - grid.x_minus;
  for (int i = 0; i < grid.num_points(); ++i) {
    const double x = grid.point(i);
    vals[i] = ((x - grid.x_minus) * u_plus + (grid.x_plus - x) * u_minus) / len;
  }
  vals.front() = u_minus;
  vals.back() = u_plus;
  return Path(grid, std::move(vals));
}

Path piecewise_linearize(const Path& path, double xh_minus, double xh_plus, bool* snapped) {
  bool e1 = false, e2 = false;
  const int i0 = path.grid.index_of(xh_minus, &e1);
  const int i1 = path.grid.index_of(xh_plus, &e2);
  if (snapped) *snapped = !(e1 && e2);
  if (i0 >= i1) throw DomainError("piecewise_linearize: xh_minus must be left of xh_plus");
  Path out = path;
  const double a = path.values[i0], b = path.values[i1];
  for (int i = i0 + 1; i < i1; ++i) {
    const double t = static_cast<double>(i - i0) / (i1 - i0);
    out.values[i] = (1.0 - t) * a + t * b;
  }
  return out;
}

}  // namespace acg
