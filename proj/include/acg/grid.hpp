#ifndef ACG_GRID_HPP
#define ACG_GRID_HPP

#include <cstddef>
#include <vector>

#include "acg/potential.hpp"

namespace acg {

/// Uniform grid on [x_minus, x_plus] with n interior points;
/// x_i = x_minus + i * dx for i = 0 .. n+1, dx = (x_plus - x_minus)/(n+1).
struct Grid {
  double x_minus = 0.0;
  double x_plus = 1.0;
  int n = 1;

  Grid() = default;
  Grid(double xm, double xp, int n_interior);

  double dx() const { return (x_plus - x_minus) / (n + 1); }
  int num_points() const { return n + 2; }
  double point(int i) const { return x_minus + i * dx(); }

  /// Index of the nearest grid point; *exact set to whether x was on-grid.
  int index_of(double x, bool* exact = nullptr) const;

  bool operator==(const Grid& o) const {
    return x_minus == o.x_minus && x_plus == o.x_plus && n == o.n;
  }
};

/// Discretized path: values at every grid point including the boundary
/// entries. Paths are immutable value objects in spirit; transforms return
/// fresh copies.
struct Path {
  Grid grid;
  std::vector<double> values;

  Path() = default;
  Path(const Grid& g, std::vector<double> vals);

  double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
  int num_points() const { return grid.num_points(); }

  /// Piecewise-linear evaluation at an arbitrary point of the domain.
  double at(double x) const;
};

struct EnergyBreakdown {
  double total = 0.0;      // E = I + PV
  double gaussian = 0.0;   // I: 1/2 int (u')^2, exact for the linear interpolant
  double potential = 0.0;  // PV: trapezoidal int V(u)
};

EnergyBreakdown energy(const Path& path, const Potential& pot);

/// Minimal Gaussian energy with the given boundary data,
/// (u_plus - u_minus)^2 / (2 (x_plus - x_minus)).
double min_gaussian_energy(double u_minus, double u_plus, double x_minus, double x_plus);

/// The affine function interpolating (x_minus, u_minus) -> (x_plus, u_plus),
/// sampled on the grid.
Path affine_interpolant(double u_minus, double u_plus, const Grid& grid);

/// Replace the interior of [xh_minus, xh_plus] by the chord between the
/// path's values there; everything else is untouched. Off-grid endpoints are
/// snapped to the nearest grid point (sets *snapped if given).
Path piecewise_linearize(const Path& path, double xh_minus, double xh_plus,
                         bool* snapped = nullptr);

}  // namespace acg

#endif
