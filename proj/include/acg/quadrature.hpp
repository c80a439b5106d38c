#ifndef ACG_QUADRATURE_HPP
#define ACG_QUADRATURE_HPP

#include <cmath>
#include <functional>

#include "acg/errors.hpp"

namespace acg {

/// Composite 7-point Gauss-Legendre rule with n panels.
double gauss_composite(const std::function<double(double)>& f, double a, double b, int panels);

/// gauss_composite with a Richardson-style cross check: the result with n and
/// 2n panels must agree within tol, otherwise a NumericError is thrown.
double integrate_checked(const std::function<double(double)>& f, double a, double b,
                         int panels, double tol);

inline double gauss_composite(const std::function<double(double)>& f, double a, double b,
                              int panels) {
  // Abscissas/weights for 7-point Gauss-Legendre on [-1, 1].
  static const double xs[7] = {
      -0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
      0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
  static const double ws[7] = {
      0.1294849661688697, 0.2797053914892766, 0.3818300505051189, 0.4179591836734694,
      0.3818300505051189, 0.2797053914892766, 0.1294849661688697};
  if (panels < 1) panels = 1;
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    double s = 0.0;
    for (int k = 0; k < 7; ++k) s += ws[k] * f(c + 0.5 * h * xs[k]);
    total += 0.5 * h * s;
  }
  return total;
}

inline double integrate_checked(const std::function<double(double)>& f, double a, double b,
                                int panels, double tol) {
  const double coarse = gauss_composite(f, a, b, panels);
  const double fine = gauss_composite(f, a, b, 2 * panels);
  if (!(std::abs(fine - coarse) <= tol * (1.0 + std::abs(fine)))) {
    throw NumericError("quadrature did not converge: |" + std::to_string(fine) + " - " +
                       std::to_string(coarse) + "| > tol");
  }
  return fine;
}

}  // namespace acg

#endif
