#ifndef ACG_POTENTIAL_HPP
#define ACG_POTENTIAL_HPP

#include <functional>
#include <string>
#include <vector>

namespace acg {

/// A symmetric double-well potential with wells normalized to +-1 and
/// V(+-1) = 0. The canonical member of the family is the quartic
/// V(u) = (1 - u^2)^2 / 4.
class Potential {
 public:
  enum class Family { Quartic, UserFunction, Table };

  static Potential quartic();

  /// Wrap a user closure. Derivatives fall back to central differences
  /// with step h = 1e-5 * (1 + |u|) when not supplied. With `symmetrize`,
  /// the closure is replaced by its even part.
  static Potential from_function(std::function<double(double)> v,
                                 std::function<double(double)> dv = nullptr,
                                 std::function<double(double)> d2v = nullptr,
                                 bool symmetrize = false);

  /// Piecewise-cubic interpolation of (u, V) samples read from a table.
  /// The samples must cover a symmetric range including [-2, 2].
  static Potential from_table(const std::vector<double>& u, const std::vector<double>& v,
                              bool symmetrize = false);

  double operator()(double u) const { return eval_(u); }
  double deriv(double u) const { return deriv_(u); }
  double deriv2(double u) const { return deriv2_(u); }

  Family family() const { return family_; }
  const std::string& name() const { return name_; }

  /// Growth exponent hint (1 + beta); used by the assumption report.
  double growth_beta() const { return growth_beta_; }

 private:
  Potential() = default;
  Family family_ = Family::Quartic;
  std::string name_;
  double growth_beta_ = 0.5;
  std::function<double(double)> eval_, deriv_, deriv2_;
};

struct AssumptionClause {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AssumptionReport {
  std::vector<AssumptionClause> clauses;
  double growth_exponent = 0.0;
  bool all_passed() const {
    for (const auto& c : clauses)
      if (!c.passed) return false;
    return true;
  }
};

/// Validate the double-well assumptions on a sampled grid over
/// [-u_max, u_max]: evenness, nonnegativity with zero set {-1, 1},
/// critical points, V''(1) > 0, and superlinear growth.
/// Throws NumericError if V is non-finite anywhere on the grid.
AssumptionReport check_assumptions(const Potential& pot, double u_max, int n_samples,
                                   double tol);

struct WellConstants {
  double c0 = 0.0;          // cost of one full transition, integral of sqrt(2V) over [-1,1]
  double c1 = 0.0;          // twice the cheaper half-excursion between levels -3/2, -1, -1/2
  double decay_rate = 0.0;  // sqrt(V''(1)/2)

  // Tabulated phi_{-1}(u) = |int_{-1}^{u} sqrt(2V)| and phi_{+1}(u) = |int_u^1 sqrt(2V)|.
  std::vector<double> phi_grid;
  std::vector<double> phi_minus_val;
  std::vector<double> phi_plus_val;

  double phi_minus(double u) const;
  double phi_plus(double u) const;
};

/// Derived constants by quadrature of sqrt(2V). The integrand has a
/// conical point at the wells, so panels are split at +-(1 - 1e-6) with a
/// quadratic-well series tail; a Richardson cross-check guards precision.
WellConstants well_constants(const Potential& pot, int quadrature_n = 64);

struct OptimalProfile {
  std::vector<double> x;
  std::vector<double> m;
  int center_index = 0;  // index with m = 0

  double value(double xq) const;  // linear interpolation, clamped tails
};

/// The strictly increasing stationary profile solving m' = sqrt(2V(m)),
/// m(0) = 0, integrated outward by RK4 with a linearized exponential
/// tail once |m -+ 1| < 1e-8. Values are clamped to (-1, 1).
OptimalProfile optimal_profile(const Potential& pot, double half_width, double dx);

}  // namespace acg

#endif
