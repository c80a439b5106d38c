#include "acg/potential.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "acg/errors.hpp"
#include "acg/quadrature.hpp"

namespace acg {

Potential Potential::quartic() {
  Potential p;
  p.family_ = Family::Quartic;
  p.name_ = "quartic";
  p.growth_beta_ = 3.0;  // quartic tail
  p.eval_ = [](double u) {
    const double w = 1.0 - u * u;
    return 0.25 * w * w;
  };
  p.deriv_ = [](double u) { return u * u * u - u; };
  p.deriv2_ = [](double u) { return 3.0 * u * u - 1.0; };
  return p;
}

Potential Potential::from_function(std::function<double(double)> v,
                                   std::function<double(double)> dv,
                                   std::function<double(double)> d2v, bool symmetrize) {
  Potential p;
  p.family_ = Family::UserFunction;
  p.name_ = "user";
  if (symmetrize) {
    auto raw = v;
    v = [raw](double u) { return 0.5 * (raw(u) + raw(-u)); };
    dv = nullptr;
    d2v = nullptr;
  }
  p.eval_ = v;
  if (dv) {
    p.deriv_ = dv;
  } else {
    p.deriv_ = [v](double u) {
      const double h = 1e-5 * (1.0 + std::abs(u));
      return (v(u + h) - v(u - h)) / (2.0 * h);
    };
  }
  if (d2v) {
    p.deriv2_ = d2v;
  } else {
    p.deriv2_ = [v](double u) {
      const double h = 1e-5 * (1.0 + std::abs(u));
      return (v(u + h) - 2.0 * v(u) + v(u - h)) / (h * h);
    };
  }
  return p;
}

Potential Potential::from_table(const std::vector<double>& us, const std::vector<double>& vs,
                                bool symmetrize) {
  if (us.size() != vs.size() || us.size() < 4)
    throw ConfigError("potential table needs >= 4 (u, V) rows");
  for (std::size_t i = 1; i < us.size(); ++i)
    if (!(us[i] > us[i - 1])) throw ConfigError("potential table: u column must be increasing");
  if (us.front() > -2.0 || us.back() < 2.0)
    throw ConfigError("potential table must cover [-2, 2]");
  auto u = std::make_shared<std::vector<double>>(us);
  auto v = std::make_shared<std::vector<double>>(vs);
  auto interp = [u, v](double uq) {
    const auto& X = *u;
    const auto& Y = *v;
    if (uq <= X.front()) return Y.front();
    if (uq >= X.back()) return Y.back();
    auto it = std::upper_bound(X.begin(), X.end(), uq);
    std::size_t k = static_cast<std::size_t>(it - X.begin()) - 1;
    // Catmull-Rom style local cubic where possible, linear at the edges.
    if (k == 0 || k + 2 >= X.size()) {
      const double t = (uq - X[k]) / (X[k + 1] - X[k]);
      return (1.0 - t) * Y[k] + t * Y[k + 1];
    }
    const double h = X[k + 1] - X[k];
    const double t = (uq - X[k]) / h;
    const double m0 = (Y[k + 1] - Y[k - 1]) / (X[k + 1] - X[k - 1]) * h;
    const double m1 = (Y[k + 2] - Y[k]) / (X[k + 2] - X[k]) * h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * Y[k] + (t3 - 2 * t2 + t) * m0 +
           (-2 * t3 + 3 * t2) * Y[k + 1] + (t3 - t2) * m1;
  };
  Potential p = from_function(interp, nullptr, nullptr, symmetrize);
  p.family_ = Family::Table;
  p.name_ = "table";
  return p;
}

AssumptionReport check_assumptions(const Potential& pot, double u_max, int n_samples,
                                   double tol) {
  if (u_max < 2.0) throw DomainError("check_assumptions: u_max must be >= 2");
  if (n_samples < 100) throw DomainError("check_assumptions: n_samples must be >= 100");

  AssumptionReport rep;
  std::vector<double> us(n_samples), vs(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    us[i] = -u_max + 2.0 * u_max * i / (n_samples - 1);
    vs[i] = pot(us[i]);
    if (!std::isfinite(vs[i]))
      throw NumericError("invalid potential: non-finite V at u = " + std::to_string(us[i]));
  }

  auto push = [&rep](const std::string& name, bool ok, const std::string& detail) {
    rep.clauses.push_back({name, ok, detail});
  };

  // Evenness on the symmetric grid.
  {
    double worst = 0.0;
    for (int i = 0; i < n_samples; ++i)
      worst = std::max(worst, std::abs(pot(us[i]) - pot(-us[i])));
    push("evenness", worst <= tol * (1.0 + std::abs(pot(0.0))),
         "max |V(u)-V(-u)| = " + std::to_string(worst));
  }

  // Nonnegativity and the zero set {-1, +1}.
  {
    bool ok = std::abs(pot(1.0)) <= tol && std::abs(pot(-1.0)) <= tol;
    std::string why = ok ? "" : "V(+-1) != 0";
    const double well_excl = 2.0 * u_max / (n_samples - 1);
    for (int i = 0; i < n_samples && ok; ++i) {
      if (std::min(std::abs(us[i] - 1.0), std::abs(us[i] + 1.0)) <= well_excl) continue;
      if (!(vs[i] > 0.0)) {
        ok = false;
        why = "V <= 0 at u = " + std::to_string(us[i]);
      }
    }
    push("nonnegativity_zero_set", ok, why);
  }

  // Critical points on (0, u_max]: V' vanishes only near u = 1.
  {
    bool ok = std::abs(pot.deriv(1.0)) <= std::sqrt(tol);
    std::string why = ok ? "" : "V'(1) != 0";
    int sign_changes = 0;
    double prev = 0.0;
    bool have_prev = false;
    for (int i = 0; i < n_samples; ++i) {
      if (us[i] < 0.05) continue;
      const double d = pot.deriv(us[i]);
      if (have_prev && prev * d < 0.0) ++sign_changes;
      prev = d;
      have_prev = true;
    }
    if (sign_changes > 1) {
      ok = false;
      why = "V' changes sign " + std::to_string(sign_changes) + " times on (0, u_max]";
    }
    push("critical_points", ok, why);
  }

  // Curvature at the well. The threshold keeps finite-difference noise on a
  // genuinely degenerate well (V'' of order h^2) from reading as positive.
  {
    const double d2 = pot.deriv2(1.0);
    push("well_curvature", d2 > 1e-6, "V''(1) = " + std::to_string(d2));
  }

  // Superlinear growth: fit V ~ u^p on the tail and require p >= 1 + beta.
  {
    std::vector<double> lx, ly;
    for (int i = 0; i < n_samples; ++i) {
      if (us[i] >= std::max(1.5, 0.6 * u_max) && vs[i] > 0.0) {
        lx.push_back(std::log(us[i]));
        ly.push_back(std::log(vs[i]));
      }
    }
    bool ok = lx.size() >= 3;
    double p = 0.0;
    if (ok) {
      double mx = 0, my = 0;
      for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
      }
      mx /= lx.size();
      my /= ly.size();
      double sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
      }
      p = sxy / sxx;
      ok = p >= 1.0 + pot.growth_beta() - 0.05;
    }
    rep.growth_exponent = p;
    push("superlinear_growth", ok, "fitted exponent = " + std::to_string(p));
  }

  return rep;
}

namespace {

double sqrt2v(const Potential& pot, double u) { return std::sqrt(std::max(0.0, 2.0 * pot(u))); }

// Integral of sqrt(2V) over [a, b] (a < b), splitting panels at the wells
// +-1 where the integrand has a kink, with a series tail on the last 1e-6.
double phi_integral(const Potential& pot, double a, double b, int panels, double tol) {
  if (a > b) std::swap(a, b);
  const double eps = 1e-6;
  const double root_curv = std::sqrt(std::max(0.0, pot.deriv2(1.0)));
  auto f = [&pot](double u) { return sqrt2v(pot, u); };

  // Collect breakpoints at wells that fall inside [a, b].
  std::vector<double> cuts = {a};
  for (double w : {-1.0, 1.0}) {
    if (w - eps > a && w - eps < b) cuts.push_back(w - eps);
    if (w + eps > a && w + eps < b) cuts.push_back(w + eps);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const double mid = 0.5 * (lo + hi);
    const bool near_well =
        std::min(std::abs(mid - 1.0), std::abs(mid + 1.0)) <= eps;
    if (near_well) {
      // Quadratic-well tail: sqrt(2V(u)) ~ sqrt(V''(1)) * |u - w|.
      const double w = (std::abs(mid - 1.0) < std::abs(mid + 1.0)) ? 1.0 : -1.0;
      const double r0 = std::abs(lo - w), r1 = std::abs(hi - w);
      total += 0.5 * root_curv * std::abs(r1 * r1 - r0 * r0);
    } else {
      total += integrate_checked(f, lo, hi, panels, tol);
    }
  }
  return total;
}

}  // namespace

double WellConstants::phi_minus(double u) const {
  if (phi_grid.empty()) return 0.0;
  if (u <= phi_grid.front()) return phi_minus_val.front();
  if (u >= phi_grid.back()) return phi_minus_val.back();
  const double t = (u - phi_grid.front()) / (phi_grid[1] - phi_grid[0]);
  const std::size_t k = std::min(static_cast<std::size_t>(t), phi_grid.size() - 2);
  const double s = t - static_cast<double>(k);
  return (1.0 - s) * phi_minus_val[k] + s * phi_minus_val[k + 1];
}

double WellConstants::phi_plus(double u) const {
  if (phi_grid.empty()) return 0.0;
  if (u <= phi_grid.front()) return phi_plus_val.front();
  if (u >= phi_grid.back()) return phi_plus_val.back();
  const double t = (u - phi_grid.front()) / (phi_grid[1] - phi_grid[0]);
  const std::size_t k = std::min(static_cast<std::size_t>(t), phi_grid.size() - 2);
  const double s = t - static_cast<double>(k);
  return (1.0 - s) * phi_plus_val[k] + s * phi_plus_val[k + 1];
}

WellConstants well_constants(const Potential& pot, int quadrature_n) {
  const double tol = 1e-10;
  WellConstants wc;
  wc.c0 = phi_integral(pot, -1.0, 1.0, quadrature_n, tol);
  const double half_up = phi_integral(pot, -1.0, -0.5, quadrature_n, tol);
  const double half_down = phi_integral(pot, -1.5, -1.0, quadrature_n, tol);
  wc.c1 = 2.0 * std::min(half_up, half_down);
  wc.decay_rate = std::sqrt(std::max(0.0, 0.5 * pot.deriv2(1.0)));

  // phi tables over [-3, 3]; increments accumulated once, then summed.
  const int n = 1201;
  wc.phi_grid.resize(n);
  wc.phi_minus_val.resize(n);
  wc.phi_plus_val.resize(n);
  const double lo = -3.0, hi = 3.0, h = (hi - lo) / (n - 1);
  std::vector<double> inc(n, 0.0);
  for (int i = 1; i < n; ++i)
    inc[i] = phi_integral(pot, lo + (i - 1) * h, lo + i * h, 4, 1e-8);
  double acc = 0.0;
  int i_m1 = static_cast<int>(std::lround((-1.0 - lo) / h));
  int i_p1 = static_cast<int>(std::lround((1.0 - lo) / h));
  std::vector<double> cum(n, 0.0);
  for (int i = 1; i < n; ++i) {
    acc += inc[i];
    cum[i] = acc;
  }
  for (int i = 0; i < n; ++i) {
    wc.phi_grid[i] = lo + i * h;
    wc.phi_minus_val[i] = std::abs(cum[i] - cum[i_m1]);
    wc.phi_plus_val[i] = std::abs(cum[i_p1] - cum[i]);
  }
  return wc;
}

double OptimalProfile::value(double xq) const {
  if (x.empty()) return 0.0;
  if (xq <= x.front()) return m.front();
  if (xq >= x.back()) return m.back();
  const double h = x[1] - x[0];
  const double t = (xq - x.front()) / h;
  const std::size_t k = std::min(static_cast<std::size_t>(t), x.size() - 2);
  const double s = t - static_cast<double>(k);
  return (1.0 - s) * m[k] + s * m[k + 1];
}

OptimalProfile optimal_profile(const Potential& pot, double half_width, double dx) {
  if (dx > 0.1) throw DomainError("optimal_profile: dx must be <= 0.1");
  if (half_width < 5.0) throw DomainError("optimal_profile: half_width must be >= 5");
  if (!(std::isfinite(pot(0.0)) && pot(0.0) > 0.0))
    throw NumericError("invalid potential for profile integration");

  const int half_n = static_cast<int>(std::lround(half_width / dx));
  const double lin_rate = std::sqrt(std::max(0.0, pot.deriv2(1.0)));
  auto rhs = [&pot](double m) { return std::sqrt(std::max(0.0, 2.0 * pot(m))); };

  std::vector<double> right(half_n + 1);
  right[0] = 0.0;
  for (int i = 0; i < half_n; ++i) {
    double m = right[i];
    if (1.0 - m < 1e-8) {
      // ODE right side vanishes at the well; switch to the linearization
      // (1 - m)' = -sqrt(V''(1)) (1 - m).
      right[i + 1] = 1.0 - (1.0 - m) * std::exp(-lin_rate * dx);
    } else {
      const double k1 = rhs(m);
      const double k2 = rhs(std::min(1.0, m + 0.5 * dx * k1));
      const double k3 = rhs(std::min(1.0, m + 0.5 * dx * k2));
      const double k4 = rhs(std::min(1.0, m + dx * k3));
      m += dx / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      right[i + 1] = std::min(m, 1.0 - 1e-16);
    }
  }

  OptimalProfile prof;
  prof.x.resize(2 * half_n + 1);
  prof.m.resize(2 * half_n + 1);
  prof.center_index = half_n;
  for (int i = 0; i <= half_n; ++i) {
    prof.x[half_n + i] = i * dx;
    prof.m[half_n + i] = right[i];
    prof.x[half_n - i] = -i * dx;
    prof.m[half_n - i] = -right[i];  // odd symmetry of the centered profile
  }
  return prof;
}

}  // namespace acg
