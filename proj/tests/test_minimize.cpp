#include <doctest.h>

#include <cmath>

#include "acg/errors.hpp"
#include "acg/minimize.hpp"
#include "acg/potential.hpp"
#include "acg/rng.hpp"

using namespace acg;

namespace {
const double kC0 = 2.0 * std::sqrt(2.0) / 3.0;
const double kC1 = 5.0 / (12.0 * std::sqrt(2.0));

Grid domain(double half, double dx) {
  return Grid(-half, half, static_cast<int>(std::lround(2.0 * half / dx)) - 1);
}
}  // namespace

TEST_CASE("discrete gradient matches finite differences of the energy") {
  const auto pot = Potential::quartic();
  Grid g(-2.0, 2.0, 37);
  RandomSource rng(12);
  std::vector<double> vals(static_cast<std::size_t>(g.num_points()));
  for (auto& v : vals) v = 0.8 * rng.normal();
  Path p(g, vals);
  const auto grad = energy_gradient(p, pot);
  const double h = 1e-6;
  for (int i = 5; i + 5 < g.num_points(); i += 7) {
    Path up = p, dn = p;
    up.values[i] += h;
    dn.values[i] -= h;
    const double fd = (energy(up, pot).total - energy(dn, pot).total) / (2.0 * h);
    CHECK(grad[static_cast<std::size_t>(i)] ==
          doctest::Approx(fd).epsilon(1e-6).scale(1.0 + std::abs(fd)));
  }
}

TEST_CASE("unconstrained minimizer: transition boundary data costs c0") {
  const auto pot = Potential::quartic();
  EnergyProblem prob;
  prob.grid = domain(10.0, 0.05);
  prob.u_minus = -1.0;
  prob.u_plus = 1.0;
  const auto res = minimize_energy(prob, pot);
  CHECK(res.converged);
  CHECK(res.energy == doctest::Approx(kC0).epsilon(1e-3));
  // the minimizer is a translate of the optimal profile
  const auto prof = optimal_profile(pot, 10.0, 0.01);
  // locate the zero of the computed argmin and compare shapes
  double x0 = 0.0;
  for (int i = 0; i + 1 < res.argmin.num_points(); ++i) {
    if (res.argmin.values[i] <= 0.0 && res.argmin.values[i + 1] > 0.0) {
      const double a = res.argmin.values[i], b = res.argmin.values[i + 1];
      x0 = res.argmin.grid.point(i) + res.argmin.grid.dx() * (-a) / (b - a);
      break;
    }
  }
  double worst = 0.0;
  for (int i = 0; i < res.argmin.num_points(); ++i) {
    const double x = res.argmin.grid.point(i);
    if (std::abs(x) > 8.0) continue;  // ignore the clamped tails
    worst = std::max(worst, std::abs(res.argmin.values[i] - prof.value(x - x0)));
  }
  CHECK(worst <= 1e-2);
  CHECK(res.residual <= 1e-4);
}

TEST_CASE("unconstrained minimizer: equal wells cost nothing") {
  const auto pot = Potential::quartic();
  EnergyProblem prob;
  prob.grid = domain(8.0, 0.05);
  prob.u_minus = 1.0;
  prob.u_plus = 1.0;
  const auto res = minimize_energy(prob, pot);
  CHECK(res.energy <= 1e-6);
}

TEST_CASE("energy gap: no constraint means zero gap") {
  EnergyProblem prob;
  prob.grid = domain(4.0, 0.1);
  CHECK(energy_gap(prob, Potential::quartic()) == doctest::Approx(0.0));
}

TEST_CASE("band confinement grows affinely with the window") {
  const auto pot = Potential::quartic();
  std::vector<double> ells = {4.0, 8.0}, gaps;
  for (double ell : ells) {
    EnergyProblem prob;
    prob.grid = domain(2.0 * ell, 0.1);
    prob.u_minus = -1.0;
    prob.u_plus = 1.0;
    prob.constraint = ConstraintKind::Band;
    prob.window_lo = -ell;
    prob.window_hi = ell;
    prob.band_lo = -0.8;
    prob.band_hi = 0.8;
    gaps.push_back(energy_gap(prob, pot));
  }
  const double slope = (gaps[1] - gaps[0]) / (ells[1] - ells[0]);
  // pointwise bound: int V >= 2 ell min V on the band = 2 ell V(0.8)
  const double vmin = pot(0.8);
  CHECK(slope >= 2.0 * vmin - 0.01);
  CHECK(slope <= 2.0 * vmin + 0.05);
}

TEST_CASE("wasted excursion gap brackets the surface tension") {
  const auto pot = Potential::quartic();
  EnergyProblem prob;
  prob.grid = domain(16.0, 0.05);
  prob.u_minus = -1.0;
  prob.u_plus = 1.0;
  prob.constraint = ConstraintKind::WastedDeltaMinus;
  prob.window_lo = -8.0;
  prob.window_hi = 8.0;
  prob.delta = 0.05;
  const double gap = energy_gap(prob, pot);
  CHECK(gap >= kC0 - 3.0 * prob.delta);
  CHECK(gap <= kC0 + 3.0 * prob.delta);
}

TEST_CASE("pre-plus excursions cost at most c0 plus order delta") {
  const auto pot = Potential::quartic();
  EnergyProblem prob;
  prob.grid = domain(16.0, 0.05);
  prob.u_minus = -1.0;
  prob.u_plus = -1.0;
  prob.constraint = ConstraintKind::DeltaPlusPre;
  prob.window_lo = -8.0;
  prob.window_hi = 8.0;
  prob.delta = 0.05;
  const double gap = energy_gap(prob, pot);
  CHECK(gap <= kC0 + 3.0 * prob.delta);
  CHECK(gap >= kC0 - 3.0 * prob.delta);
}

TEST_CASE("solver values respect the analytic lower bounds") {
  const auto pot = Potential::quartic();
  const auto geom = WellGeometry::build(pot);
  RandomSource rng(77);
  for (int trial = 0; trial < 6; ++trial) {
    EnergyProblem prob;
    prob.grid = domain(10.0, 0.1);
    prob.u_minus = -1.5 + rng.uniform();
    prob.u_plus = -1.5 + 3.0 * rng.uniform();
    switch (trial % 3) {
      case 0:
        prob.constraint = ConstraintKind::None;
        break;
      case 1:
        prob.constraint = ConstraintKind::WastedDeltaMinus;
        prob.window_lo = -5.0;
        prob.window_hi = 5.0;
        prob.delta = 0.1;
        break;
      case 2:
        prob.constraint = ConstraintKind::PointAtLeast;
        prob.point_x = 0.0;
        prob.point_level = 0.7;
        break;
    }
    const auto res = minimize_energy(prob, pot);
    const double lb = analytic_lower_bound(prob, pot, geom);
    INFO("trial ", trial, " bc (", prob.u_minus, ",", prob.u_plus, ")");
    CHECK(res.energy >= lb - 1e-3);
  }
}

TEST_CASE("gap is monotone non-increasing in delta for wasted excursions") {
  const auto pot = Potential::quartic();
  double prev = 1e9;
  for (double d : {0.05, 0.15, 0.3}) {
    EnergyProblem prob;
    prob.grid = domain(12.0, 0.1);
    prob.u_minus = -1.0;
    prob.u_plus = 1.0;
    prob.constraint = ConstraintKind::WastedDeltaMinus;
    prob.window_lo = -6.0;
    prob.window_hi = 6.0;
    prob.delta = d;
    const double gap = energy_gap(prob, pot);
    CHECK(gap <= prev + 5e-3);
    prev = gap;
  }
}

TEST_CASE("translation of the constraint window barely moves the gap") {
  const auto pot = Potential::quartic();
  auto gap_at = [&](double shift) {
    EnergyProblem prob;
    prob.grid = domain(14.0, 0.1);
    prob.u_minus = -1.0;
    prob.u_plus = 1.0;
    prob.constraint = ConstraintKind::WastedDeltaMinus;
    prob.window_lo = -4.0 + shift;
    prob.window_hi = 4.0 + shift;
    prob.delta = 0.1;
    return energy_gap(prob, pot);
  };
  CHECK(std::abs(gap_at(0.0) - gap_at(3.0)) <= 1e-3);
}

TEST_CASE("lemma verification sweeps report sane functional forms") {
  const auto pot = Potential::quartic();

  SUBCASE("band lemma: linear growth in ell") {
    LemmaParams lp;
    lp.delta = 0.2;
    lp.dx = 0.1;
    lp.ell_sweep = {5.0, 10.0};
    lp.bc_lo = -2.0;
    lp.bc_hi = 2.0;
    const auto rep = verify_energy_lemma("band", lp, pot);
    CHECK(rep.functional_form_ok);
    CHECK(rep.fitted_slope > 0.0);
    CHECK(rep.fitted_constant > 0.0);
    CHECK(rep.lb_worst_slack >= -1e-3);
  }

  SUBCASE("midpoint lemma certifies c1") {
    LemmaParams lp;
    lp.delta = 0.05;
    lp.ell = 8.0;
    lp.dx = 0.05;
    lp.bc_lo = -2.0;
    lp.bc_hi = 0.0;
    const auto rep = verify_energy_lemma("midpoint", lp, pot);
    CHECK(rep.functional_form_ok);
    // solver gap stays within 0.2 of the half-excursion constant
    CHECK(rep.worst_margin >= 0.0);
    CHECK(rep.fitted_constant * lp.delta <= 0.2);
  }
}

TEST_CASE("problem validation") {
  EnergyProblem prob;
  prob.grid = domain(4.0, 0.1);
  prob.constraint = ConstraintKind::Band;
  prob.window_lo = -10.0;  // outside the domain
  prob.window_hi = 2.0;
  CHECK_THROWS_AS(prob.validate(), ConfigError);
  prob.window_lo = -2.0;
  prob.band_lo = 0.5;
  prob.band_hi = -0.5;
  CHECK_THROWS_AS(prob.validate(), ConfigError);
  prob.constraint = ConstraintKind::WastedDeltaMinus;
  prob.band_lo = -1.0;
  prob.band_hi = 1.0;
  prob.delta = 0.7;
  CHECK_THROWS_AS(prob.validate(), ConfigError);
}
