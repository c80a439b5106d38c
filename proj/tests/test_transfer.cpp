#include <doctest.h>

#include <cmath>
#include <vector>

#include "acg/automata.hpp"
#include "acg/errors.hpp"
#include "acg/transfer.hpp"

using namespace acg;

namespace {

Potential zero_potential() {
  return Potential::from_function([](double) { return 0.0; },
                                  [](double) { return 0.0; },
                                  [](double) { return 0.0; });
}

StateGrid grid_sym(double bound, int m) {
  StateGrid sg;
  sg.u_min = -bound;
  sg.u_max = bound;
  sg.m = m;
  return sg;
}

}  // namespace

TEST_CASE("free kernel rows integrate to the Gaussian normalization") {
  const double eps = 1.0, dx = 0.05;
  const auto sg = grid_sym(6.0, 601);
  const auto model = build_transfer(eps, dx, zero_potential(), sg);
  const double target = std::sqrt(2.0 * std::acos(-1.0) * eps * dx);
  const double w = sg.width();
  for (int i : {150, 300, 450}) {
    double row = 0.0;
    for (int j = 0; j < sg.m; ++j) row += model.entry(i, j);
    CHECK(row * w == doctest::Approx(target).epsilon(1e-6));
  }
}

TEST_CASE("kernel is exactly index-mirror symmetric for even potentials") {
  const auto sg = grid_sym(4.0, 161);
  const auto model = build_transfer(0.1, 0.05, Potential::quartic(), sg);
  for (int i = 0; i < sg.m; i += 7)
    for (int j = 0; j < sg.m; j += 11) {
      CHECK(model.entry(i, j) ==
            doctest::Approx(model.entry(sg.m - 1 - i, sg.m - 1 - j)).epsilon(1e-12));
    }
}

TEST_CASE("large steps concentrate the kernel near the wells") {
  const auto sg = grid_sym(4.0, 161);
  const auto model = build_transfer(0.1, 5.0, Potential::quartic(), sg);
  // from u = 0 the step lands near -1 or +1
  const int i0 = sg.bin_of(0.0);
  int argmax = 0;
  for (int j = 0; j < sg.m; ++j)
    if (model.entry(i0, j) > model.entry(i0, argmax)) argmax = j;
  CHECK(std::abs(std::abs(sg.center(argmax)) - 1.0) < 0.1);
}

TEST_CASE("marginals agree with a direct brute-force sum on a tiny chain") {
  const auto sg = grid_sym(4.0, 41);
  const double eps = 0.3, dx = 0.4;
  const auto pot = Potential::quartic();
  const auto model = build_transfer(eps, dx, pot, sg);
  const double um = -0.8, up = 0.4;
  const int n_steps = 4;  // 3 interior sites
  const auto table = marginal(model, um, up, n_steps, {1, 2, 3});

  // direct sum over the 3-site lattice
  const int m = sg.m;
  std::vector<double> p1(m, 0.0), p2(m, 0.0), p3(m, 0.0);
  double z = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        const double wgt = model.kernel(um, sg.center(a)) *
                           model.kernel(sg.center(a), sg.center(b)) *
                           model.kernel(sg.center(b), sg.center(c)) *
                           model.kernel(sg.center(c), up);
        p1[a] += wgt;
        p2[b] += wgt;
        p3[c] += wgt;
        z += wgt;
      }
  for (int j = 0; j < m; ++j) {
    CHECK(table.marginals[0][j] == doctest::Approx(p1[j] / z).epsilon(1e-8));
    CHECK(table.marginals[1][j] == doctest::Approx(p2[j] / z).epsilon(1e-8));
    CHECK(table.marginals[2][j] == doctest::Approx(p3[j] / z).epsilon(1e-8));
  }
  // log Z bookkeeping: includes three bin-width weights
  const double logz_direct = std::log(z) + 3.0 * std::log(sg.width());
  CHECK(table.log_z == doctest::Approx(logz_direct).epsilon(1e-10));
}

TEST_CASE("free marginal mean interpolates the boundary data") {
  const auto sg = grid_sym(5.0, 251);
  const auto model = build_transfer(0.5, 0.1, zero_potential(), sg);
  const int n_steps = 20;
  const auto table = marginal(model, -0.6, 1.0, n_steps, {10});
  CHECK(std::abs(table.mean(0) - 0.2) <= sg.width());
  // bridge variance at the midpoint of a length-2 interval: eps * 1 * 1 / 2
  CHECK(std::abs(table.variance(0) - 0.25) <= 0.02);
}

TEST_CASE("site marginals normalize and the point symmetry holds") {
  const auto sg = grid_sym(4.0, 161);
  const auto model = build_transfer(0.08, 0.1, Potential::quartic(), sg);
  const int n_steps = 60;
  std::vector<int> sites = {10, 30, 50};
  const auto table = marginal(model, -1.0, 1.0, n_steps, sites);
  for (std::size_t k = 0; k < sites.size(); ++k) {
    double s = 0.0;
    for (double v : table.marginals[k]) s += v;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
  }
  // marginal at site s mirrors (in value) the marginal at n_steps - s
  const auto mirrored = marginal(model, -1.0, 1.0, n_steps, {n_steps - 10});
  for (int j = 0; j < sg.m; ++j)
    CHECK(table.marginals[0][j] ==
          doctest::Approx(mirrored.marginals[0][sg.m - 1 - j]).epsilon(1e-9));
}

TEST_CASE("Markov splice: injected boundary vectors reproduce the full marginal") {
  const auto sg = grid_sym(4.0, 121);
  const auto model = build_transfer(0.1, 0.1, Potential::quartic(), sg);
  const int n_steps = 50;
  const int a = 15, b = 40, s = 25;
  const auto full = marginal(model, -1.0, 1.0, n_steps, {s});
  const auto f_in = forward_vector(model, -1.0, a);
  const auto g_in = backward_vector(model, 1.0, n_steps, b);
  // the sub-system has b - a steps; the site sits at s - a inside it
  const auto spliced = marginal_injected(model, f_in, g_in, b - a, {s - a});
  for (int j = 0; j < sg.m; ++j)
    CHECK(spliced.marginals[0][j] == doctest::Approx(full.marginals[0][j]).epsilon(1e-8));
}

TEST_CASE("event probabilities: harness and forced events") {
  const auto sg = grid_sym(4.0, 161);
  const auto model = build_transfer(0.1, 0.05, Potential::quartic(), sg);
  const int n_steps = 100;

  SUBCASE("accept-all automaton yields probability one") {
    AcceptAllAutomaton aut;
    CHECK(std::abs(event_log_probability(model, -1.0, 1.0, n_steps, aut)) <= 1e-9);
  }
  SUBCASE("at least one layer is forced by the boundary conditions") {
    LayerCountAutomaton aut(1.0, 1);
    const double logp = event_log_probability(model, -1.0, 1.0, n_steps, aut);
    CHECK(std::abs(logp) <= 1e-9);
  }
  SUBCASE("even total layer count is impossible with these boundary values") {
    LayerCountAutomaton a2(1.0, 2), a3(1.0, 3);
    const double p2 = std::exp(event_log_probability(model, -1.0, 1.0, n_steps, a2));
    const double p3 = std::exp(event_log_probability(model, -1.0, 1.0, n_steps, a3));
    CHECK(std::abs(p2 - p3) <= 1e-9);
  }
  SUBCASE("the product-space budget is enforced") {
    UpLayerMaxLenAutomaton big(1.0, 100);
    CHECK_THROWS_AS(event_log_probability(model, -1.0, 1.0, n_steps, big), ConfigError);
    CHECK_NOTHROW(event_log_probability(model, -1.0, 1.0, n_steps, big, 256));
  }
}

TEST_CASE("length-capped layer automaton on deterministic paths") {
  // drive the automaton along explicit piecewise-linear paths and compare
  // with the detector + length filter
  auto run_automaton = [](const UpLayerMaxLenAutomaton& aut, const std::vector<double>& u,
                          double dx) {
    int s = aut.initial_state(u.front());
    CHECK(s >= 0);
    CHECK(s < aut.num_states());
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      s = aut.step(s, u[i], u[i + 1], i * dx, (i + 1) * dx);
      CHECK(s >= 0);
      CHECK(s < aut.num_states());
    }
    return aut.accepting(s);
  };
  const double dx = 0.1;
  auto layer_path = [&](double length) {
    // -1 plateau, linear climb of the given length, +1 plateau
    std::vector<double> u;
    for (int i = 0; i < 20; ++i) u.push_back(-1.0);
    const int climb = static_cast<int>(std::lround(length / dx));
    for (int i = 1; i <= climb; ++i) u.push_back(-1.0 + 2.0 * i / climb);
    for (int i = 0; i < 20; ++i) u.push_back(1.0);
    return u;
  };
  UpLayerMaxLenAutomaton cap2(1.0, static_cast<int>(std::lround(2.0 / dx)));
  CHECK(run_automaton(cap2, layer_path(1.0), dx));
  CHECK(run_automaton(cap2, layer_path(1.9), dx));
  CHECK_FALSE(run_automaton(cap2, layer_path(3.0), dx));
  CHECK_FALSE(run_automaton(cap2, layer_path(6.0), dx));
  // a long climb with a -1 touch near the top edge restarts the length count
  {
    auto u = layer_path(6.0);
    // insert a dip back to -1 two segments before the +1 plateau begins
    const std::size_t k = 20 + 58;
    u[k] = -1.0;
    CHECK(run_automaton(cap2, u, dx));
  }
}

TEST_CASE("threshold automaton agrees with the site marginal") {
  const auto sg = grid_sym(4.0, 201);
  const auto model = build_transfer(0.15, 0.1, Potential::quartic(), sg);
  const int n_steps = 40;
  const int center = 20;
  const auto table = marginal(model, -1.0, -1.0, n_steps, {center});
  // P(max over the center node >= level) with a one-node window equals the
  // mass of bins >= level at that node (bin centers are the node values)
  const double level = 0.5;
  const double x_center = center * model.dx();
  ThresholdAutomaton aut(level, true, x_center - 1e-9, x_center + 1e-9);
  const double p_aut = std::exp(event_log_probability(model, -1.0, -1.0, n_steps, aut));
  // The automaton sees the whole segments touching the node, so it also
  // counts paths whose neighboring bins exceed the level only between
  // nodes; with bin centers as node values the two agree.
  const double p_marg = table.mass_ge(0, level);
  CHECK(p_aut == doctest::Approx(p_marg).epsilon(1e-6));
}

TEST_CASE("refinement stability of a layer-event probability") {
  const auto pot = Potential::quartic();
  const double eps = 0.1, L = 3.0;
  auto run = [&](double dx, int m) {
    const auto sg = grid_sym(4.0, m);
    const auto model = build_transfer(eps, dx, pot, sg);
    const int n_steps = static_cast<int>(std::lround(2.0 * L / dx));
    LayerCountAutomaton aut(0.8, 3);
    return event_log_probability(model, -1.0, 1.0, n_steps, aut);
  };
  const double coarse = run(0.05, 401);
  const double fine = run(0.025, 801);
  CHECK(std::abs(fine - coarse) / std::abs(fine) < 0.02);
}

TEST_CASE("state grids that do not cover the core are rejected") {
  StateGrid sg;
  sg.u_min = -1.5;
  sg.u_max = 1.5;
  sg.m = 61;
  CHECK_THROWS_AS(build_transfer(0.2, 0.05, Potential::quartic(), sg), ConfigError);
  StateGrid small;
  small.u_min = -4.0;
  small.u_max = 4.0;
  small.m = 21;
  CHECK_THROWS_AS(build_transfer(0.05, 0.05, Potential::quartic(), small), ConfigError);
}
