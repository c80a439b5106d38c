#include <doctest.h>

#include <cmath>
#include <vector>

#include "acg/bridge.hpp"
#include "acg/errors.hpp"
#include "acg/stats.hpp"

using namespace acg;

TEST_CASE("zero-noise bridge is the affine interpolant") {
  BridgeSpec spec;
  spec.grid = Grid(-2.0, 3.0, 9);
  spec.u_minus = -1.0;
  spec.u_plus = 0.5;
  spec.epsilon = 0.0;
  RandomSource rng(1);
  const auto p = sample_bridge(spec, rng);
  const auto h = affine_interpolant(-1.0, 0.5, spec.grid);
  for (int i = 0; i < p.num_points(); ++i)
    CHECK(p.values[i] == doctest::Approx(h.values[i]).epsilon(1e-14));
}

TEST_CASE("bridge covariance formula and sampling moments") {
  BridgeSpec spec;
  spec.grid = Grid(0.0, 1.0, 19);
  spec.epsilon = 1.0;
  CHECK(bridge_covariance(spec, 0.0, 0.5) == doctest::Approx(0.0));
  CHECK(bridge_covariance(spec, 0.5, 0.5) == doctest::Approx(0.25));
  CHECK(bridge_covariance(spec, 0.3, 0.7) == doctest::Approx(bridge_covariance(spec, 0.7, 0.3)));
  CHECK_THROWS_AS(bridge_covariance(spec, -0.1, 0.5), DomainError);

  // empirical variance at the midpoint: eps/4 within 5 standard errors
  spec.epsilon = 0.8;
  RandomSource rng(11);
  const int N = 100000;
  std::vector<double> mid(N);
  const int mi = 10;  // x = 0.5
  for (int k = 0; k < N; ++k) {
    const auto p = sample_bridge(spec, rng);
    mid[static_cast<std::size_t>(k)] = p.values[mi];
  }
  const double var = sample_variance(mid);
  const double target = spec.epsilon * 0.25;
  const double se = target * std::sqrt(2.0 / (N - 1.0));
  CHECK(std::abs(var - target) <= 5.0 * se);
  CHECK(std::abs(sample_mean(mid)) <= 5.0 * std::sqrt(target / N));
}

TEST_CASE("mean path matches the affine shift for general boundary data") {
  BridgeSpec spec;
  spec.grid = Grid(-1.0, 2.0, 11);
  spec.u_minus = 0.7;
  spec.u_plus = -0.3;
  spec.epsilon = 0.5;
  RandomSource rng(5);
  const int N = 100000;
  std::vector<double> acc(static_cast<std::size_t>(spec.grid.num_points()), 0.0);
  for (int k = 0; k < N; ++k) {
    const auto p = sample_bridge(spec, rng);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += p.values[i];
  }
  const auto h = affine_interpolant(spec.u_minus, spec.u_plus, spec.grid);
  for (int i = 0; i < spec.grid.num_points(); ++i) {
    const double mean = acc[static_cast<std::size_t>(i)] / N;
    const double sd = std::sqrt(bridge_covariance(spec, spec.grid.point(i), spec.grid.point(i)) /
                                N);
    CHECK(std::abs(mean - h.values[i]) <= 5.0 * sd + 1e-9);
  }
}

TEST_CASE("empirical covariance matches the kernel entrywise (21-point grid)") {
  BridgeSpec spec;
  spec.grid = Grid(0.0, 1.0, 19);
  spec.epsilon = 0.6;
  RandomSource rng(3);
  const int N = 100000;
  const int np = spec.grid.num_points();
  std::vector<std::vector<double>> samples(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) samples[static_cast<std::size_t>(k)] = sample_bridge(spec, rng).values;
  int checked = 0;
  for (int i = 1; i + 1 < np; i += 3) {
    for (int j = i; j + 1 < np; j += 3) {
      double c = 0.0;
      for (int k = 0; k < N; ++k) c += samples[static_cast<std::size_t>(k)][i] *
                                        samples[static_cast<std::size_t>(k)][j];
      c /= N;
      const double xi = spec.grid.point(i), xj = spec.grid.point(j);
      const double target = bridge_covariance(spec, xi, xj);
      const double vii = bridge_covariance(spec, xi, xi);
      const double vjj = bridge_covariance(spec, xj, xj);
      const double se = std::sqrt((vii * vjj + target * target) / N);
      INFO("entry (", i, ",", j, ")");
      CHECK(std::abs(c - target) <= 6.0 * se);
      ++checked;
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("resampling a subinterval touches only its interior") {
  BridgeSpec spec;
  spec.grid = Grid(0.0, 4.0, 39);
  spec.u_minus = -1.0;
  spec.u_plus = 1.0;
  spec.epsilon = 0.3;
  RandomSource rng(21);
  const auto p = sample_bridge(spec, rng);
  const auto q = resample_subinterval(p, 1.0, 3.0, spec.epsilon, rng);
  for (int i = 0; i < p.num_points(); ++i) {
    const double x = p.grid.point(i);
    if (x <= 1.0 || x >= 3.0) CHECK(q.values[i] == p.values[i]);
  }
  // no interior points: identity
  const auto r = resample_subinterval(p, 1.0, 1.0 + p.grid.dx(), spec.epsilon, rng);
  for (int i = 0; i < p.num_points(); ++i) CHECK(r.values[i] == p.values[i]);
  CHECK_THROWS_AS(resample_subinterval(p, 1.03, 3.0, spec.epsilon, rng), DomainError);
}

TEST_CASE("resampled bridge keeps the bridge law (two-sided Markov property)") {
  BridgeSpec spec;
  spec.grid = Grid(0.0, 1.0, 15);
  spec.epsilon = 0.7;
  RandomSource rng(13);
  const int N = 60000;
  const int site = 8;  // x = 0.5
  std::vector<double> direct(N), resampled(N);
  for (int k = 0; k < N; ++k) {
    auto p = sample_bridge(spec, rng);
    direct[static_cast<std::size_t>(k)] = p.values[site];
    auto q = resample_subinterval(p, 0.25, 0.75, spec.epsilon, rng);
    resampled[static_cast<std::size_t>(k)] = q.values[site];
  }
  const double v1 = sample_variance(direct), v2 = sample_variance(resampled);
  const double se = v1 * std::sqrt(2.0 / N) * 2.0;
  CHECK(std::abs(v1 - v2) <= 6.0 * se);
  CHECK(ks_two_sample_pvalue(direct, resampled) > 1e-4);
}

TEST_CASE("vertical reflection symmetry of the pinned bridge") {
  BridgeSpec spec;
  spec.grid = Grid(0.0, 2.0, 31);
  spec.epsilon = 0.4;
  RandomSource rng(17);
  const int N = 40000;
  std::vector<double> ints, negints, maxs, negmins;
  for (int k = 0; k < N; ++k) {
    const auto p = sample_bridge(spec, rng);
    double s = 0.0, mx = -1e9, mn = 1e9;
    for (double v : p.values) {
      s += v;
      mx = std::max(mx, v);
      mn = std::min(mn, v);
    }
    ints.push_back(s);
    negints.push_back(-s);
    maxs.push_back(mx);
    negmins.push_back(-mn);
  }
  CHECK(ks_two_sample_pvalue(ints, negints) > 1e-4);
  CHECK(ks_two_sample_pvalue(maxs, negmins) > 1e-4);
}

TEST_CASE("coarse-grid restriction has the coarse bridge law") {
  // sample on a fine grid, restrict to every 4th point, compare moments with
  // a bridge built directly on the coarse grid
  BridgeSpec fine;
  fine.grid = Grid(0.0, 1.0, 31);
  fine.epsilon = 1.0;
  BridgeSpec coarse;
  coarse.grid = Grid(0.0, 1.0, 7);
  coarse.epsilon = 1.0;
  RandomSource rng(29);
  const int N = 60000;
  std::vector<double> fine_mid(N), coarse_mid(N);
  for (int k = 0; k < N; ++k) {
    fine_mid[static_cast<std::size_t>(k)] = sample_bridge(fine, rng).values[16];
    coarse_mid[static_cast<std::size_t>(k)] = sample_bridge(coarse, rng).values[4];
  }
  CHECK(ks_two_sample_pvalue(fine_mid, coarse_mid) > 1e-4);
}

TEST_CASE("shift log-density: normalization and mean shift") {
  BridgeSpec spec;
  spec.grid = Grid(0.0, 1.0, 9);
  spec.epsilon = 0.5;
  // a tent shift vanishing at the boundary
  std::vector<double> fv(static_cast<std::size_t>(spec.grid.num_points()), 0.0);
  for (int i = 0; i < spec.grid.num_points(); ++i) {
    const double x = spec.grid.point(i);
    fv[static_cast<std::size_t>(i)] = 0.4 * std::min(x, 1.0 - x);
  }
  fv.front() = 0.0;
  fv.back() = 0.0;
  const Path f(spec.grid, fv);

  SUBCASE("zero shift has zero log-density") {
    Path zero(spec.grid, std::vector<double>(static_cast<std::size_t>(spec.grid.num_points()), 0.0));
    RandomSource rng(2);
    const auto u = sample_bridge(spec, rng);
    CHECK(cameron_martin_logdensity(zero, u, spec.epsilon) == doctest::Approx(0.0));
  }

  SUBCASE("nonzero boundary shift is rejected") {
    Path bad = f;
    bad.values.front() = 0.1;
    RandomSource rng(2);
    const auto u = sample_bridge(spec, rng);
    CHECK_THROWS_AS(cameron_martin_logdensity(bad, u, spec.epsilon), DomainError);
  }

  SUBCASE("change of measure normalizes and shifts the mean") {
    RandomSource rng(23);
    const int N = 100000;
    const int site = 5;  // x = 0.5, where f peaks
    double wsum = 0.0, wsum2 = 0.0, wu = 0.0, wu2 = 0.0;
    for (int k = 0; k < N; ++k) {
      const auto u = sample_bridge(spec, rng);
      const double w = std::exp(cameron_martin_logdensity(f, u, spec.epsilon));
      wsum += w;
      wsum2 += w * w;
      const double uw = u.values[site] * w;
      wu += uw;
      wu2 += uw * uw;
    }
    const double mean_w = wsum / N;
    const double se_w = std::sqrt((wsum2 / N - mean_w * mean_w) / N);
    CHECK(std::abs(mean_w - 1.0) <= 5.0 * se_w);

    const double mean_wu = wu / N;
    const double se_wu = std::sqrt((wu2 / N - mean_wu * mean_wu) / N);
    const double target = f.values[site];  // h = 0 for the pinned-at-zero bridge
    CHECK(std::abs(mean_wu - target) <= 5.0 * (se_wu + se_w) + 1e-12);
  }
}
