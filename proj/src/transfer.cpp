#include "acg/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "acg/errors.hpp"

namespace acg {

int StateGrid::bin_of(double u) const {
  int j = static_cast<int>(std::floor((u - u_min) / width()));
  return std::max(0, std::min(m - 1, j));
}

TransferModel::TransferModel(StateGrid sg, double epsilon, double dx, const Potential& pot)
    : sg_(sg), epsilon_(epsilon), dx_(dx), pot_(pot) {
  if (!(epsilon > 0.0)) throw DomainError("TransferModel: epsilon must be > 0");
  if (!(dx > 0.0)) throw DomainError("TransferModel: dx must be > 0");
  if (sg.m < 41) throw ConfigError("StateGrid: need at least 41 bins");
  const double margin = 5.0 * std::sqrt(epsilon);
  if (sg.u_min > -1.0 - margin || sg.u_max < 1.0 + margin)
    throw ConfigError("StateGrid bounds must cover [-1-5*sqrt(eps), 1+5*sqrt(eps)]");

  const int m = sg_.m;
  std::vector<double> vpot(m), cent(m);
  for (int j = 0; j < m; ++j) {
    cent[j] = sg_.center(j);
    vpot[j] = pot_(cent[j]);
    if (!std::isfinite(vpot[j])) throw NumericError("non-finite potential on state grid");
  }
  K_.assign(static_cast<std::size_t>(m) * m, 0.0);
  const double gauss = 1.0 / (2.0 * epsilon_ * dx_);
  const double pw = 0.5 * dx_ / epsilon_;
  bool any_alive = false;
  for (int i = 0; i < m; ++i) {
    double* row = &K_[static_cast<std::size_t>(i) * m];
    for (int j = 0; j < m; ++j) {
      const double du = cent[j] - cent[i];
      row[j] = std::exp(-du * du * gauss - pw * (vpot[i] + vpot[j]));
      any_alive = any_alive || row[j] > 0.0;
    }
  }
  if (!any_alive) throw NumericError("transfer kernel underflowed everywhere");
}

double TransferModel::kernel(double a, double b) const {
  const double du = b - a;
  return std::exp(-du * du / (2.0 * epsilon_ * dx_) -
                  0.5 * dx_ / epsilon_ * (pot_(a) + pot_(b)));
}

std::vector<double> TransferModel::inject_from(double u_boundary) const {
  std::vector<double> v(sg_.m);
  for (int j = 0; j < sg_.m; ++j) v[j] = kernel(u_boundary, sg_.center(j));
  return v;
}

std::vector<double> TransferModel::inject_into(double u_boundary) const {
  std::vector<double> v(sg_.m);
  for (int i = 0; i < sg_.m; ++i) v[i] = kernel(sg_.center(i), u_boundary);
  return v;
}

TransferModel build_transfer(double epsilon, double dx, const Potential& pot,
                             const StateGrid& sg) {
  return TransferModel(sg, epsilon, dx, pot);
}

namespace {

void rescale(ScaledVector& f) {
  double mx = 0.0;
  for (double x : f.v) mx = std::max(mx, x);
  if (!(mx > 0.0)) throw NumericError("transfer product vanished (all mass lost)");
  if (mx == 1.0) return;
  const double inv = 1.0 / mx;
  for (double& x : f.v) x *= inv;
  f.log_scale += std::log(mx);
}

// f' = K^T f (mass flowing forward), with the bin-width weight folded in.
void step_forward(const TransferModel& model, ScaledVector& f) {
  const int m = model.state_grid().m;
  const double w = model.state_grid().width();
  std::vector<double> out(m, 0.0);
  const auto& K = model.matrix();
  for (int i = 0; i < m; ++i) {
    const double fi = f.v[i];
    if (fi == 0.0) continue;
    const double* row = &K[static_cast<std::size_t>(i) * m];
    for (int j = 0; j < m; ++j) out[j] += fi * row[j];
  }
  for (double& x : out) x *= w;
  f.v.swap(out);
  rescale(f);
}

// g' = K g (mass flowing backward).
void step_backward(const TransferModel& model, ScaledVector& g) {
  const int m = model.state_grid().m;
  const double w = model.state_grid().width();
  std::vector<double> out(m, 0.0);
  const auto& K = model.matrix();
  for (int i = 0; i < m; ++i) {
    const double* row = &K[static_cast<std::size_t>(i) * m];
    double acc = 0.0;
    for (int j = 0; j < m; ++j) acc += row[j] * g.v[j];
    out[i] = acc * w;
  }
  g.v.swap(out);
  rescale(g);
}

}  // namespace

ScaledVector forward_vector(const TransferModel& model, double u_minus, int site) {
  if (site < 1) throw DomainError("forward_vector: site must be >= 1");
  ScaledVector f{model.inject_from(u_minus), 0.0};
  rescale(f);
  for (int s = 1; s < site; ++s) step_forward(model, f);
  return f;
}

ScaledVector backward_vector(const TransferModel& model, double u_plus, int n_steps,
                             int site) {
  if (site > n_steps - 1) throw DomainError("backward_vector: site must be <= n_steps-1");
  ScaledVector g{model.inject_into(u_plus), 0.0};
  rescale(g);
  for (int s = n_steps - 1; s > site; --s) step_backward(model, g);
  return g;
}

double MarginalTable::mean(std::size_t k) const {
  double s = 0.0;
  for (int j = 0; j < sg.m; ++j) s += sg.center(j) * marginals[k][j];
  return s;
}

double MarginalTable::variance(std::size_t k) const {
  const double m1 = mean(k);
  double s = 0.0;
  for (int j = 0; j < sg.m; ++j) {
    const double d = sg.center(j) - m1;
    s += d * d * marginals[k][j];
  }
  return s;
}

double MarginalTable::mass_ge(std::size_t k, double level) const {
  double s = 0.0;
  for (int j = 0; j < sg.m; ++j)
    if (sg.center(j) >= level) s += marginals[k][j];
  return s;
}

double MarginalTable::mass_le(std::size_t k, double level) const {
  double s = 0.0;
  for (int j = 0; j < sg.m; ++j)
    if (sg.center(j) <= level) s += marginals[k][j];
  return s;
}

namespace {

MarginalTable combine_marginals(const TransferModel& model,
                                std::vector<ScaledVector> boundary_f,
                                std::vector<ScaledVector> boundary_g, int n_steps,
                                const std::vector<int>& sites) {
  const int m = model.state_grid().m;
  const double w = model.state_grid().width();

  // Forward vectors at every requested site (single sweep).
  std::vector<int> sorted_sites = sites;
  std::sort(sorted_sites.begin(), sorted_sites.end());
  for (int s : sorted_sites)
    if (s < 1 || s > n_steps - 1) throw DomainError("marginal: site outside interior");

  MarginalTable table;
  table.sg = model.state_grid();
  table.sites = sites;
  table.marginals.resize(sites.size());

  // sweep forward, capturing f at each site
  std::vector<ScaledVector> f_at(sorted_sites.size());
  {
    ScaledVector f = boundary_f[0];
    int pos = 1;
    for (std::size_t k = 0; k < sorted_sites.size(); ++k) {
      while (pos < sorted_sites[k]) {
        step_forward(model, f);
        ++pos;
      }
      f_at[k] = f;
    }
  }
  // sweep backward, capturing g at each site
  std::vector<ScaledVector> g_at(sorted_sites.size());
  {
    ScaledVector g = boundary_g[0];
    int pos = n_steps - 1;
    for (std::size_t k = sorted_sites.size(); k-- > 0;) {
      while (pos > sorted_sites[k]) {
        step_backward(model, g);
        --pos;
      }
      g_at[k] = g;
    }
  }

  // log Z from the first site (any site gives the same value)
  {
    const auto& f = f_at[0];
    const auto& g = g_at[0];
    double z = 0.0;
    for (int j = 0; j < m; ++j) z += f.v[j] * g.v[j];
    z *= w;
    if (!(z > 0.0)) throw NumericError("marginal: vanishing normalization");
    table.log_z = std::log(z) + f.log_scale + g.log_scale;
  }

  for (std::size_t k = 0; k < sorted_sites.size(); ++k) {
    std::vector<double> p(m);
    double z = 0.0;
    for (int j = 0; j < m; ++j) {
      p[j] = f_at[k].v[j] * g_at[k].v[j];
      z += p[j];
    }
    if (!(z > 0.0)) throw NumericError("marginal: vanishing site mass");
    for (double& x : p) x /= z;
    // map back to the caller's site order
    const int site = sorted_sites[k];
    for (std::size_t q = 0; q < sites.size(); ++q)
      if (sites[q] == site) table.marginals[q] = p;
  }
  return table;
}

}  // namespace

MarginalTable marginal(const TransferModel& model, double u_minus, double u_plus, int n_steps,
                       const std::vector<int>& sites) {
  if (sites.empty()) throw DomainError("marginal: no sites requested");
  if (n_steps < 2) throw DomainError("marginal: need at least 2 steps");
  if (u_minus < model.state_grid().u_min || u_minus > model.state_grid().u_max ||
      u_plus < model.state_grid().u_min || u_plus > model.state_grid().u_max)
    throw DomainError("marginal: boundary value outside state grid");
  ScaledVector f{model.inject_from(u_minus), 0.0};
  ScaledVector g{model.inject_into(u_plus), 0.0};
  rescale(f);
  rescale(g);
  return combine_marginals(model, {f}, {g}, n_steps, sites);
}

MarginalTable marginal_injected(const TransferModel& model, const ScaledVector& forward_in,
                                const ScaledVector& backward_in, int n_steps,
                                const std::vector<int>& sites) {
  // the supplied vectors live at the subsystem's boundary sites 0 and
  // n_steps; one transfer step moves them to sites 1 and n_steps - 1 where
  // the sweep in combine_marginals starts
  ScaledVector f = forward_in;
  ScaledVector g = backward_in;
  step_forward(model, f);
  step_backward(model, g);
  return combine_marginals(model, {f}, {g}, n_steps, sites);
}

double event_log_probability(const TransferModel& model, double u_minus, double u_plus,
                             int n_steps, const SegmentAutomaton& automaton, int max_states) {
  const int S = automaton.num_states();
  if (S > max_states)
    throw ConfigError("automaton exceeds product-space budget (" + std::to_string(S) + " > " +
                      std::to_string(max_states) + " states)");
  const int m = model.state_grid().m;
  const double w = model.state_grid().width();
  const double dx = model.dx();
  const auto& K = model.matrix();
  std::vector<double> cent(m);
  for (int j = 0; j < m; ++j) cent[j] = model.state_grid().center(j);

  // Product-space forward state: F[s][j].
  std::vector<double> F(static_cast<std::size_t>(S) * m, 0.0);
  double log_scale = 0.0;
  {
    const auto inj = model.inject_from(u_minus);
    const int s0 = automaton.initial_state(u_minus);
    for (int j = 0; j < m; ++j) {
      const int s1 = automaton.step(s0, u_minus, cent[j], 0.0, dx);
      F[static_cast<std::size_t>(s1) * m + j] += inj[j];
    }
  }

  // Transition table for position-independent automata, rebuilt per step
  // otherwise. tbl[(s*m + i)*m + j] packed as int16.
  std::vector<std::int16_t> tbl;
  auto build_table = [&](double xa, double xb) {
    tbl.resize(static_cast<std::size_t>(S) * m * m);
    for (int s = 0; s < S; ++s)
      for (int i = 0; i < m; ++i) {
        std::int16_t* row = &tbl[(static_cast<std::size_t>(s) * m + i) * m];
        for (int j = 0; j < m; ++j) {
          const int s1 = automaton.step(s, cent[i], cent[j], xa, xb);
          if (s1 < 0 || s1 >= S)
            throw ContractViolation("automaton stepped outside its declared state count");
          row[j] = static_cast<std::int16_t>(s1);
        }
      }
  };
  const bool posdep = automaton.position_dependent();
  if (!posdep) build_table(0.0, dx);

  std::vector<double> Fnext(static_cast<std::size_t>(S) * m);
  double log_z_all;
  {
    // Track the plain (automaton-free) normalization with the same sweeps.
    ScaledVector f{model.inject_from(u_minus), 0.0};
    rescale(f);
    for (int s = 1; s < n_steps; ++s) step_forward(model, f);
    const auto inj = model.inject_into(u_plus);
    double z = 0.0;
    for (int i = 0; i < m; ++i) z += f.v[i] * inj[i];
    z *= w;
    if (!(z > 0.0)) throw NumericError("event probability: vanishing normalization");
    log_z_all = std::log(z) + f.log_scale;
  }

  for (int step = 1; step < n_steps; ++step) {
    const double xa = step * dx, xb = (step + 1) * dx;
    if (posdep) build_table(xa, xb);
    std::fill(Fnext.begin(), Fnext.end(), 0.0);
    for (int s = 0; s < S; ++s) {
      const double* Fs = &F[static_cast<std::size_t>(s) * m];
      const std::int16_t* ts = &tbl[static_cast<std::size_t>(s) * m * m];
      for (int i = 0; i < m; ++i) {
        const double fi = Fs[i];
        if (fi == 0.0) continue;
        const double* krow = &K[static_cast<std::size_t>(i) * m];
        const std::int16_t* trow = &ts[static_cast<std::size_t>(i) * m];
        for (int j = 0; j < m; ++j) {
          Fnext[static_cast<std::size_t>(trow[j]) * m + j] += fi * krow[j];
        }
      }
    }
    double mx = 0.0;
    for (std::size_t q = 0; q < Fnext.size(); ++q) {
      Fnext[q] *= w;
      mx = std::max(mx, Fnext[q]);
    }
    if (!(mx > 0.0)) throw NumericError("event probability: product vanished");
    const double inv = 1.0 / mx;
    for (double& x : Fnext) x *= inv;
    log_scale += std::log(mx);
    F.swap(Fnext);
  }

  // Close with the exact right boundary value.
  const auto inj = model.inject_into(u_plus);
  const double xa = (n_steps - 1) * dx, xb = n_steps * dx;
  double z_acc = 0.0;
  for (int s = 0; s < S; ++s) {
    const double* Fs = &F[static_cast<std::size_t>(s) * m];
    for (int i = 0; i < m; ++i) {
      if (Fs[i] == 0.0) continue;
      const int s1 = automaton.step(s, cent[i], u_plus, xa, xb);
      if (automaton.accepting(s1)) z_acc += Fs[i] * inj[i];
    }
  }
  z_acc *= w;
  if (!(z_acc >= 0.0)) throw NumericError("event probability: negative mass");
  if (z_acc == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(z_acc) + log_scale - log_z_all;
}

}  // namespace acg
