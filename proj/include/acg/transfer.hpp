#ifndef ACG_TRANSFER_HPP
#define ACG_TRANSFER_HPP

#include <cmath>
#include <memory>
#include <vector>

#include "acg/automata.hpp"
#include "acg/potential.hpp"

namespace acg {

/// Value discretization for the transfer computation.
struct StateGrid {
  double u_min = -4.0;
  double u_max = 4.0;
  int m = 401;

  double width() const { return (u_max - u_min) / m; }
  double center(int j) const { return u_min + (j + 0.5) * width(); }
  int bin_of(double u) const;
};

/// One-step kernel of the lattice Gibbs measure:
///   K(a -> b) = exp(-(b-a)^2/(2 eps dx) - (dx/eps)(V(a)+V(b))/2),
/// the potential weight split half-half so that products reproduce the
/// trapezoidal path energy exactly.
class TransferModel {
 public:
  TransferModel(StateGrid sg, double epsilon, double dx, const Potential& pot);

  const StateGrid& state_grid() const { return sg_; }
  double epsilon() const { return epsilon_; }
  double dx() const { return dx_; }

  double kernel(double a, double b) const;
  const std::vector<double>& matrix() const { return K_; }  // row-major m x m
  double entry(int i, int j) const { return K_[static_cast<std::size_t>(i) * sg_.m + j]; }

  /// Boundary injection: kernel from an exact value into all bin centers,
  /// and from all bin centers into an exact value.
  std::vector<double> inject_from(double u_boundary) const;
  std::vector<double> inject_into(double u_boundary) const;

 private:
  StateGrid sg_;
  double epsilon_, dx_;
  Potential pot_;
  std::vector<double> K_;
};

TransferModel build_transfer(double epsilon, double dx, const Potential& pot,
                             const StateGrid& sg);

/// A forward or backward partial product with its accumulated log scale.
struct ScaledVector {
  std::vector<double> v;
  double log_scale = 0.0;
};

struct MarginalTable {
  StateGrid sg;
  std::vector<int> sites;                        // interior site indices (1..n)
  std::vector<std::vector<double>> marginals;    // normalized per site
  double log_z = 0.0;

  double mean(std::size_t site_idx) const;
  double variance(std::size_t site_idx) const;
  double mass_ge(std::size_t site_idx, double level) const;
  double mass_le(std::size_t site_idx, double level) const;
};

/// Single-site marginals of the lattice measure on a grid with n_steps
/// segments, boundary values injected exactly. Sites index grid points
/// 1 .. n_steps-1.
MarginalTable marginal(const TransferModel& model, double u_minus, double u_plus,
                       int n_steps, const std::vector<int>& sites);

/// Same products, but with caller-supplied boundary in-distributions
/// (used for Markov splice checks).
MarginalTable marginal_injected(const TransferModel& model, const ScaledVector& forward_in,
                                const ScaledVector& backward_in, int n_steps,
                                const std::vector<int>& sites);

/// Forward partial product from the left boundary value up to a given site.
ScaledVector forward_vector(const TransferModel& model, double u_minus, int site);
/// Backward partial product from the right boundary value down to a site.
ScaledVector backward_vector(const TransferModel& model, double u_plus, int n_steps, int site);

/// Exact probability (up to the value/space discretization) of an
/// automaton-expressible event under the lattice measure, via transfer on
/// the product space (u bin x automaton state). Throws ConfigError when the
/// automaton exceeds the product-space budget.
double event_log_probability(const TransferModel& model, double u_minus, double u_plus,
                             int n_steps, const SegmentAutomaton& automaton,
                             int max_states = 64);

inline double event_probability_exact(const TransferModel& model, double u_minus,
                                      double u_plus, int n_steps,
                                      const SegmentAutomaton& automaton,
                                      int max_states = 64) {
  return std::exp(event_log_probability(model, u_minus, u_plus, n_steps, automaton, max_states));
}

}  // namespace acg

#endif
