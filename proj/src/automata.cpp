#include "acg/automata.hpp"

#include <algorithm>
#include <cmath>

namespace acg {

namespace {

// Ordered wall hits (levels -+lev) encountered along the monotone segment
// a -> b, counting interior crossings and arrival at b, not departure at a.
// Returns up to 2 hits as +1 / -1 wall labels.
inline int segment_wall_hits(double a, double b, double lev, int out[2]) {
  int n = 0;
  const double lo = std::min(a, b), hi = std::max(a, b);
  const bool rising = b > a;
  auto hit = [&](double level) {
    return (level > lo && level < hi) || b == level;
  };
  if (rising) {
    if (hit(-lev)) out[n++] = -1;
    if (hit(+lev)) out[n++] = +1;
  } else {
    if (hit(+lev)) out[n++] = +1;
    if (hit(-lev)) out[n++] = -1;
  }
  return n;
}

inline int wall_of_value(double u, double lev) {
  if (u >= lev) return +1;
  if (u <= -lev) return -1;
  return 0;
}

}  // namespace

LayerCountAutomaton::LayerCountAutomaton(double lev, int target, bool up_only)
    : lev_(lev), target_(target), up_only_(up_only) {}

int LayerCountAutomaton::initial_state(double u_boundary) const {
  const int w = wall_of_value(u_boundary, lev_);
  // encode state = count*3 + wall index (0 none, 1 plus, 2 minus)
  return (w == +1) ? 1 : (w == -1) ? 2 : 0;
}

int LayerCountAutomaton::step(int state, double a, double b, double, double) const {
  int count = state / 3;
  int wall = state % 3;  // 0 none, 1 plus, 2 minus
  if (count >= target_) return state;
  int hits[2];
  const int n = segment_wall_hits(a, b, lev_, hits);
  for (int k = 0; k < n; ++k) {
    const int w = (hits[k] > 0) ? 1 : 2;
    if (wall != 0 && wall != w) {
      const bool is_up = (w == 1);
      if (!up_only_ || is_up) count = std::min(count + 1, target_);
    }
    wall = w;
  }
  return count * 3 + wall;
}

UpLayerMaxLenAutomaton::UpLayerMaxLenAutomaton(double lev, int max_len_steps)
    : lev_(lev), max_len_steps_(max_len_steps) {
  stale_ = 2 + max_len_steps_ + 1;
  accept_ = stale_ + 1;
}

int UpLayerMaxLenAutomaton::initial_state(double u_boundary) const {
  const int w = wall_of_value(u_boundary, lev_);
  if (w == -1) return 2;  // armed, age 0
  if (w == +1) return 1;
  return 0;
}

int UpLayerMaxLenAutomaton::step(int state, double a, double b, double, double) const {
  if (state == accept_) return state;
  int hits[2];
  const int n = segment_wall_hits(a, b, lev_, hits);
  for (int k = 0; k < n; ++k) {
    if (hits[k] < 0) {
      state = 2;  // (re-)arm at age 0; the latest -lev hit starts the layer
    } else {
      if (state >= 2 && state <= 2 + max_len_steps_) return accept_;
      state = 1;  // completed a long layer or unarmed +lev hit
    }
  }
  // age armed states at the end of the segment
  if (state >= 2 && state < stale_) {
    ++state;
    if (state > 2 + max_len_steps_) state = stale_;
  }
  return state;
}

ThresholdAutomaton::ThresholdAutomaton(double level, bool upper, double window_lo,
                                       double window_hi)
    : level_(level), upper_(upper), lo_(window_lo), hi_(window_hi) {}

int ThresholdAutomaton::initial_state(double) const { return 0; }

int ThresholdAutomaton::step(int state, double a, double b, double xa, double xb) const {
  if (state == 1) return 1;
  const double clo = std::max(xa, lo_), chi = std::min(xb, hi_);
  if (clo > chi) return state;
  const double t0 = (clo - xa) / (xb - xa), t1 = (chi - xa) / (xb - xa);
  const double v0 = a + t0 * (b - a), v1 = a + t1 * (b - a);
  const double vmax = std::max(v0, v1), vmin = std::min(v0, v1);
  if (upper_ ? (vmax >= level_) : (vmin <= level_)) return 1;
  return 0;
}

ConfinementAutomaton::ConfinementAutomaton(double band_lo, double band_hi, double window_lo,
                                           double window_hi)
    : band_lo_(band_lo), band_hi_(band_hi), lo_(window_lo), hi_(window_hi) {}

int ConfinementAutomaton::initial_state(double) const { return 0; }

int ConfinementAutomaton::step(int state, double a, double b, double xa, double xb) const {
  if (state == 1) return 1;
  const double clo = std::max(xa, lo_), chi = std::min(xb, hi_);
  if (clo > chi) return state;
  const double t0 = (clo - xa) / (xb - xa), t1 = (chi - xa) / (xb - xa);
  const double v0 = a + t0 * (b - a), v1 = a + t1 * (b - a);
  if (std::min(v0, v1) < band_lo_ || std::max(v0, v1) > band_hi_) return 1;
  return 0;
}

}  // namespace acg
