#ifndef ACG_LAYERS_HPP
#define ACG_LAYERS_HPP

#include <optional>
#include <string>
#include <vector>

#include "acg/grid.hpp"

namespace acg {

enum class LayerKind {
  Up,
  Down,
  DeltaMinusUp,
  DeltaMinusDown,
  DeltaPlusUp,
  DeltaPlusDown,
  WastedDeltaMinus,
  WastedDeltaPlus,
};

std::string to_string(LayerKind k);

struct LayerEvent {
  LayerKind kind;
  double x_start = 0.0;
  double x_end = 0.0;
  // Witness triple for wasted excursions (x_start < x_mid < x_end);
  // x_mid is unused for plain layers.
  double x_mid = 0.0;
  double delta = 0.0;

  double length() const { return x_end - x_start; }
  double midpoint() const { return 0.5 * (x_start + x_end); }
};

struct LayerReport {
  std::vector<LayerEvent> events;

  int count(LayerKind k) const;
  int count_up() const;    // Up or DeltaMinusUp or DeltaPlusUp
  int count_down() const;
  bool empty() const { return events.empty(); }
};

enum class DetectKind { Full, DeltaMinus, DeltaPlus };

/// Locate transition layers on the piecewise-linear interpolant.
///  - Full:        maximal intervals with u(x_-) = -+1, u(x_+) = +-1 and
///                 |u| < 1 strictly in between (both orientations).
///  - DeltaMinus:  same with levels +-(1 - delta).
///  - DeltaPlus:   minimal witness pairs u(x_-) = -(1+delta), u(x_+) = 1+delta
///                 (and the sign-reversed orientation).
/// Level crossings are located by linear interpolation between grid points.
LayerReport detect_layers(const Path& path, DetectKind kind, double delta = 0.0);

enum class WastedKind { DeltaMinus, DeltaPlus };

/// Wasted excursions inside [window_lo, window_hi], reported as maximal
/// disjoint witness triples chosen greedily left to right (ties resolved by
/// the earliest completion point; consecutive triples may share endpoints).
///  - DeltaMinus: |u(x_0)| <= delta and both endpoint values within delta of
///    the same well (+1 or -1 family).
///  - DeltaPlus:  u(x_-+) <= -1-delta and u(x_0) = 0.
LayerReport detect_wasted_excursions(const Path& path, WastedKind kind, double delta,
                                     double window_lo, double window_hi);

/// One-sided stopping point, measurable from the declared side.
/// With a trigger: the first (left) / last (right) hit of the target level
/// that is preceded (left) / followed (right) by a trigger-level hit, the
/// search starting at the anchor. Without a trigger: plain first/last hit of
/// the target level inside [anchor_lo, anchor_hi].
/// Returns the sentinel x_plus (left) / x_minus (right) when the set is empty.
struct StoppingSpec {
  enum class Side { Left, Right };
  Side side = Side::Left;
  double anchor_lo = 0.0;
  double anchor_hi = 0.0;
  bool has_trigger = false;
  double trigger_level = 0.0;
  bool trigger_abs = false;  // trigger on |u| = level instead of u = level
  double target_level = 0.0;
};

double stopping_point(const Path& path, const StoppingSpec& spec);

/// Earliest/latest point x in [from, to] with u(x) in the closed band
/// [band_lo, band_hi], on the piecewise-linear interpolant.
std::optional<double> earliest_in_band(const Path& path, double from, double to,
                                       double band_lo, double band_hi);
std::optional<double> latest_in_band(const Path& path, double from, double to,
                                     double band_lo, double band_hi);

}  // namespace acg

#endif
