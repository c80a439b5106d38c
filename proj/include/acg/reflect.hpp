#ifndef ACG_REFLECT_HPP
#define ACG_REFLECT_HPP

#include <functional>
#include <string>
#include <vector>

#include "acg/layers.hpp"
#include "acg/sampler.hpp"

namespace acg {

/// Measure-preserving path transforms. The stopping-point kinds recompute
/// their stopping points from the input path on every application; the
/// measure-preservation argument conditions on what the input path reveals.
struct ReflectionSpec {
  enum class Kind {
    Vertical,               // u -> -u
    Horizontal,             // u -> u(x_+ + x_- - x)
    Point,                  // both
    BetweenStoppingPoints,  // negate on [chi_l, chi_r], identity if chi_l >= chi_r
    Composed,               // nested vertical reflections between stopping-point pairs
    PointBetweenHits,       // point reflection between hits of -1 / +1 (window pair)
    FixedWindowNegation,    // negate on a fixed window; NOT measure preserving (control)
  };

  Kind kind = Kind::Vertical;

  // BetweenStoppingPoints / Composed: pairs of (left spec, right spec).
  std::vector<std::pair<StoppingSpec, StoppingSpec>> stopping_pairs;

  // PointBetweenHits: search windows and hit levels.
  double left_window_lo = 0.0, left_window_hi = 0.0;
  double right_window_lo = 0.0, right_window_hi = 0.0;
  double left_hit_level = -1.0, right_hit_level = 1.0;

  // FixedWindowNegation control.
  double fixed_lo = 0.0, fixed_hi = 0.0;

  static ReflectionSpec vertical() { return {}; }
  static ReflectionSpec horizontal();
  static ReflectionSpec point();
  static ReflectionSpec between_stopping_points(StoppingSpec left, StoppingSpec right);
  static ReflectionSpec composed(std::vector<std::pair<StoppingSpec, StoppingSpec>> pairs);
  static ReflectionSpec point_between_hits(double lw_lo, double lw_hi, double rw_lo,
                                           double rw_hi, double left_level = -1.0,
                                           double right_level = 1.0);
  static ReflectionSpec fixed_window(double lo, double hi);
};

struct ReflectionOutcome {
  Path path;
  bool degenerate = false;  // a stopping-point pair was ordered wrong; identity applied
};

ReflectionOutcome apply_reflection(const Path& path, const ReflectionSpec& spec);

/// One path functional with a label, for the invariance battery.
struct PathStatistic {
  std::string name;
  std::function<double(const Path&)> eval;
};

std::vector<PathStatistic> default_statistic_battery();

struct InvarianceReport {
  std::string transform;
  std::vector<std::string> statistic_names;
  std::vector<double> p_values;
  double alpha = 0.0;
  bool pass = false;  // all p-values >= alpha / k (Bonferroni)
};

/// Kolmogorov-Smirnov comparison of each statistic between the ensemble and
/// its transformed image, Bonferroni-corrected at level alpha.
InvarianceReport invariance_test(const ReflectionSpec& spec, const Ensemble& ensemble,
                                 const std::vector<PathStatistic>& statistics, double alpha);

}  // namespace acg

#endif
