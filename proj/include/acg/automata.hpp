#ifndef ACG_AUTOMATA_HPP
#define ACG_AUTOMATA_HPP

#include <memory>
#include <vector>

namespace acg {

/// Deterministic finite automaton driven by the piecewise-linear segments of
/// a path. Layer and excursion events are regular languages over threshold
/// crossings, which is what makes exact rare-event computation by transfer
/// products possible: the automaton state rides along the u-bin state.
///
/// Segment semantics: a hit of a level is counted when the open segment
/// (a, b) crosses it or when the segment arrives exactly at it (b == level).
/// Departures (a == level) were counted by the previous segment's arrival.
class SegmentAutomaton {
 public:
  virtual ~SegmentAutomaton() = default;

  virtual int num_states() const = 0;
  virtual int initial_state(double u_boundary) const = 0;
  virtual bool accepting(int state) const = 0;

  /// Transition for the segment from value a at xa to value b at xb.
  virtual int step(int state, double a, double b, double xa, double xb) const = 0;

  /// Whether step() depends on (xa, xb); position-independent automata get a
  /// precomputed transition table shared across all grid steps.
  virtual bool position_dependent() const { return false; }
};

/// Accepts when at least `target` transition layers at levels -+lev have
/// completed (both orientations, or up transitions only).
class LayerCountAutomaton : public SegmentAutomaton {
 public:
  LayerCountAutomaton(double lev, int target, bool up_only = false);
  int num_states() const override { return 3 * (target_ + 1); }
  int initial_state(double u_boundary) const override;
  bool accepting(int state) const override { return state / 3 >= target_; }
  int step(int state, double a, double b, double xa, double xb) const override;

 private:
  double lev_;
  int target_;
  bool up_only_;
};

/// Accepts when an up transition layer (levels -+lev) completes whose hit
/// pair spans at most `max_len_steps` grid segments. The length is resolved
/// at segment granularity, so acceptance is exact up to one grid spacing.
class UpLayerMaxLenAutomaton : public SegmentAutomaton {
 public:
  UpLayerMaxLenAutomaton(double lev, int max_len_steps);
  // none + plus + armed ages 0..J + stale + accept
  int num_states() const override { return max_len_steps_ + 5; }
  int initial_state(double u_boundary) const override;
  bool accepting(int state) const override { return state == accept_; }
  int step(int state, double a, double b, double xa, double xb) const override;

 private:
  // states: 0 = last wall none, 1 = last wall +lev,
  //         2..2+J = armed (last wall -lev) with age 0..J,
  //         2+J+1 = armed but stale, 2+J+2 = accept
  double lev_;
  int max_len_steps_;
  int stale_, accept_;
};

/// Accepts when sup u >= c (or inf u <= c) somewhere on [window_lo, window_hi].
class ThresholdAutomaton : public SegmentAutomaton {
 public:
  ThresholdAutomaton(double level, bool upper, double window_lo, double window_hi);
  int num_states() const override { return 2; }
  int initial_state(double u_boundary) const override;
  bool accepting(int state) const override { return state == 1; }
  int step(int state, double a, double b, double xa, double xb) const override;
  bool position_dependent() const override { return true; }

 private:
  double level_;
  bool upper_;
  double lo_, hi_;
};

/// Accepts when u stays inside [band_lo, band_hi] on all of the window.
class ConfinementAutomaton : public SegmentAutomaton {
 public:
  ConfinementAutomaton(double band_lo, double band_hi, double window_lo, double window_hi);
  int num_states() const override { return 2; }
  int initial_state(double u_boundary) const override;
  bool accepting(int state) const override { return state == 0; }
  int step(int state, double a, double b, double xa, double xb) const override;
  bool position_dependent() const override { return true; }

 private:
  double band_lo_, band_hi_;
  double lo_, hi_;
};

/// Accepts everything; useful as a harness self-test.
class AcceptAllAutomaton : public SegmentAutomaton {
 public:
  int num_states() const override { return 1; }
  int initial_state(double) const override { return 0; }
  bool accepting(int) const override { return true; }
  int step(int s, double, double, double, double) const override { return s; }
};

}  // namespace acg

#endif
