#include "acg/layers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "acg/errors.hpp"

namespace acg {

std::string to_string(LayerKind k) {
  switch (k) {
    case LayerKind::Up: return "up";
    case LayerKind::Down: return "down";
    case LayerKind::DeltaMinusUp: return "delta-minus-up";
    case LayerKind::DeltaMinusDown: return "delta-minus-down";
    case LayerKind::DeltaPlusUp: return "delta-plus-up";
    case LayerKind::DeltaPlusDown: return "delta-plus-down";
    case LayerKind::WastedDeltaMinus: return "wasted-delta-minus";
    case LayerKind::WastedDeltaPlus: return "wasted-delta-plus";
  }
  return "?";
}

int LayerReport::count(LayerKind k) const {
  int c = 0;
  for (const auto& e : events) c += (e.kind == k);
  return c;
}

int LayerReport::count_up() const {
  int c = 0;
  for (const auto& e : events)
    c += (e.kind == LayerKind::Up || e.kind == LayerKind::DeltaMinusUp ||
          e.kind == LayerKind::DeltaPlusUp);
  return c;
}

int LayerReport::count_down() const {
  int c = 0;
  for (const auto& e : events)
    c += (e.kind == LayerKind::Down || e.kind == LayerKind::DeltaMinusDown ||
          e.kind == LayerKind::DeltaPlusDown);
  return c;
}

namespace {

struct Hit {
  double x;
  int level;  // +1 for the upper level, -1 for the lower level
};

// All hits of the two levels +-lev, ordered by position. A node equal to the
// level and a strict sign change within a segment each produce one hit.
std::vector<Hit> level_hits(const Path& p, double lev) {
  std::vector<Hit> hits;
  const int np = p.num_points();
  const double dx = p.grid.dx();
  for (int i = 0; i < np; ++i) {
    for (int s : {+1, -1}) {
      if (p.values[i] == s * lev) hits.push_back({p.grid.point(i), s});
    }
  }
  for (int i = 0; i + 1 < np; ++i) {
    const double a = p.values[i], b = p.values[i + 1];
    for (int s : {+1, -1}) {
      const double l = s * lev;
      if ((a - l) * (b - l) < 0.0) {
        const double t = (l - a) / (b - a);
        hits.push_back({p.grid.point(i) + t * dx, s});
      }
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& u, const Hit& v) { return u.x < v.x; });
  return hits;
}

}  // namespace

std::optional<double> earliest_in_band(const Path& path, double from, double to,
                                       double band_lo, double band_hi) {
  const double dx = path.grid.dx();
  from = std::max(from, path.grid.x_minus);
  to = std::min(to, path.grid.x_plus);
  if (from > to) return std::nullopt;
  int k0 = static_cast<int>(std::floor((from - path.grid.x_minus) / dx));
  k0 = std::max(0, std::min(k0, path.grid.n));
  for (int k = k0; k <= path.grid.n; ++k) {
    const double xa = path.grid.point(k), xb = path.grid.point(k + 1);
    const double lo = std::max(xa, from), hi = std::min(xb, to);
    if (lo > hi) {
      if (xa > to) break;
      continue;
    }
    const double va = path.values[k], vb = path.values[k + 1];
    const double slope = (vb - va) / dx;
    if (slope == 0.0) {
      if (va >= band_lo && va <= band_hi) return lo;
      continue;
    }
    double t1 = xa + (band_lo - va) / slope;
    double t2 = xa + (band_hi - va) / slope;
    if (t1 > t2) std::swap(t1, t2);
    const double s = std::max(lo, t1), e = std::min(hi, t2);
    if (s <= e) return s;
  }
  return std::nullopt;
}

std::optional<double> latest_in_band(const Path& path, double from, double to,
                                     double band_lo, double band_hi) {
  const double dx = path.grid.dx();
  from = std::max(from, path.grid.x_minus);
  to = std::min(to, path.grid.x_plus);
  if (from > to) return std::nullopt;
  int k1 = static_cast<int>(std::ceil((to - path.grid.x_minus) / dx)) - 1;
  k1 = std::max(0, std::min(k1, path.grid.n));
  for (int k = k1; k >= 0; --k) {
    const double xa = path.grid.point(k), xb = path.grid.point(k + 1);
    const double lo = std::max(xa, from), hi = std::min(xb, to);
    if (lo > hi) {
      if (xb < from) break;
      continue;
    }
    const double va = path.values[k], vb = path.values[k + 1];
    const double slope = (vb - va) / dx;
    if (slope == 0.0) {
      if (va >= band_lo && va <= band_hi) return hi;
      continue;
    }
    double t1 = xa + (band_lo - va) / slope;
    double t2 = xa + (band_hi - va) / slope;
    if (t1 > t2) std::swap(t1, t2);
    const double s = std::max(lo, t1), e = std::min(hi, t2);
    if (s <= e) return e;
  }
  return std::nullopt;
}

LayerReport detect_layers(const Path& path, DetectKind kind, double delta) {
  if (kind != DetectKind::Full && !(delta > 0.0 && delta < 0.5))
    throw DomainError("detect_layers: delta must lie in (0, 1/2)");

  LayerReport rep;
  if (kind == DetectKind::DeltaPlus) {
    // Minimal witness pairs for each orientation independently.
    const double lev = 1.0 + delta;
    const auto hits = level_hits(path, lev);
    for (int orient : {+1, -1}) {
      // up: low hit (-lev) then high hit (+lev); down: reversed
      const int first = (orient > 0) ? -1 : +1;
      std::optional<double> pending;  // most recent "first" hit
      for (const auto& h : hits) {
        if (h.level == first) {
          pending = h.x;  // later hit shrinks the witness pair
        } else if (pending) {
          LayerEvent e;
          e.kind = (orient > 0) ? LayerKind::DeltaPlusUp : LayerKind::DeltaPlusDown;
          e.x_start = *pending;
          e.x_end = h.x;
          e.delta = delta;
          rep.events.push_back(e);
          pending.reset();
        }
      }
    }
  } else {
    const double lev = (kind == DetectKind::Full) ? 1.0 : 1.0 - delta;
    const auto hits = level_hits(path, lev);
    for (std::size_t i = 0; i + 1 < hits.size(); ++i) {
      const Hit& a = hits[i];
      const Hit& b = hits[i + 1];
      if (a.level == b.level) continue;
      // Between consecutive hits the interpolant never meets +-lev, so a
      // midpoint sample decides strict interiority.
      const double mid = path.at(0.5 * (a.x + b.x));
      if (!(std::abs(mid) < lev)) continue;
      LayerEvent e;
      e.x_start = a.x;
      e.x_end = b.x;
      e.delta = (kind == DetectKind::Full) ? 0.0 : delta;
      if (b.level > 0)
        e.kind = (kind == DetectKind::Full) ? LayerKind::Up : LayerKind::DeltaMinusUp;
      else
        e.kind = (kind == DetectKind::Full) ? LayerKind::Down : LayerKind::DeltaMinusDown;
      rep.events.push_back(e);
    }
  }
  std::sort(rep.events.begin(), rep.events.end(),
            [](const LayerEvent& a, const LayerEvent& b) { return a.x_start < b.x_start; });
  return rep;
}

LayerReport detect_wasted_excursions(const Path& path, WastedKind kind, double delta,
                                     double window_lo, double window_hi) {
  if (!(delta > 0.0 && delta < 0.5))
    throw DomainError("detect_wasted_excursions: delta must lie in (0, 1/2)");
  if (window_lo < path.grid.x_minus - 1e-12 || window_hi > path.grid.x_plus + 1e-12)
    throw DomainError("detect_wasted_excursions: window outside path domain");

  struct FamilyBands {
    double end_lo, end_hi;  // endpoint band
    double mid_lo, mid_hi;  // middle band
  };
  std::vector<FamilyBands> families;
  if (kind == WastedKind::DeltaMinus) {
    families.push_back({1.0 - delta, 1.0 + delta, -delta, delta});
    families.push_back({-1.0 - delta, -1.0 + delta, -delta, delta});
  } else {
    const double inf = std::numeric_limits<double>::infinity();
    families.push_back({-inf, -1.0 - delta, 0.0, 0.0});
  }

  LayerReport rep;
  double cursor = window_lo;
  while (cursor <= window_hi) {
    // Earliest completed witness triple over all families.
    bool found = false;
    double best_end = 0.0, best_mid = 0.0, best_start = 0.0;
    for (const auto& fb : families) {
      auto x1 = earliest_in_band(path, cursor, window_hi, fb.end_lo, fb.end_hi);
      if (!x1) continue;
      auto x0 = earliest_in_band(path, *x1, window_hi, fb.mid_lo, fb.mid_hi);
      if (!x0 || !(*x0 > *x1)) {
        // the middle point must be strictly after the endpoint
        x0 = earliest_in_band(path, std::nextafter(*x1, window_hi), window_hi, fb.mid_lo,
                              fb.mid_hi);
        if (!x0 || !(*x0 > *x1)) continue;
      }
      auto x2 = earliest_in_band(path, *x0, window_hi, fb.end_lo, fb.end_hi);
      if (!x2 || !(*x2 > *x0)) {
        x2 = earliest_in_band(path, std::nextafter(*x0, window_hi), window_hi, fb.end_lo,
                              fb.end_hi);
        if (!x2 || !(*x2 > *x0)) continue;
      }
      if (!found || *x2 < best_end) {
        found = true;
        best_start = *x1;
        best_mid = *x0;
        best_end = *x2;
      }
    }
    if (!found) break;
    LayerEvent e;
    e.kind = (kind == WastedKind::DeltaMinus) ? LayerKind::WastedDeltaMinus
                                              : LayerKind::WastedDeltaPlus;
    e.x_start = best_start;
    e.x_mid = best_mid;
    e.x_end = best_end;
    e.delta = delta;
    rep.events.push_back(e);
    if (best_end >= window_hi) break;
    cursor = best_end;
  }
  return rep;
}

double stopping_point(const Path& path, const StoppingSpec& spec) {
  const double L_lo = path.grid.x_minus, L_hi = path.grid.x_plus;
  if (spec.anchor_lo > spec.anchor_hi)
    throw ConfigError("stopping_point: malformed anchor interval");

  auto target_hit_left = [&](double from, double to) {
    return earliest_in_band(path, from, to, spec.target_level, spec.target_level);
  };
  auto target_hit_right = [&](double from, double to) {
    return latest_in_band(path, from, to, spec.target_level, spec.target_level);
  };

  if (spec.side == StoppingSpec::Side::Left) {
    double search_from = spec.anchor_lo;
    if (spec.has_trigger) {
      std::optional<double> trig =
          earliest_in_band(path, spec.anchor_lo, L_hi, spec.trigger_level, spec.trigger_level);
      if (spec.trigger_abs) {
        auto trig2 = earliest_in_band(path, spec.anchor_lo, L_hi, -spec.trigger_level,
                                      -spec.trigger_level);
        if (trig2 && (!trig || *trig2 < *trig)) trig = trig2;
      }
      if (!trig) return L_hi;  // sentinel
      search_from = *trig;
      auto hit = target_hit_left(search_from, L_hi);
      return hit ? *hit : L_hi;
    }
    auto hit = target_hit_left(spec.anchor_lo, spec.anchor_hi);
    return hit ? *hit : L_hi;
  }

  // right side
  if (spec.has_trigger) {
    std::optional<double> trig =
        latest_in_band(path, L_lo, spec.anchor_hi, spec.trigger_level, spec.trigger_level);
    if (spec.trigger_abs) {
      auto trig2 =
          latest_in_band(path, L_lo, spec.anchor_hi, -spec.trigger_level, -spec.trigger_level);
      if (trig2 && (!trig || *trig2 > *trig)) trig = trig2;
    }
    if (!trig) return L_lo;  // sentinel
    auto hit = target_hit_right(L_lo, *trig);
    return hit ? *hit : L_lo;
  }
  auto hit = target_hit_right(spec.anchor_lo, spec.anchor_hi);
  return hit ? *hit : L_lo;
}

}  // namespace acg
