#include "acg/reflect.hpp"

#include <algorithm>
#include <cmath>

#include "acg/errors.hpp"

namespace acg {

ReflectionSpec ReflectionSpec::horizontal() {
  ReflectionSpec s;
  s.kind = Kind::Horizontal;
  return s;
}

ReflectionSpec ReflectionSpec::point() {
  ReflectionSpec s;
  s.kind = Kind::Point;
  return s;
}

ReflectionSpec ReflectionSpec::between_stopping_points(StoppingSpec left, StoppingSpec right) {
  ReflectionSpec s;
  s.kind = Kind::BetweenStoppingPoints;
  s.stopping_pairs.emplace_back(std::move(left), std::move(right));
  return s;
}

ReflectionSpec ReflectionSpec::composed(
    std::vector<std::pair<StoppingSpec, StoppingSpec>> pairs) {
  ReflectionSpec s;
  s.kind = Kind::Composed;
  s.stopping_pairs = std::move(pairs);
  return s;
}

ReflectionSpec ReflectionSpec::point_between_hits(double lw_lo, double lw_hi, double rw_lo,
                                                  double rw_hi, double left_level,
                                                  double right_level) {
  ReflectionSpec s;
  s.kind = Kind::PointBetweenHits;
  s.left_window_lo = lw_lo;
  s.left_window_hi = lw_hi;
  s.right_window_lo = rw_lo;
  s.right_window_hi = rw_hi;
  s.left_hit_level = left_level;
  s.right_hit_level = right_level;
  return s;
}

ReflectionSpec ReflectionSpec::fixed_window(double lo, double hi) {
  ReflectionSpec s;
  s.kind = Kind::FixedWindowNegation;
  s.fixed_lo = lo;
  s.fixed_hi = hi;
  return s;
}

namespace {

// Negate grid values strictly between chi_l and chi_r. Because the target
// level of the stopping points is 0, the continuous reflected path agrees
// with the original at the crossings, and sampling it at grid points is
// exactly a sign flip of the interior nodes.
void negate_between(Path& p, double chi_l, double chi_r) {
  const double dx = p.grid.dx();
  int i0 = static_cast<int>(std::ceil((chi_l - p.grid.x_minus) / dx - 1e-12));
  int i1 = static_cast<int>(std::floor((chi_r - p.grid.x_minus) / dx + 1e-12));
  i0 = std::max(i0, 0);
  i1 = std::min(i1, p.grid.n + 1);
  for (int i = i0; i <= i1; ++i) {
    const double x = p.grid.point(i);
    if (x > chi_l && x < chi_r) p.values[i] = -p.values[i];
    // nodes exactly at the crossings carry u = 0 up to interpolation and
    // flipping them would be a no-op anyway
  }
}

}  // namespace

ReflectionOutcome apply_reflection(const Path& path, const ReflectionSpec& spec) {
  ReflectionOutcome out;
  out.path = path;
  switch (spec.kind) {
    case ReflectionSpec::Kind::Vertical:
      for (auto& v : out.path.values) v = -v;
      return out;
    case ReflectionSpec::Kind::Horizontal:
      std::reverse(out.path.values.begin(), out.path.values.end());
      return out;
    case ReflectionSpec::Kind::Point:
      std::reverse(out.path.values.begin(), out.path.values.end());
      for (auto& v : out.path.values) v = -v;
      return out;
    case ReflectionSpec::Kind::FixedWindowNegation:
      negate_between(out.path, spec.fixed_lo, spec.fixed_hi);
      return out;
    case ReflectionSpec::Kind::BetweenStoppingPoints:
    case ReflectionSpec::Kind::Composed: {
      if (spec.stopping_pairs.empty())
        throw ConfigError("reflection: stopping-point kind without stopping specs");
      // All stopping points are computed from the input path, then the
      // vertical flips are applied nested, outermost pair last.
      std::vector<std::pair<double, double>> chis;
      for (const auto& pr : spec.stopping_pairs) {
        const double cl = stopping_point(path, pr.first);
        const double cr = stopping_point(path, pr.second);
        chis.emplace_back(cl, cr);
      }
      for (const auto& [cl, cr] : chis) {
        if (cl >= cr) {
          out.degenerate = true;
          continue;  // identity for the degenerate pair
        }
        negate_between(out.path, cl, cr);
      }
      return out;
    }
    case ReflectionSpec::Kind::PointBetweenHits: {
      auto chi_l = earliest_in_band(path, spec.left_window_lo, spec.left_window_hi,
                                    spec.left_hit_level, spec.left_hit_level);
      auto chi_r = latest_in_band(path, spec.right_window_lo, spec.right_window_hi,
                                  spec.right_hit_level, spec.right_hit_level);
      if (!chi_l || !chi_r || !(*chi_l < *chi_r)) {
        out.degenerate = true;  // sentinel ordering: identity
        return out;
      }
      const double cl = *chi_l, cr = *chi_r;
      const double mirror = cl + cr;
      const double dx = path.grid.dx();
      // Exact index arithmetic when the mirror maps the grid onto itself;
      // otherwise sample the reflected continuous path by interpolation.
      const double shift = (mirror - 2.0 * path.grid.x_minus) / dx;
      const bool aligned = std::abs(shift - std::lround(shift)) < 1e-9;
      for (int i = 0; i < path.num_points(); ++i) {
        const double x = path.grid.point(i);
        if (x <= cl || x >= cr) continue;
        if (aligned) {
          const long j = std::lround(shift) - i;
          out.path.values[i] = -path.values[static_cast<std::size_t>(j)];
        } else {
          out.path.values[i] = -path.at(mirror - x);
        }
      }
      return out;
    }
  }
  throw ConfigError("reflection: unknown kind");
}

std::vector<PathStatistic> default_statistic_battery() {
  std::vector<PathStatistic> battery;
  battery.push_back({"integral_u", [](const Path& p) {
                       const double dx = p.grid.dx();
                       double s = 0.0;
                       for (std::size_t i = 0; i + 1 < p.values.size(); ++i)
                         s += 0.5 * dx * (p.values[i] + p.values[i + 1]);
                       return s;
                     }});
  battery.push_back({"u_center", [](const Path& p) {
                       return p.at(0.5 * (p.grid.x_minus + p.grid.x_plus));
                     }});
  battery.push_back({"max_u", [](const Path& p) {
                       return *std::max_element(p.values.begin(), p.values.end());
                     }});
  battery.push_back({"min_u", [](const Path& p) {
                       return *std::min_element(p.values.begin(), p.values.end());
                     }});
  battery.push_back({"full_layer_count", [](const Path& p) {
                       return static_cast<double>(
                           detect_layers(p, DetectKind::Full).events.size());
                     }});
  return battery;
}

InvarianceReport invariance_test(const ReflectionSpec& spec, const Ensemble& ensemble,
                                 const std::vector<PathStatistic>& statistics, double alpha) {
  if (ensemble.paths.empty()) throw DomainError("invariance_test: empty ensemble");
  if (statistics.empty()) throw DomainError("invariance_test: no statistics");
  InvarianceReport rep;
  rep.alpha = alpha;
  const double level = alpha / static_cast<double>(statistics.size());

  std::vector<std::vector<double>> orig(statistics.size()), refl(statistics.size());
  for (const auto& p : ensemble.paths) {
    const auto t = apply_reflection(p, spec);
    for (std::size_t k = 0; k < statistics.size(); ++k) {
      orig[k].push_back(statistics[k].eval(p));
      refl[k].push_back(statistics[k].eval(t.path));
    }
  }
  rep.pass = true;
  for (std::size_t k = 0; k < statistics.size(); ++k) {
    rep.statistic_names.push_back(statistics[k].name);
    const double pv = ks_two_sample_pvalue(orig[k], refl[k]);
    rep.p_values.push_back(pv);
    if (pv < level) rep.pass = false;
  }
  switch (spec.kind) {
    case ReflectionSpec::Kind::Vertical: rep.transform = "vertical"; break;
    case ReflectionSpec::Kind::Horizontal: rep.transform = "horizontal"; break;
    case ReflectionSpec::Kind::Point: rep.transform = "point"; break;
    case ReflectionSpec::Kind::BetweenStoppingPoints:
      rep.transform = "between-stopping-points";
      break;
    case ReflectionSpec::Kind::Composed: rep.transform = "composed"; break;
    case ReflectionSpec::Kind::PointBetweenHits: rep.transform = "point-between-hits"; break;
    case ReflectionSpec::Kind::FixedWindowNegation: rep.transform = "fixed-window"; break;
  }
  return rep;
}

}  // namespace acg
