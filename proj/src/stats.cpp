#include "acg/stats.hpp"

#include <algorithm>
#include <cmath>

#include "acg/errors.hpp"

namespace acg {

double sample_mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double sample_variance(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = sample_mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("linear_fit: need >= 2 points");
  const double mx = sample_mean(x), my = sample_mean(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssres = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ssres += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ssres / syy : 1.0;
  return fit;
}

double integrated_autocorrelation(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n < 4) return 1.0;
  const double m = sample_mean(xs);
  double c0 = 0.0;
  for (double x : xs) c0 += (x - m) * (x - m);
  c0 /= static_cast<double>(n);
  if (c0 <= 0.0) return 1.0;
  double tau = 1.0;
  const std::size_t kmax = n / 2;
  for (std::size_t k = 1; k < kmax; ++k) {
    double ck = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) ck += (xs[i] - m) * (xs[i + k] - m);
    ck /= static_cast<double>(n - k) * c0;
    if (ck <= 0.0) break;
    tau += 2.0 * ck;
  }
  return tau;
}

MeanErr series_mean(const std::vector<double>& xs) {
  MeanErr out;
  out.mean = sample_mean(xs);
  const std::size_t n = xs.size();
  if (n < 2) {
    out.degenerate = true;
    out.se = -1.0;
    return out;
  }
  bool constant = true;
  for (double x : xs)
    if (x != xs[0]) {
      constant = false;
      break;
    }
  if (constant) {
    out.degenerate = true;
    out.se = 0.0;
    out.ess = 0.0;
    return out;
  }
  // Batch means with ~sqrt(n) batches.
  std::size_t nb = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  nb = std::max<std::size_t>(nb, 2);
  const std::size_t bl = n / nb;
  std::vector<double> bm;
  bm.reserve(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    double s = 0.0;
    for (std::size_t i = b * bl; i < (b + 1) * bl; ++i) s += xs[i];
    bm.push_back(s / static_cast<double>(bl));
  }
  const double se_batch = std::sqrt(sample_variance(bm) / static_cast<double>(nb));
  const double tau = integrated_autocorrelation(xs);
  out.ess = static_cast<double>(n) / std::max(tau, 1.0);
  // batch means underestimate once batches are shorter than the
  // autocorrelation time; the tau-corrected error is the fallback
  const double se_tau =
      std::sqrt(sample_variance(xs) * std::max(tau, 1.0) / static_cast<double>(n));
  out.se = std::max(se_batch, se_tau);
  return out;
}

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double q = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
    q += term;
    if (std::abs(term) < 1e-12) break;
  }
  return std::clamp(q, 0.0, 1.0);
}

double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample_pvalue: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::size_t na = a.size(), nb = b.size();
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < na && j < nb) {
    const double x = std::min(a[i], b[j]);
    while (i < na && a[i] <= x) ++i;
    while (j < nb && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = std::sqrt(static_cast<double>(na) * nb / static_cast<double>(na + nb));
  return kolmogorov_q((ne + 0.12 + 0.11 / ne) * d);
}

double chi_square_sf(double x, int k) {
  // Regularized upper incomplete gamma Q(k/2, x/2) via series / continued fraction.
  if (x <= 0.0) return 1.0;
  const double a = 0.5 * k, hx = 0.5 * x;
  const double lg = std::lgamma(a);
  if (hx < a + 1.0) {
    // lower series
    double sum = 1.0 / a, term = sum;
    for (int n = 1; n < 500; ++n) {
      term *= hx / (a + n);
      sum += term;
      if (term < sum * 1e-15) break;
    }
    const double p = sum * std::exp(-hx + a * std::log(hx) - lg);
    return std::clamp(1.0 - p, 0.0, 1.0);
  }
  // upper continued fraction (Lentz)
  double b = hx + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
  for (int n = 1; n < 500; ++n) {
    const double an = -n * (n - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  const double q = std::exp(-hx + a * std::log(hx) - lg) * h;
  return std::clamp(q, 0.0, 1.0);
}

}  // namespace acg
