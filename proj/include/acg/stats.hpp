#ifndef ACG_STATS_HPP
#define ACG_STATS_HPP

#include <cstddef>
#include <vector>

namespace acg {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares y = intercept + slope * x.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

struct MeanErr {
  double mean = 0.0;
  double se = 0.0;      // batch-means standard error; <0 when undefined
  double ess = 0.0;     // effective sample count from the autocorrelation time
  bool degenerate = false;  // constant series, se/ess not meaningful
};

/// Mean with batch-means standard error and autocorrelation-based ESS,
/// for a (possibly autocorrelated) scalar series.
MeanErr series_mean(const std::vector<double>& xs);

/// Integrated autocorrelation time (initial positive-sum truncation).
double integrated_autocorrelation(const std::vector<double>& xs);

/// Two-sample Kolmogorov-Smirnov test; returns the asymptotic p-value.
double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b);

/// Survival function of the Kolmogorov distribution, Q(lambda).
double kolmogorov_q(double lambda);

/// Chi-square upper tail probability with k degrees of freedom.
double chi_square_sf(double x, int k);

double sample_mean(const std::vector<double>& xs);
double sample_variance(const std::vector<double>& xs);  // unbiased

}  // namespace acg

#endif
