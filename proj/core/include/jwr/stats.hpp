#ifndef JWR_STATS_HPP
#define JWR_STATS_HPP

#include <cstdint>
#include <span>

namespace jwr {

// Survival function of the asymptotic Kolmogorov distribution,
// Q(x) = 2 * sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2).
double kolmogorov_q(double x);

// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_sf(double statistic, double dof);

struct KsResult {
  double statistic = 0.0;  // sup |F_n - F|
  double p_value = 1.0;
  std::size_t n = 0;
};

// One-sample KS test against Unif[lo, hi]. Asymptotic p-value; intended for
// n in the thousands and up.
KsResult ks_uniform_test(std::span<const double> samples, double lo,
                         double hi);

struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::int64_t dof = 0;
};

// Chi-square goodness of fit of integer samples in {0, ..., bins-1} against
// the uniform distribution over the bins.
ChiSquareResult chi_square_uniform_test(std::span<const double> samples,
                                        std::int64_t bins);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

// Wilson score interval for a binomial proportion (default 95%).
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z = 1.959963984540054);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LinearFit least_squares(std::span<const double> x, std::span<const double> y);

double pearson_correlation(std::span<const double> x,
                           std::span<const double> y);

double mean(std::span<const double> xs);
// Unbiased (n-1) sample variance.
double sample_variance(std::span<const double> xs);

}  // namespace jwr

#endif  // JWR_STATS_HPP
