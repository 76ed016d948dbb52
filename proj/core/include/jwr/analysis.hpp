#ifndef JWR_ANALYSIS_HPP
#define JWR_ANALYSIS_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "jwr/config.hpp"
#include "jwr/schedule.hpp"
#include "jwr/stats.hpp"

namespace jwr {

struct MarginalTest {
  enum class Kind { ks, chi_square };
  Kind kind;
  double statistic;
  double p_value;
  std::size_t n;
};

// Goodness of fit of offsets collected at one fixed step index across many
// independent schedules: KS against Unif[0, t] in continuous mode,
// chi-square over t bins in discrete mode. Requires >= 1000 samples.
MarginalTest marginal_uniformity_test(std::span<const double> offsets_at_index,
                                      const ValidatedConfig& cfg);

// One-step law of the offset chain. Rows index the current offset, columns
// the next. Exact for discrete configs; continuous configs get a binned
// surrogate kernel for spectral diagnostics.
class TransitionMatrix {
 public:
  // Enumerates every (offset, jitter value) pair of the discrete update.
  static TransitionMatrix exact(const ValidatedConfig& cfg);
  // Continuous surrogate: bins [0, t] and integrates the reflected
  // transition density exactly in the arrival coordinate (midpoint rule in
  // the departure coordinate).
  static TransitionMatrix binned(const ValidatedConfig& cfg, int bins = 256);

  std::size_t size() const { return n_; }
  double at(std::size_t row, std::size_t col) const {
    return p_[row * n_ + col];
  }

  // Row vector times matrix: one step of distribution evolution.
  std::vector<double> apply(std::span<const double> dist) const;

  std::vector<double> row_sums() const;
  std::vector<double> column_sums() const;

  // Second-largest eigenvalue modulus; 1 exactly when the chain fails to be
  // ergodic (reducible or periodic).
  double slem() const;

 private:
  TransitionMatrix(std::size_t n) : n_(n), p_(n * n, 0.0) {}
  std::size_t n_;
  std::vector<double> p_;  // row-major
};

// Flip probability of the two-state offset chain (t = 2 only): the
// off-diagonal entry of the exact transition matrix.
double alpha_of_config(const ValidatedConfig& cfg);

// corr(x_i, x_{i+m}) = (1 - 2a)^m for the t = 2 chain.
double theoretical_correlation(double alpha, int lag);

// Lag at which the correlation decays to 1/e: -1 / ln(1 - 2a).
// Domain: 0 < alpha < 1/2.
double correlation_length(double alpha);

struct CorrelationCurve {
  std::vector<int> lags;             // 0..max_lag
  std::vector<double> empirical;
  std::vector<double> theoretical;   // NaN when no alpha was supplied
  std::vector<double> stderrs;
  std::size_t n = 0;
};

// Autocovariance-normalized estimator with the global series mean; the
// standard error uses the independent-blocks approximation with block
// length 10 * l_c. Requires series length >= 100 * max_lag.
CorrelationCurve autocorrelation_curve(std::span<const double> series,
                                       int max_lag,
                                       std::optional<double> alpha = {});

// Correlation length fitted from the log of the empirical curve over lags
// whose magnitude is resolvable above sampling noise.
double fitted_correlation_length(const CorrelationCurve& curve);

// Sample variance of consecutive gaps a_{i+1} - a_i.
double gap_variance(const Schedule& schedule);

// Fourier coefficient of the jitter distribution at integer frequency k:
// d(k) = E[exp(-j pi k v / t)]. Real-valued for symmetric jitter. Closed
// form for the uniform continuous case, exact summation or piecewise-exact
// integration otherwise.
std::complex<double> fourier_coefficient(const ValidatedConfig& cfg, int k);

// Total-variation distance to uniform after each of n steps of exact
// distribution evolution, TV = (1/2) L1. Element 0 is the initial distance.
std::vector<double> tv_decay(const TransitionMatrix& matrix,
                             std::span<const double> initial, int steps);

struct SpectralReport {
  std::vector<std::complex<double>> d;  // k = 0..max_k
  double slem = 0.0;
  std::vector<double> tv;  // from a point mass at offset 0
};

SpectralReport spectral_report(const ValidatedConfig& cfg, int max_k,
                               int tv_steps, int bins_for_continuous = 256);

}  // namespace jwr

#endif  // JWR_ANALYSIS_HPP
