#include "jwr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace jwr {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<std::pair<std::int64_t, double>> discrete_masses(
    const ValidatedConfig& cfg) {
  if (!cfg.jitter().is_uniform()) return cfg.jitter().masses;
  std::vector<std::pair<std::int64_t, double>> masses;
  const std::int64_t t_p = cfg.t_p_int();
  for (std::int64_t k = -t_p; k <= t_p; ++k)
    masses.emplace_back(k, 1.0 / static_cast<double>(2 * t_p + 1));
  return masses;
}

std::vector<JitterSpec::Piece> continuous_pieces(const ValidatedConfig& cfg) {
  if (!cfg.jitter().is_uniform()) return cfg.jitter().pieces;
  return {{-cfg.t_p(), cfg.t_p(), 1.0 / (2.0 * cfg.t_p())}};
}

// CDF of a piecewise-constant density; linear scan is fine at these sizes.
double piecewise_cdf(const std::vector<JitterSpec::Piece>& pieces, double z) {
  double acc = 0.0;
  for (const auto& p : pieces) {
    if (z <= p.lo) break;
    acc += p.density * (std::min(z, p.hi) - p.lo);
  }
  return acc;
}

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace

MarginalTest marginal_uniformity_test(std::span<const double> offsets_at_index,
                                      const ValidatedConfig& cfg) {
  if (offsets_at_index.size() < 1000)
    throw std::invalid_argument(
        "marginal uniformity test needs >= 1000 samples");
  MarginalTest result{};
  result.n = offsets_at_index.size();
  if (cfg.mode() == Mode::discrete) {
    const auto chi = chi_square_uniform_test(offsets_at_index, cfg.t_int());
    result.kind = MarginalTest::Kind::chi_square;
    result.statistic = chi.statistic;
    result.p_value = chi.p_value;
  } else {
    const auto ks = ks_uniform_test(offsets_at_index, 0.0, cfg.t());
    result.kind = MarginalTest::Kind::ks;
    result.statistic = ks.statistic;
    result.p_value = ks.p_value;
  }
  return result;
}

TransitionMatrix TransitionMatrix::exact(const ValidatedConfig& cfg) {
  if (cfg.mode() != Mode::discrete)
    throw std::invalid_argument("exact transition matrix is discrete-only");
  const std::int64_t t = cfg.t_int();
  TransitionMatrix matrix(static_cast<std::size_t>(t));
  const auto masses = discrete_masses(cfg);
  for (std::int64_t b = 0; b < t; ++b) {
    for (const auto& [v, mass] : masses) {
      const std::int64_t nb = reflect_offset(b + v, t);
      matrix.p_[static_cast<std::size_t>(b) * matrix.n_ +
                static_cast<std::size_t>(nb)] += mass;
    }
  }
  return matrix;
}

TransitionMatrix TransitionMatrix::binned(const ValidatedConfig& cfg,
                                          int bins) {
  if (cfg.mode() != Mode::continuous)
    throw std::invalid_argument("binned kernel is continuous-only");
  if (bins < 2) throw std::invalid_argument("need >= 2 bins");
  const double t = cfg.t();
  const double h = t / static_cast<double>(bins);
  const auto pieces = continuous_pieces(cfg);
  auto cdf = [&](double z) { return piecewise_cdf(pieces, z); };

  TransitionMatrix matrix(static_cast<std::size_t>(bins));
  for (int i = 0; i < bins; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * h;  // departure midpoint
    for (int j = 0; j < bins; ++j) {
      const double yl = static_cast<double>(j) * h;
      const double yh = yl + h;
      // Arrival mass = direct + reflection at 0 + reflection at t, each
      // integrated exactly over the arrival bin.
      double mass = cdf(yh - x) - cdf(yl - x);
      mass += cdf(-yl - x) - cdf(-yh - x);
      mass += cdf(2.0 * t - yl - x) - cdf(2.0 * t - yh - x);
      matrix.p_[static_cast<std::size_t>(i) * matrix.n_ +
                static_cast<std::size_t>(j)] = mass;
    }
  }
  return matrix;
}

std::vector<double> TransitionMatrix::apply(std::span<const double> dist) const {
  if (dist.size() != n_)
    throw std::invalid_argument("distribution size mismatch");
  std::vector<double> out(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const double w = dist[i];
    if (w == 0.0) continue;
    for (std::size_t j = 0; j < n_; ++j) out[j] += w * p_[i * n_ + j];
  }
  return out;
}

std::vector<double> TransitionMatrix::row_sums() const {
  std::vector<double> sums(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) sums[i] += p_[i * n_ + j];
  return sums;
}

std::vector<double> TransitionMatrix::column_sums() const {
  std::vector<double> sums(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) sums[j] += p_[i * n_ + j];
  return sums;
}

double TransitionMatrix::slem() const {
  Eigen::MatrixXd m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          p_[i * n_ + j];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  std::vector<double> moduli;
  moduli.reserve(n_);
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
    moduli.push_back(std::abs(solver.eigenvalues()[k]));
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  return moduli.size() > 1 ? moduli[1] : 0.0;
}

double alpha_of_config(const ValidatedConfig& cfg) {
  if (cfg.mode() != Mode::discrete || cfg.t_int() != 2)
    throw std::invalid_argument("alpha is defined for the discrete t=2 chain");
  return TransitionMatrix::exact(cfg).at(0, 1);
}

double theoretical_correlation(double alpha, int lag) {
  if (lag < 0) throw std::invalid_argument("lag must be nonnegative");
  return std::pow(1.0 - 2.0 * alpha, lag);
}

double correlation_length(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw std::domain_error("correlation length needs 0 < alpha < 1/2");
  return -1.0 / std::log(1.0 - 2.0 * alpha);
}

CorrelationCurve autocorrelation_curve(std::span<const double> series,
                                       int max_lag,
                                       std::optional<double> alpha) {
  if (max_lag < 0) throw std::invalid_argument("max_lag must be >= 0");
  const std::size_t n = series.size();
  if (n < static_cast<std::size_t>(100) * std::max(max_lag, 1))
    throw std::invalid_argument("series too short: need length >= 100 * lag");

  const double m = mean(series);
  double c0 = 0.0;
  for (double x : series) c0 += (x - m) * (x - m);
  c0 /= static_cast<double>(n);
  if (c0 == 0.0)
    throw std::invalid_argument("autocorrelation of a constant series");

  CorrelationCurve curve;
  curve.n = n;
  for (int lag = 0; lag <= max_lag; ++lag) {
    double c = 0.0;
    const std::size_t pairs = n - static_cast<std::size_t>(lag);
    for (std::size_t i = 0; i < pairs; ++i)
      c += (series[i] - m) * (series[i + static_cast<std::size_t>(lag)] - m);
    c /= static_cast<double>(pairs);
    curve.lags.push_back(lag);
    curve.empirical.push_back(c / c0);
    curve.theoretical.push_back(
        alpha ? theoretical_correlation(*alpha, lag)
              : std::numeric_limits<double>::quiet_NaN());
  }

  // Independent-blocks standard error: N / block effective samples with
  // block length 10 * l_c (conservative at these scales).
  double l_c = 1.0;
  if (alpha && *alpha > 0.0 && *alpha < 0.5) {
    l_c = correlation_length(*alpha);
  } else if (curve.empirical.size() > 1 && curve.empirical[1] > 0.0 &&
             curve.empirical[1] < 1.0) {
    l_c = -1.0 / std::log(curve.empirical[1]);
  }
  const double block = std::max(1.0, std::ceil(10.0 * l_c));
  const double se = std::sqrt(block / static_cast<double>(n));
  curve.stderrs.assign(curve.lags.size(), se);
  return curve;
}

double fitted_correlation_length(const CorrelationCurve& curve) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < curve.lags.size(); ++i) {
    if (curve.lags[i] == 0) continue;
    const double rho = curve.empirical[i];
    if (rho > 3.0 * curve.stderrs[i] && rho < 1.0) {
      xs.push_back(static_cast<double>(curve.lags[i]));
      ys.push_back(std::log(rho));
    }
  }
  if (xs.empty())
    throw std::invalid_argument("no resolvable lags to fit");
  if (xs.size() == 1) return -xs[0] / ys[0];
  const LinearFit fit = least_squares(xs, ys);
  if (fit.slope >= 0.0)
    throw std::invalid_argument("correlation curve does not decay");
  return -1.0 / fit.slope;
}

double gap_variance(const Schedule& schedule) {
  if (schedule.timestamps.size() < 2)
    throw std::invalid_argument("gap variance needs >= 2 timestamps");
  std::vector<double> gaps;
  gaps.reserve(schedule.timestamps.size() - 1);
  for (std::size_t i = 0; i + 1 < schedule.timestamps.size(); ++i)
    gaps.push_back(schedule.timestamps[i + 1] - schedule.timestamps[i]);
  if (gaps.size() < 2) return 0.0;
  return sample_variance(gaps);
}

std::complex<double> fourier_coefficient(const ValidatedConfig& cfg, int k) {
  if (k == 0) return {1.0, 0.0};
  const double omega = kPi * static_cast<double>(k) / cfg.t();
  if (cfg.mode() == Mode::discrete) {
    std::complex<double> d{0.0, 0.0};
    for (const auto& [v, mass] : discrete_masses(cfg)) {
      const double x = omega * static_cast<double>(v);
      d += mass * std::complex<double>(std::cos(x), -std::sin(x));
    }
    return d;
  }
  if (cfg.jitter().is_uniform())
    return {sinc(omega * cfg.t_p()), 0.0};
  const std::complex<double> j{0.0, 1.0};
  std::complex<double> d{0.0, 0.0};
  for (const auto& piece : cfg.jitter().pieces) {
    const std::complex<double> hi = std::exp(-j * (omega * piece.hi));
    const std::complex<double> lo = std::exp(-j * (omega * piece.lo));
    d += piece.density * (hi - lo) * (j / omega);
  }
  return d;
}

std::vector<double> tv_decay(const TransitionMatrix& matrix,
                             std::span<const double> initial, int steps) {
  if (initial.size() != matrix.size())
    throw std::invalid_argument("initial distribution size mismatch");
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  const double uniform = 1.0 / static_cast<double>(matrix.size());
  std::vector<double> dist(initial.begin(), initial.end());
  std::vector<double> series;
  series.reserve(static_cast<std::size_t>(steps) + 1);
  for (int n = 0; n <= steps; ++n) {
    double l1 = 0.0;
    for (double w : dist) l1 += std::abs(w - uniform);
    series.push_back(0.5 * l1);
    if (n < steps) dist = matrix.apply(dist);
  }
  return series;
}

SpectralReport spectral_report(const ValidatedConfig& cfg, int max_k,
                               int tv_steps, int bins_for_continuous) {
  SpectralReport report;
  report.d.reserve(static_cast<std::size_t>(max_k) + 1);
  for (int k = 0; k <= max_k; ++k)
    report.d.push_back(fourier_coefficient(cfg, k));

  const TransitionMatrix matrix =
      cfg.mode() == Mode::discrete
          ? TransitionMatrix::exact(cfg)
          : TransitionMatrix::binned(cfg, bins_for_continuous);
  report.slem = matrix.slem();

  std::vector<double> init(matrix.size(), 0.0);
  init[0] = 1.0;
  report.tv = tv_decay(matrix, init, tv_steps);
  return report;
}

}  // namespace jwr
