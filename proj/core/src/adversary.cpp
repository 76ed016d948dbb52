#include "jwr/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "jwr/analysis.hpp"
#include "jwr/rng.hpp"

namespace jwr {

namespace {

bool is_integral(double x) { return std::isfinite(x) && std::nearbyint(x) == x; }

void merge_intervals(std::vector<std::pair<double, double>>& intervals) {
  std::sort(intervals.begin(), intervals.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : intervals) {
    if (!merged.empty() && iv.first <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, iv.second);
    } else {
      merged.push_back(iv);
    }
  }
  intervals = std::move(merged);
}

std::vector<std::pair<double, double>> clip_and_merge(
    std::vector<std::pair<double, double>> intervals, double horizon) {
  std::vector<std::pair<double, double>> clipped;
  for (auto [lo, hi] : intervals) {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, horizon);
    if (lo < hi) clipped.emplace_back(lo, hi);
  }
  merge_intervals(clipped);
  return clipped;
}

void check_horizon(double horizon, Mode mode) {
  if (!(horizon > 0.0))
    throw std::invalid_argument("attack horizon must be positive");
  if (mode == Mode::discrete && !is_integral(horizon))
    throw std::invalid_argument("discrete attack horizon must be integral");
}

void check_nonempty(const AttackSet& set) {
  if (set.measure() <= 0.0)
    throw std::invalid_argument("attack set is empty within the horizon");
}

}  // namespace

AttackSet AttackSet::periodic(Mode mode, double period, double phase,
                              double width, double horizon) {
  check_horizon(horizon, mode);
  if (!(period > 0.0))
    throw std::invalid_argument("attack period must be positive");
  if (phase < 0.0 || phase >= period)
    throw std::invalid_argument("attack phase must lie in [0, period)");
  if (!(width > 0.0) || width > period)
    throw std::invalid_argument("attack width must lie in (0, period]");
  if (mode == Mode::discrete &&
      (!is_integral(period) || !is_integral(phase) || !is_integral(width)))
    throw std::invalid_argument(
        "discrete attacks need integral period, phase, width");

  AttackSet set;
  set.kind_ = Kind::periodic;
  set.mode_ = mode;
  set.horizon_ = horizon;
  set.period_ = period;
  set.phase_ = phase;
  set.width_ = width;
  check_nonempty(set);
  return set;
}

AttackSet AttackSet::explicit_points(Mode mode, std::vector<double> timestamps,
                                     double horizon, double width) {
  check_horizon(horizon, mode);
  if (!(width > 0.0)) throw std::invalid_argument("width must be positive");
  if (mode == Mode::discrete && !is_integral(width))
    throw std::invalid_argument("discrete width must be integral");
  std::vector<std::pair<double, double>> intervals;
  intervals.reserve(timestamps.size());
  for (double p : timestamps) {
    if (mode == Mode::discrete && !is_integral(p))
      throw std::invalid_argument("discrete attack timestamps must be integral");
    intervals.emplace_back(p, p + width);
  }
  AttackSet set;
  set.kind_ = Kind::explicit_set;
  set.mode_ = mode;
  set.horizon_ = horizon;
  set.intervals_ = clip_and_merge(std::move(intervals), horizon);
  check_nonempty(set);
  return set;
}

AttackSet AttackSet::explicit_intervals(
    Mode mode, std::vector<std::pair<double, double>> intervals,
    double horizon) {
  check_horizon(horizon, mode);
  for (const auto& [lo, hi] : intervals) {
    if (!(lo < hi)) throw std::invalid_argument("interval needs lo < hi");
    if (mode == Mode::discrete && (!is_integral(lo) || !is_integral(hi)))
      throw std::invalid_argument("discrete intervals must be integral");
  }
  AttackSet set;
  set.kind_ = Kind::explicit_set;
  set.mode_ = mode;
  set.horizon_ = horizon;
  set.intervals_ = clip_and_merge(std::move(intervals), horizon);
  check_nonempty(set);
  return set;
}

AttackSet AttackSet::complement_of_points(Mode mode,
                                          std::vector<double> timestamps,
                                          double horizon, double width) {
  check_horizon(horizon, mode);
  std::vector<std::pair<double, double>> covered;
  covered.reserve(timestamps.size());
  for (double p : timestamps) covered.emplace_back(p, p + width);
  covered = clip_and_merge(std::move(covered), horizon);

  std::vector<std::pair<double, double>> complement;
  double cursor = 0.0;
  for (const auto& [lo, hi] : covered) {
    if (cursor < lo) complement.emplace_back(cursor, lo);
    cursor = hi;
  }
  if (cursor < horizon) complement.emplace_back(cursor, horizon);

  AttackSet set;
  set.kind_ = Kind::complement;
  set.mode_ = mode;
  set.horizon_ = horizon;
  set.intervals_ = std::move(complement);
  check_nonempty(set);
  return set;
}

bool AttackSet::contains(double x) const {
  if (x < 0.0 || x >= horizon_) return false;
  if (kind_ == Kind::periodic) {
    const double y = x - phase_;
    if (y < 0.0) return false;
    const double r = y - std::floor(y / period_) * period_;
    return r < width_;
  }
  auto it = std::upper_bound(
      intervals_.begin(), intervals_.end(), x,
      [](double v, const std::pair<double, double>& iv) { return v < iv.first; });
  if (it == intervals_.begin()) return false;
  --it;
  return x < it->second;
}

double AttackSet::measure() const {
  if (kind_ == Kind::periodic) {
    double total = 0.0;
    for (std::uint64_t k = 0;; ++k) {
      const double start = phase_ + static_cast<double>(k) * period_;
      if (start >= horizon_) break;
      total += std::min(width_, horizon_ - start);
    }
    return total;
  }
  double total = 0.0;
  for (const auto& [lo, hi] : intervals_) total += hi - lo;
  return total;
}

AttackSet AttackSet::truncated(double horizon) const {
  check_horizon(horizon, mode_);
  AttackSet set = *this;
  set.horizon_ = std::min(horizon, horizon_);
  if (kind_ != Kind::periodic)
    set.intervals_ = clip_and_merge(set.intervals_, set.horizon_);
  check_nonempty(set);
  return set;
}

namespace {

TrialOutcome run_over(ScheduleStream& stream, const AttackSet& attack) {
  TrialOutcome outcome;
  outcome.measure_covered = attack.measure();
  for (;;) {
    const double a = stream.next();
    if (a >= attack.horizon()) break;
    if (attack.contains(a)) {
      outcome.detected = true;
      outcome.first_hit = a;
      break;
    }
  }
  return outcome;
}

}  // namespace

TrialOutcome run_trial(const StrategySpec& spec, const AttackSet& attack,
                       std::uint64_t seed) {
  // Stack-constructed stream for the hot path; trial counts run into the
  // tens of millions.
  if (spec.strategy == Strategy::jwr) {
    JwrStream stream(*spec.jwr_config, seed);
    return run_over(stream, attack);
  }
  auto stream = make_stream(spec, seed);
  return run_over(*stream, attack);
}

MissEstimate estimate_miss_probability(const StrategySpec& spec,
                                       const AttackSet& attack,
                                       std::uint64_t trials,
                                       std::uint64_t master_seed,
                                       int threads) {
  if (trials < 100)
    throw std::invalid_argument("miss estimation needs >= 100 trials");

  auto count_range = [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t misses = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::uint64_t seed = derive_seed(master_seed, "attack-trial", i);
      if (!run_trial(spec, attack, seed).detected) ++misses;
    }
    return misses;
  };

  std::uint64_t misses = 0;
  if (threads <= 1) {
    misses = count_range(0, trials);
  } else {
    // Seeds are pre-derived per trial index, so any partition of the index
    // range yields the same counts as a sequential run.
    const auto n = static_cast<std::uint64_t>(threads);
    std::vector<std::uint64_t> partial(n, 0);
    std::vector<std::thread> workers;
    workers.reserve(n);
    for (std::uint64_t w = 0; w < n; ++w) {
      const std::uint64_t begin = trials * w / n;
      const std::uint64_t end = trials * (w + 1) / n;
      workers.emplace_back(
          [&, w, begin, end] { partial[w] = count_range(begin, end); });
    }
    for (auto& worker : workers) worker.join();
    for (std::uint64_t p : partial) misses += p;
  }

  MissEstimate estimate;
  estimate.trials = trials;
  estimate.misses = misses;
  estimate.p_hat =
      static_cast<double>(misses) / static_cast<double>(trials);
  estimate.wilson = wilson_interval(misses, trials);
  return estimate;
}

double exact_miss_dp(const ValidatedConfig& cfg, const AttackSet& attack) {
  if (cfg.mode() != Mode::discrete)
    throw std::invalid_argument("exact DP requires discrete mode");
  if (attack.mode() != Mode::discrete)
    throw std::invalid_argument("exact DP requires a discrete attack set");
  if (attack.horizon() > 1e6)
    throw std::invalid_argument("horizon too large for exact DP");

  const std::int64_t t = cfg.t_int();
  const auto u = static_cast<std::int64_t>(attack.horizon());
  const std::int64_t m = (u + t - 1) / t;  // intervals overlapping [0, u)
  const TransitionMatrix matrix = TransitionMatrix::exact(cfg);

  std::vector<double> survive(static_cast<std::size_t>(t),
                              1.0 / static_cast<double>(t));
  for (std::int64_t i = 0; i < m; ++i) {
    for (std::int64_t b = 0; b < t; ++b) {
      const std::int64_t a = i * t + b;
      if (a < u && attack.contains(static_cast<double>(a)))
        survive[static_cast<std::size_t>(b)] = 0.0;
    }
    if (i + 1 < m) survive = matrix.apply(survive);
  }
  double miss = 0.0;
  for (double w : survive) miss += w;
  return miss;
}

double exact_miss(const StrategySpec& spec, const AttackSet& attack) {
  if (spec.mode != Mode::discrete)
    throw std::invalid_argument("exact miss enumeration is discrete-only");
  const auto t = static_cast<std::int64_t>(spec.t);
  const auto u = static_cast<std::int64_t>(attack.horizon());

  switch (spec.strategy) {
    case Strategy::jwr:
      return exact_miss_dp(*spec.jwr_config, attack);
    case Strategy::fixed_rate: {
      for (std::int64_t a = 0; a < u; a += t)
        if (attack.contains(static_cast<double>(a))) return 0.0;
      return 1.0;
    }
    case Strategy::random_offset: {
      std::int64_t misses = 0;
      for (std::int64_t o = 0; o < t; ++o) {
        bool hit = false;
        for (std::int64_t a = o; a < u && !hit; a += t)
          hit = attack.contains(static_cast<double>(a));
        if (!hit) ++misses;
      }
      return static_cast<double>(misses) / static_cast<double>(t);
    }
    case Strategy::iid_per_interval: {
      double miss = 1.0;
      const std::int64_t m = (u + t - 1) / t;
      for (std::int64_t i = 0; i < m; ++i) {
        std::int64_t covered = 0;
        for (std::int64_t b = 0; b < t; ++b) {
          const std::int64_t a = i * t + b;
          if (a < u && attack.contains(static_cast<double>(a))) ++covered;
        }
        miss *= 1.0 - static_cast<double>(covered) / static_cast<double>(t);
      }
      return miss;
    }
  }
  throw std::invalid_argument("unknown strategy");
}

ExponentialFit fit_exponential(std::span<const double> measures,
                               std::span<const double> miss_estimates) {
  ExponentialFit fit;
  if (measures.size() != miss_estimates.size()) {
    fit.error = "measure/miss size mismatch";
    return fit;
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < measures.size(); ++i) {
    if (miss_estimates[i] > 0.0) {
      xs.push_back(measures[i]);
      ys.push_back(std::log(miss_estimates[i]));
    } else {
      ++fit.excluded_zeros;
    }
  }
  if (xs.size() < 4) {
    fit.error = "fewer than 4 usable points";
    return fit;
  }
  const auto [y_min, y_max] = std::minmax_element(ys.begin(), ys.end());
  if (*y_max - *y_min < 1e-12) {
    fit.no_decay = true;
    fit.error = "no decay: miss probability is constant";
    return fit;
  }
  const LinearFit ls = least_squares(xs, ys);
  fit.ok = true;
  fit.slope = ls.slope;
  fit.intercept = ls.intercept;
  fit.r_squared = ls.r_squared;
  return fit;
}

MissCurve build_miss_curve(const StrategySpec& spec,
                           std::span<const AttackSet> attacks,
                           std::uint64_t trials, std::uint64_t master_seed,
                           bool with_exact, int threads) {
  MissCurve curve;
  std::vector<double> measures, estimates;
  for (std::size_t i = 0; i < attacks.size(); ++i) {
    MissCurvePoint point;
    point.horizon = attacks[i].horizon();
    point.measure = attacks[i].measure();
    const std::uint64_t seed = derive_seed(master_seed, "attack-horizon", i);
    point.estimate =
        estimate_miss_probability(spec, attacks[i], trials, seed, threads);
    if (with_exact && spec.mode == Mode::discrete)
      point.exact = exact_miss(spec, attacks[i]);
    measures.push_back(point.measure);
    estimates.push_back(point.estimate.p_hat);
    curve.points.push_back(std::move(point));
  }
  curve.fit = fit_exponential(measures, estimates);
  return curve;
}

PhaseSearchResult phase_search_attack(const StrategySpec& spec, double width,
                                      double horizon, std::uint64_t budget) {
  if (spec.mode != Mode::discrete)
    throw std::invalid_argument("phase search is discrete-only");
  const auto t = static_cast<std::int64_t>(spec.t);
  const auto w = static_cast<std::int64_t>(width);
  if (w < 1 || w >= t)
    throw std::invalid_argument("phase search needs width in [1, t)");
  const std::int64_t n_phases = t - w + 1;

  PhaseSearchResult result;
  result.exact = true;
  result.evasion_by_phase.assign(static_cast<std::size_t>(n_phases), 0.0);

  auto in_window = [w](std::int64_t offset, std::int64_t phase) {
    return offset >= phase && offset < phase + w;
  };

  switch (spec.strategy) {
    case Strategy::fixed_rate: {
      // Deterministic schedule at offset 0; one probe reveals it.
      for (std::int64_t phi = 0; phi < n_phases; ++phi)
        result.evasion_by_phase[static_cast<std::size_t>(phi)] =
            in_window(0, phi) ? 0.0 : 1.0;
      if (budget == 0) {
        result.best_phase = 0;
        result.evasion_rate = result.evasion_by_phase[0];
      } else {
        const auto it = std::max_element(result.evasion_by_phase.begin(),
                                         result.evasion_by_phase.end());
        result.best_phase = it - result.evasion_by_phase.begin();
        result.evasion_rate = *it;
      }
      return result;
    }
    case Strategy::random_offset: {
      // Static per-phase rates over the t equally likely offsets.
      for (std::int64_t phi = 0; phi < n_phases; ++phi) {
        std::int64_t evading = 0;
        for (std::int64_t o = 0; o < t; ++o)
          if (!in_window(o, phi)) ++evading;
        result.evasion_by_phase[static_cast<std::size_t>(phi)] =
            static_cast<double>(evading) / static_cast<double>(t);
      }
      // Adaptive attacker: probes distinct phases against the deployed
      // offset, eliminates candidates from the catch outcomes, then commits
      // to the phase whose window overlaps the fewest surviving candidates.
      std::int64_t evading_instances = 0;
      const std::int64_t probes = std::min<std::int64_t>(
          static_cast<std::int64_t>(std::min<std::uint64_t>(budget, 1u << 20)),
          n_phases);
      for (std::int64_t o = 0; o < t; ++o) {
        std::vector<bool> candidate(static_cast<std::size_t>(t), true);
        for (std::int64_t j = 0; j < probes; ++j) {
          const bool caught = in_window(o, j);
          for (std::int64_t c = 0; c < t; ++c) {
            if (in_window(c, j) != caught)
              candidate[static_cast<std::size_t>(c)] = false;
          }
        }
        std::int64_t commit = 0;
        std::int64_t best_overlap = t + 1;
        for (std::int64_t phi = 0; phi < n_phases; ++phi) {
          std::int64_t overlap = 0;
          for (std::int64_t c = phi; c < phi + w; ++c)
            if (candidate[static_cast<std::size_t>(c)]) ++overlap;
          if (overlap < best_overlap) {
            best_overlap = overlap;
            commit = phi;
          }
        }
        if (!in_window(o, commit)) ++evading_instances;
      }
      result.evasion_rate =
          static_cast<double>(evading_instances) / static_cast<double>(t);
      const auto it = std::max_element(result.evasion_by_phase.begin(),
                                       result.evasion_by_phase.end());
      result.best_phase = it - result.evasion_by_phase.begin();
      return result;
    }
    case Strategy::jwr: {
      // Fresh randomness every run: probing carries no information, so each
      // phase is scored directly by its exact miss probability.
      for (std::int64_t phi = 0; phi < n_phases; ++phi) {
        const AttackSet attack = AttackSet::periodic(
            Mode::discrete, static_cast<double>(t), static_cast<double>(phi),
            width, horizon);
        result.evasion_by_phase[static_cast<std::size_t>(phi)] =
            exact_miss_dp(*spec.jwr_config, attack);
      }
      const auto it = std::max_element(result.evasion_by_phase.begin(),
                                       result.evasion_by_phase.end());
      result.best_phase = it - result.evasion_by_phase.begin();
      result.evasion_rate = *it;
      return result;
    }
    case Strategy::iid_per_interval:
      throw std::invalid_argument(
          "phase search targets fixed_rate, random_offset, or jwr");
  }
  throw std::invalid_argument("unknown strategy");
}

}  // namespace jwr
