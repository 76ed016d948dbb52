#ifndef JWR_ADVERSARY_HPP
#define JWR_ADVERSARY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jwr/config.hpp"
#include "jwr/schedule.hpp"
#include "jwr/stats.hpp"

namespace jwr {

// Adversarial timestamp set truncated to [0, horizon). Periodic sets keep an
// analytic description (O(1) membership); explicit and complement sets are
// canonicalized to sorted disjoint half-open intervals. In discrete mode all
// boundaries are integers and the measure counts timestamps.
class AttackSet {
 public:
  enum class Kind { periodic, explicit_set, complement };

  // S = union_k [k*period + phase, k*period + phase + width) within the
  // horizon. Throws if phase is not in [0, period), width is not positive
  // (>= 1 in discrete mode), or the set is empty within the horizon.
  static AttackSet periodic(Mode mode, double period, double phase,
                            double width, double horizon);
  // Point set; duplicates removed, order normalized. Discrete points become
  // unit cells, continuous points intervals of `width`.
  static AttackSet explicit_points(Mode mode, std::vector<double> timestamps,
                                   double horizon, double width = 1.0);
  static AttackSet explicit_intervals(
      Mode mode, std::vector<std::pair<double, double>> intervals,
      double horizon);
  // Everything in [0, horizon) except the given points (widened by `width`).
  static AttackSet complement_of_points(Mode mode,
                                        std::vector<double> timestamps,
                                        double horizon, double width = 1.0);

  Kind kind() const { return kind_; }
  Mode mode() const { return mode_; }
  double horizon() const { return horizon_; }

  bool contains(double x) const;
  // Lebesgue measure (continuous) or cardinality (discrete) of S within
  // [0, horizon).
  double measure() const;

  // The same set truncated to a smaller horizon.
  AttackSet truncated(double horizon) const;

 private:
  AttackSet() = default;

  Kind kind_ = Kind::explicit_set;
  Mode mode_ = Mode::discrete;
  double horizon_ = 0.0;
  // periodic form
  double period_ = 0.0, phase_ = 0.0, width_ = 0.0;
  // interval form, sorted and disjoint
  std::vector<std::pair<double, double>> intervals_;
};

struct TrialOutcome {
  bool detected = false;
  std::optional<double> first_hit;
  double measure_covered = 0.0;
};

// Generates one schedule up to the horizon and intersects it with S.
TrialOutcome run_trial(const StrategySpec& spec, const AttackSet& attack,
                       std::uint64_t seed);

struct MissEstimate {
  std::uint64_t trials = 0;
  std::uint64_t misses = 0;
  double p_hat = 0.0;
  WilsonInterval wilson;
};

// Fraction of undetected trials with a 95% Wilson interval. Trial seeds are
// derived as derive_seed(master_seed, "attack-trial", index), so adding
// trials never perturbs existing ones and any execution order gives the
// same counts. Requires trials >= 100.
MissEstimate estimate_miss_probability(const StrategySpec& spec,
                                       const AttackSet& attack,
                                       std::uint64_t trials,
                                       std::uint64_t master_seed,
                                       int threads = 1);

// Exact miss probability for the discrete jittering-with-reflection sampler:
// forward DP over (interval, offset) that prunes offsets landing in S and
// propagates the surviving mass through the exact transition matrix.
// Requires a discrete config and horizon <= 1e6 timestamps.
double exact_miss_dp(const ValidatedConfig& cfg, const AttackSet& attack);

// Exact miss probability for any discrete strategy: DP for jwr, direct
// enumeration for the baselines (fixed_rate is deterministic, random_offset
// has t equally likely schedules, iid_per_interval factorizes).
double exact_miss(const StrategySpec& spec, const AttackSet& attack);

struct ExponentialFit {
  bool ok = false;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  bool no_decay = false;
  std::size_t excluded_zeros = 0;
  std::string error;
};

// Least squares of log(miss) against the attack measure. Zero estimates are
// excluded (counted in excluded_zeros); fewer than 4 usable points or a
// constant series is reported as a failed fit rather than a throw.
ExponentialFit fit_exponential(std::span<const double> measures,
                               std::span<const double> miss_estimates);

struct MissCurvePoint {
  double horizon = 0.0;
  double measure = 0.0;
  MissEstimate estimate;
  std::optional<double> exact;
};

struct MissCurve {
  std::vector<MissCurvePoint> points;
  ExponentialFit fit;  // on the Monte Carlo estimates
};

MissCurve build_miss_curve(const StrategySpec& spec,
                           std::span<const AttackSet> attacks,
                           std::uint64_t trials, std::uint64_t master_seed,
                           bool with_exact, int threads = 1);

// Attacker who probes a deployed sampler instance with per-interval
// insertions and then commits to the phase that minimizes detection.
// Baselines are scored by exact enumeration over their possible schedules;
// the jittering sampler re-randomizes every run, so probing teaches the
// attacker nothing and each phase is scored by its exact DP miss
// probability. Discrete strategies only.
struct PhaseSearchResult {
  std::int64_t best_phase = 0;
  double evasion_rate = 0.0;
  std::vector<double> evasion_by_phase;
  bool exact = false;
};

PhaseSearchResult phase_search_attack(const StrategySpec& spec, double width,
                                      double horizon, std::uint64_t budget);

}  // namespace jwr

#endif  // JWR_ADVERSARY_HPP
