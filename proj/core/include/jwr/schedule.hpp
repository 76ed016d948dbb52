#ifndef JWR_SCHEDULE_HPP
#define JWR_SCHEDULE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jwr/config.hpp"
#include "jwr/sampler.hpp"

namespace jwr {

enum class Strategy { jwr, fixed_rate, random_offset, iid_per_interval };

const char* to_string(Strategy strategy);
std::optional<Strategy> strategy_from_string(const std::string& name);

// A strategy plus everything needed to instantiate its stream. Baselines
// only use (mode, t); jwr additionally needs the validated jitter config.
struct StrategySpec {
  Strategy strategy = Strategy::jwr;
  Mode mode = Mode::continuous;
  double t = 1.0;
  std::optional<ValidatedConfig> jwr_config;

  static StrategySpec for_jwr(const ValidatedConfig& cfg) {
    return {Strategy::jwr, cfg.mode(), cfg.t(), cfg};
  }
  static StrategySpec baseline(Strategy s, Mode mode, double t) {
    return {s, mode, t, std::nullopt};
  }
};

std::unique_ptr<ScheduleStream> make_stream(const StrategySpec& spec,
                                            std::uint64_t seed);

// A materialized finite sequence of sample timestamps together with its
// generating parameters. Discrete timestamps are exact integers held in
// doubles (valid below 2^53, far beyond any practical horizon).
struct Schedule {
  Strategy strategy = Strategy::jwr;
  Mode mode = Mode::continuous;
  double t = 1.0;
  double t_p = 0.0;  // 0 for baselines
  JitterSpec jitter;
  std::uint64_t seed = 0;
  std::vector<double> timestamps;
};

// First n timestamps of the jittering-with-reflection stream.
Schedule generate_schedule(const ValidatedConfig& cfg, std::uint64_t seed,
                           std::size_t n);

// fixed_rate: a_i = i*t. random_offset: a_i = i*t + o with one uniform o per
// schedule. iid_per_interval: a_i uniform in interval i, independently.
Schedule baseline_schedule(Strategy strategy, Mode mode, double t,
                           std::uint64_t seed, std::size_t n);

Schedule materialize(const StrategySpec& spec, std::uint64_t seed,
                     std::size_t n);

// Offset series b_i = a_i - i*t.
std::vector<double> offsets(const Schedule& schedule);

struct GapViolation {
  std::size_t index;  // between timestamps index and index+1
  double gap;
};

struct DriftViolation {
  std::size_t index;
  double deviation;  // |a_i - (i*t + o)|
};

// Incremental uniformity: |a_{i+1} - a_i - t| <= t_p. The threshold defaults
// to the schedule's own t_p; pass an override to probe other thresholds.
// `tolerance` absorbs representation error in stored timestamps (e.g. after
// a 12-significant-digit round trip); discrete schedules are checked
// exactly by default.
std::vector<GapViolation> check_u1(const Schedule& schedule,
                                   std::optional<double> t_p_override = {},
                                   std::optional<double> tolerance = {});

// Cumulative uniformity: |a_i - (i*t + o)| <= t/2 for the caller's offset o
// (t/2 for continuous jwr, (t-1)/2 for discrete jwr).
std::vector<DriftViolation> check_u2(const Schedule& schedule, double offset,
                                     std::optional<double> tolerance = {});

}  // namespace jwr

#endif  // JWR_SCHEDULE_HPP
