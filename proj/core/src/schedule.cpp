#include "jwr/schedule.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace jwr {

namespace {

class FixedRateStream final : public ScheduleStream {
 public:
  FixedRateStream(double t) : t_(t) {}
  double next() override { return static_cast<double>(index_++) * t_; }

 private:
  double t_;
  std::uint64_t index_ = 0;
};

class RandomOffsetStream final : public ScheduleStream {
 public:
  RandomOffsetStream(Mode mode, double t, std::uint64_t seed) : t_(t) {
    SplitMix64 rng(seed);
    offset_ = mode == Mode::discrete
                  ? static_cast<double>(
                        rng.next_below(static_cast<std::uint64_t>(t)))
                  : rng.next_unit() * t;
  }
  double next() override {
    return static_cast<double>(index_++) * t_ + offset_;
  }

 private:
  double t_;
  double offset_;
  std::uint64_t index_ = 0;
};

class IidPerIntervalStream final : public ScheduleStream {
 public:
  IidPerIntervalStream(Mode mode, double t, std::uint64_t seed)
      : mode_(mode), t_(t), rng_(seed) {}
  double next() override {
    const double base = static_cast<double>(index_++) * t_;
    if (mode_ == Mode::discrete)
      return base + static_cast<double>(
                        rng_.next_below(static_cast<std::uint64_t>(t_)));
    return base + rng_.next_unit() * t_;
  }

 private:
  Mode mode_;
  double t_;
  SplitMix64 rng_;
  std::uint64_t index_ = 0;
};

double default_u_tolerance(const Schedule& schedule) {
  if (schedule.mode == Mode::discrete) return 0.0;
  double max_abs = schedule.t;
  if (!schedule.timestamps.empty())
    max_abs = std::max(max_abs, std::abs(schedule.timestamps.back()));
  return 64.0 * std::numeric_limits<double>::epsilon() * max_abs;
}

}  // namespace

const char* to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::jwr:
      return "jwr";
    case Strategy::fixed_rate:
      return "fixed_rate";
    case Strategy::random_offset:
      return "random_offset";
    case Strategy::iid_per_interval:
      return "iid_per_interval";
  }
  return "unknown";
}

std::optional<Strategy> strategy_from_string(const std::string& name) {
  if (name == "jwr") return Strategy::jwr;
  if (name == "fixed_rate") return Strategy::fixed_rate;
  if (name == "random_offset") return Strategy::random_offset;
  if (name == "iid_per_interval") return Strategy::iid_per_interval;
  return std::nullopt;
}

std::unique_ptr<ScheduleStream> make_stream(const StrategySpec& spec,
                                            std::uint64_t seed) {
  switch (spec.strategy) {
    case Strategy::jwr:
      if (!spec.jwr_config)
        throw std::invalid_argument("jwr strategy requires a validated config");
      return std::make_unique<JwrStream>(*spec.jwr_config, seed);
    case Strategy::fixed_rate:
      return std::make_unique<FixedRateStream>(spec.t);
    case Strategy::random_offset:
      return std::make_unique<RandomOffsetStream>(spec.mode, spec.t, seed);
    case Strategy::iid_per_interval:
      return std::make_unique<IidPerIntervalStream>(spec.mode, spec.t, seed);
  }
  throw std::invalid_argument("unknown strategy");
}

Schedule generate_schedule(const ValidatedConfig& cfg, std::uint64_t seed,
                           std::size_t n) {
  if (n < 1) throw std::invalid_argument("schedule length must be >= 1");
  Schedule schedule;
  schedule.strategy = Strategy::jwr;
  schedule.mode = cfg.mode();
  schedule.t = cfg.t();
  schedule.t_p = cfg.t_p();
  schedule.jitter = cfg.jitter();
  schedule.seed = seed;
  schedule.timestamps.reserve(n);
  JwrStream stream(cfg, seed);
  for (std::size_t i = 0; i < n; ++i) schedule.timestamps.push_back(stream.next());
  return schedule;
}

Schedule baseline_schedule(Strategy strategy, Mode mode, double t,
                           std::uint64_t seed, std::size_t n) {
  if (strategy == Strategy::jwr)
    throw std::invalid_argument("use generate_schedule for the jwr strategy");
  if (n < 1) throw std::invalid_argument("schedule length must be >= 1");
  Schedule schedule;
  schedule.strategy = strategy;
  schedule.mode = mode;
  schedule.t = t;
  schedule.t_p = 0.0;
  schedule.seed = seed;
  schedule.timestamps.reserve(n);
  auto stream = make_stream(StrategySpec::baseline(strategy, mode, t), seed);
  for (std::size_t i = 0; i < n; ++i)
    schedule.timestamps.push_back(stream->next());
  return schedule;
}

Schedule materialize(const StrategySpec& spec, std::uint64_t seed,
                     std::size_t n) {
  if (spec.strategy == Strategy::jwr)
    return generate_schedule(*spec.jwr_config, seed, n);
  return baseline_schedule(spec.strategy, spec.mode, spec.t, seed, n);
}

std::vector<double> offsets(const Schedule& schedule) {
  std::vector<double> out;
  out.reserve(schedule.timestamps.size());
  for (std::size_t i = 0; i < schedule.timestamps.size(); ++i)
    out.push_back(schedule.timestamps[i] -
                  static_cast<double>(i) * schedule.t);
  return out;
}

std::vector<GapViolation> check_u1(const Schedule& schedule,
                                   std::optional<double> t_p_override,
                                   std::optional<double> tolerance) {
  const double t_p = t_p_override.value_or(schedule.t_p);
  const double tol = tolerance.value_or(default_u_tolerance(schedule));
  std::vector<GapViolation> violations;
  for (std::size_t i = 0; i + 1 < schedule.timestamps.size(); ++i) {
    const double gap = schedule.timestamps[i + 1] - schedule.timestamps[i];
    if (std::abs(gap - schedule.t) > t_p + tol)
      violations.push_back({i, gap});
  }
  return violations;
}

std::vector<DriftViolation> check_u2(const Schedule& schedule, double offset,
                                     std::optional<double> tolerance) {
  const double tol = tolerance.value_or(default_u_tolerance(schedule));
  std::vector<DriftViolation> violations;
  for (std::size_t i = 0; i < schedule.timestamps.size(); ++i) {
    const double deviation = std::abs(
        schedule.timestamps[i] - (static_cast<double>(i) * schedule.t + offset));
    if (deviation > schedule.t / 2.0 + tol) violations.push_back({i, deviation});
  }
  return violations;
}

}  // namespace jwr
