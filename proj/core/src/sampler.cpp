#include "jwr/sampler.hpp"

#include <cassert>
#include <cmath>

namespace jwr {

double reflect(double b_raw, std::uint64_t interval_index, double t) {
  const double lo = static_cast<double>(interval_index) * t;
  const double hi = lo + t;
  if (b_raw > hi) return 2.0 * hi - b_raw;
  if (b_raw < lo) return 2.0 * lo - b_raw;
  return b_raw;
}

std::int64_t reflect(std::int64_t b_raw, std::uint64_t interval_index,
                     std::int64_t t) {
  const std::int64_t lo = static_cast<std::int64_t>(interval_index) * t;
  const std::int64_t hi = lo + t;
  if (b_raw >= hi) return 2 * hi - b_raw - 1;
  if (b_raw < lo) return 2 * lo - b_raw - 1;
  return b_raw;
}

double reflect_offset(double raw, double t) {
  if (raw > t) return 2.0 * t - raw;
  if (raw < 0.0) return -raw;
  return raw;
}

std::int64_t reflect_offset(std::int64_t raw, std::int64_t t) {
  if (raw >= t) return 2 * t - raw - 1;
  if (raw < 0) return -raw - 1;
  return raw;
}

double draw_jitter(const ValidatedConfig& cfg, SplitMix64& rng) {
  const JitterSpec& jitter = cfg.jitter();
  if (jitter.is_uniform()) return (2.0 * rng.next_unit() - 1.0) * cfg.t_p();

  // Piecewise-constant density: pick a piece by cumulative mass, then a
  // uniform point within it.
  const double u = rng.next_unit();
  double acc = 0.0;
  for (const auto& piece : jitter.pieces) {
    const double mass = piece.density * (piece.hi - piece.lo);
    if (u < acc + mass || &piece == &jitter.pieces.back()) {
      const double frac = mass > 0.0 ? (u - acc) / mass : 0.0;
      return piece.lo + frac * (piece.hi - piece.lo);
    }
    acc += mass;
  }
  return 0.0;  // unreachable for a validated density
}

std::int64_t draw_jitter_int(const ValidatedConfig& cfg, SplitMix64& rng) {
  const JitterSpec& jitter = cfg.jitter();
  const std::int64_t t_p = cfg.t_p_int();
  if (jitter.is_uniform())
    return static_cast<std::int64_t>(
               rng.next_below(static_cast<std::uint64_t>(2 * t_p + 1))) -
           t_p;

  const double u = rng.next_unit();
  double acc = 0.0;
  for (const auto& [offset, mass] : jitter.masses) {
    acc += mass;
    if (u < acc) return offset;
  }
  return jitter.masses.back().first;  // guards the u ~ 1 rounding edge
}

SamplerState init_sampler(const ValidatedConfig& cfg, std::uint64_t seed) {
  SamplerState state;
  state.index = 0;
  state.rng = SplitMix64(seed);
  if (cfg.mode() == Mode::discrete) {
    state.offset = static_cast<double>(
        state.rng.next_below(static_cast<std::uint64_t>(cfg.t_int())));
  } else {
    state.offset = state.rng.next_unit() * cfg.t();
  }
  return state;
}

StepResult next_sample(const ValidatedConfig& cfg, const SamplerState& state) {
  SamplerState next = state;
  next.index = state.index + 1;
  if (cfg.mode() == Mode::discrete) {
    const std::int64_t t = cfg.t_int();
    const std::int64_t raw =
        static_cast<std::int64_t>(state.offset) + draw_jitter_int(cfg, next.rng);
    const std::int64_t reflected = reflect_offset(raw, t);
    assert(reflected >= 0 && reflected < t);
    next.offset = static_cast<double>(reflected);
  } else {
    const double t = cfg.t();
    const double raw = state.offset + draw_jitter(cfg, next.rng);
    const double reflected = reflect_offset(raw, t);
    assert(reflected >= 0.0 && reflected <= t);
    next.offset = reflected;
  }
  return {next, timestamp_of(next, cfg)};
}

double timestamp_of(const SamplerState& state, const ValidatedConfig& cfg) {
  if (cfg.mode() == Mode::discrete) {
    const std::int64_t base =
        static_cast<std::int64_t>(state.index) * cfg.t_int();
    return static_cast<double>(base + static_cast<std::int64_t>(state.offset));
  }
  return state.offset + static_cast<double>(state.index) * cfg.t();
}

double JwrStream::next() {
  if (!emitted_first_) {
    emitted_first_ = true;
    return timestamp_of(state_, cfg_);
  }
  StepResult step = next_sample(cfg_, state_);
  state_ = step.state;
  return step.timestamp;
}

}  // namespace jwr
