#ifndef JWR_SAMPLER_HPP
#define JWR_SAMPLER_HPP

#include <cstdint>
#include <memory>

#include "jwr/config.hpp"
#include "jwr/rng.hpp"

namespace jwr {

// Mirror reflection against the boundaries of interval [i*t, (i+1)*t].
// The raw value may overshoot its interval by at most t_p < t, so a single
// reflection always lands inside.
double reflect(double b_raw, std::uint64_t interval_index, double t);
// Discrete variant; the -1 shift keeps {i*t, ..., (i+1)*t - 1} closed under
// reflection and the offset law uniform.
std::int64_t reflect(std::int64_t b_raw, std::uint64_t interval_index,
                     std::int64_t t);

// Interval-local forms operating on the offset b = a - i*t.
double reflect_offset(double raw, double t);
std::int64_t reflect_offset(std::int64_t raw, std::int64_t t);

// Walker state: interval index, offset within the interval, and the
// generator. Nothing else feeds the next step, so the offset sequence is
// Markov by construction. Discrete offsets are integers stored exactly in
// the double field.
struct SamplerState {
  std::uint64_t index = 0;
  double offset = 0.0;
  SplitMix64 rng;

  friend bool operator==(const SamplerState&, const SamplerState&) = default;
};

// Draws a_0 uniformly on [0, t) (continuous) or {0, ..., t-1} (discrete).
// Deterministic in the seed.
SamplerState init_sampler(const ValidatedConfig& cfg, std::uint64_t seed);

struct StepResult {
  SamplerState state;
  double timestamp;  // a_i = offset + i*t
};

// Advances one interval: draws v from the jitter, shifts by t, reflects.
// All arithmetic happens on the offset, so precision is independent of how
// far the walk has progressed.
StepResult next_sample(const ValidatedConfig& cfg, const SamplerState& state);

// Timestamp represented by a state, a_i = offset + i*t.
double timestamp_of(const SamplerState& state, const ValidatedConfig& cfg);

// One draw from the jitter distribution of `cfg`.
double draw_jitter(const ValidatedConfig& cfg, SplitMix64& rng);
std::int64_t draw_jitter_int(const ValidatedConfig& cfg, SplitMix64& rng);

// Streaming view of a timestamp sequence: emits a_0, a_1, ... in order.
class ScheduleStream {
 public:
  virtual ~ScheduleStream() = default;
  virtual double next() = 0;
};

// Streaming jittering-with-reflection sampler.
class JwrStream final : public ScheduleStream {
 public:
  JwrStream(const ValidatedConfig& cfg, std::uint64_t seed)
      : cfg_(cfg), state_(init_sampler(cfg, seed)) {}

  double next() override;

  const SamplerState& state() const { return state_; }

 private:
  ValidatedConfig cfg_;
  SamplerState state_;
  bool emitted_first_ = false;
};

}  // namespace jwr

#endif  // JWR_SAMPLER_HPP
