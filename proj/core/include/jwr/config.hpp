#ifndef JWR_CONFIG_HPP
#define JWR_CONFIG_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "jwr/jitter.hpp"

namespace jwr {

enum class Mode { continuous, discrete };

const char* to_string(Mode mode);

// Target interval t, perturbation threshold t_p in (0, t), and the jitter
// distribution. Discrete mode requires integral t and t_p.
struct SamplingConfig {
  Mode mode = Mode::continuous;
  double t = 1.0;
  double t_p = 0.1;
  JitterSpec jitter;
};

enum class ConfigError {
  interval_not_positive,
  threshold_out_of_range,
  non_integral_discrete,
  asymmetric_jitter,
  support_exceeds_threshold,
  not_normalized,
  negative_mass,
  malformed_pieces,
  gcd_condition_violated,
};

const char* to_string(ConfigError code);

struct ValidationIssue {
  ConfigError code;
  std::string detail;
};

struct ValidateOptions {
  // The discrete irreducibility/aperiodicity requirement:
  // gcd({2t} union {|k| : k != 0, mass(k) > 0}) == 1.
  // Spectral diagnostics switch it off to study what breaks without it.
  bool enforce_gcd = true;
};

// A SamplingConfig that passed validation. Explicit discrete masses are
// stored sorted by offset; the wrapped config is immutable from here on.
class ValidatedConfig {
 public:
  const SamplingConfig& config() const { return cfg_; }
  Mode mode() const { return cfg_.mode; }
  double t() const { return cfg_.t; }
  double t_p() const { return cfg_.t_p; }
  const JitterSpec& jitter() const { return cfg_.jitter; }

  // Discrete-mode views; only meaningful when mode() == Mode::discrete.
  std::int64_t t_int() const { return static_cast<std::int64_t>(cfg_.t); }
  std::int64_t t_p_int() const { return static_cast<std::int64_t>(cfg_.t_p); }

 private:
  friend std::variant<ValidatedConfig, std::vector<ValidationIssue>>
  validate_config(const SamplingConfig&, const ValidateOptions&);

  explicit ValidatedConfig(SamplingConfig cfg) : cfg_(std::move(cfg)) {}

  SamplingConfig cfg_;
};

// Checks every config and jitter invariant and reports all violations, not
// just the first: threshold range, discrete integrality, symmetry about 0,
// support containment, normalization to 1 within 1e-12, nonnegative mass,
// and (discrete) the gcd condition.
std::variant<ValidatedConfig, std::vector<ValidationIssue>> validate_config(
    const SamplingConfig& cfg, const ValidateOptions& options = {});

// Convenience: formats issues one per line.
std::string describe(const std::vector<ValidationIssue>& issues);

}  // namespace jwr

#endif  // JWR_CONFIG_HPP
