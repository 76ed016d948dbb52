#include "jwr/config.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace jwr {

namespace {

constexpr double kMassTolerance = 1e-12;

bool is_integral(double x) { return std::isfinite(x) && std::nearbyint(x) == x; }

void require(bool ok, ConfigError code, std::string detail,
             std::vector<ValidationIssue>& issues) {
  if (!ok) issues.push_back({code, std::move(detail)});
}

std::string fmt_offset_set(const std::vector<std::int64_t>& offsets) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (i) os << ", ";
    os << offsets[i];
  }
  os << "}";
  return os.str();
}

void validate_discrete_masses(const SamplingConfig& cfg,
                              const ValidateOptions& options,
                              std::vector<ValidationIssue>& issues) {
  const auto t_p = static_cast<std::int64_t>(cfg.t_p);
  std::vector<std::pair<std::int64_t, double>> masses;

  if (cfg.jitter.is_uniform()) {
    for (std::int64_t k = -t_p; k <= t_p; ++k)
      masses.emplace_back(k, 1.0 / static_cast<double>(2 * t_p + 1));
  } else {
    masses = cfg.jitter.masses;
    std::sort(masses.begin(), masses.end());
    for (std::size_t i = 1; i < masses.size(); ++i)
      require(masses[i].first != masses[i - 1].first,
              ConfigError::malformed_pieces,
              "duplicate mass entry for offset " +
                  std::to_string(masses[i].first),
              issues);
  }

  double total = 0.0;
  for (const auto& [offset, mass] : masses) {
    require(mass >= 0.0 && std::isfinite(mass), ConfigError::negative_mass,
            "mass at offset " + std::to_string(offset), issues);
    require(std::llabs(offset) <= t_p, ConfigError::support_exceeds_threshold,
            "offset " + std::to_string(offset) + " outside [-t_p, t_p]",
            issues);
    total += mass;
  }
  require(std::abs(total - 1.0) <= kMassTolerance, ConfigError::not_normalized,
          "total mass " + std::to_string(total), issues);

  // Symmetry is exact in discrete mode: mass(k) == mass(-k).
  for (const auto& [offset, mass] : masses) {
    double mirrored = 0.0;
    for (const auto& [o2, m2] : masses)
      if (o2 == -offset) mirrored = m2;
    require(mirrored == mass, ConfigError::asymmetric_jitter,
            "mass(" + std::to_string(offset) + ") != mass(" +
                std::to_string(-offset) + ")",
            issues);
  }

  if (options.enforce_gcd) {
    const auto two_t = 2 * static_cast<std::int64_t>(cfg.t);
    std::int64_t g = two_t;
    std::vector<std::int64_t> nonzero;
    for (const auto& [offset, mass] : masses) {
      if (offset != 0 && mass > 0.0) {
        nonzero.push_back(std::llabs(offset));
        g = std::gcd(g, std::llabs(offset));
      }
    }
    require(g == 1, ConfigError::gcd_condition_violated,
            "gcd(2t=" + std::to_string(two_t) + ", " +
                fmt_offset_set(nonzero) + ") = " + std::to_string(g),
            issues);
  }
}

void validate_pieces(const SamplingConfig& cfg,
                     std::vector<ValidationIssue>& issues) {
  if (cfg.jitter.is_uniform()) return;  // full-support uniform density

  auto pieces = cfg.jitter.pieces;
  require(!pieces.empty(), ConfigError::malformed_pieces, "no density pieces",
          issues);
  std::sort(pieces.begin(), pieces.end(),
            [](const auto& a, const auto& b) { return a.lo < b.lo; });

  double total = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    require(std::isfinite(p.lo) && std::isfinite(p.hi) && p.lo < p.hi,
            ConfigError::malformed_pieces, "piece with lo >= hi", issues);
    require(p.density >= 0.0 && std::isfinite(p.density),
            ConfigError::negative_mass, "piece density", issues);
    require(p.lo >= -cfg.t_p - kMassTolerance &&
                p.hi <= cfg.t_p + kMassTolerance,
            ConfigError::support_exceeds_threshold,
            "piece outside [-t_p, t_p]", issues);
    if (i > 0)
      require(p.lo >= pieces[i - 1].hi - kMassTolerance,
              ConfigError::malformed_pieces, "overlapping pieces", issues);
    total += p.density * (p.hi - p.lo);
  }
  require(std::abs(total - 1.0) <= kMassTolerance, ConfigError::not_normalized,
          "total mass " + std::to_string(total), issues);

  // Piece-by-piece mirror symmetry: the sorted list must equal its own
  // reflection about 0 within representation tolerance.
  bool symmetric = true;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& fwd = pieces[i];
    const auto& rev = pieces[pieces.size() - 1 - i];
    if (std::abs(fwd.lo + rev.hi) > kMassTolerance ||
        std::abs(fwd.hi + rev.lo) > kMassTolerance ||
        std::abs(fwd.density - rev.density) > kMassTolerance) {
      symmetric = false;
    }
  }
  require(symmetric, ConfigError::asymmetric_jitter,
          "density pieces are not mirror-symmetric about 0", issues);
}

}  // namespace

const char* to_string(Mode mode) {
  return mode == Mode::continuous ? "continuous" : "discrete";
}

const char* to_string(ConfigError code) {
  switch (code) {
    case ConfigError::interval_not_positive:
      return "interval_not_positive: t must be a positive finite value";
    case ConfigError::threshold_out_of_range:
      return "threshold_out_of_range: t_p must lie strictly between 0 and t";
    case ConfigError::non_integral_discrete:
      return "non_integral_discrete: discrete mode requires integer t and t_p";
    case ConfigError::asymmetric_jitter:
      return "asymmetric_jitter: jitter must be symmetric about 0";
    case ConfigError::support_exceeds_threshold:
      return "support_exceeds_threshold: jitter support must fit in "
             "[-t_p, t_p]";
    case ConfigError::not_normalized:
      return "not_normalized: jitter mass must total 1";
    case ConfigError::negative_mass:
      return "negative_mass: jitter masses/densities must be nonnegative";
    case ConfigError::malformed_pieces:
      return "malformed_pieces: density pieces must be ordered and disjoint";
    case ConfigError::gcd_condition_violated:
      return "gcd_condition_violated: gcd of 2t and the nonzero jitter "
             "offsets must be 1";
  }
  return "unknown";
}

std::variant<ValidatedConfig, std::vector<ValidationIssue>> validate_config(
    const SamplingConfig& cfg, const ValidateOptions& options) {
  std::vector<ValidationIssue> issues;

  require(std::isfinite(cfg.t) && cfg.t > 0.0,
          ConfigError::interval_not_positive, "t = " + std::to_string(cfg.t),
          issues);
  require(std::isfinite(cfg.t_p) && cfg.t_p > 0.0 && cfg.t_p < cfg.t,
          ConfigError::threshold_out_of_range,
          "t_p = " + std::to_string(cfg.t_p), issues);
  if (cfg.mode == Mode::discrete)
    require(is_integral(cfg.t) && is_integral(cfg.t_p),
            ConfigError::non_integral_discrete,
            "t = " + std::to_string(cfg.t) +
                ", t_p = " + std::to_string(cfg.t_p),
            issues);

  // Jitter invariants only make sense once the bounds themselves are sane.
  if (issues.empty()) {
    if (cfg.mode == Mode::discrete) {
      validate_discrete_masses(cfg, options, issues);
    } else {
      validate_pieces(cfg, issues);
    }
  }

  if (!issues.empty()) return issues;

  SamplingConfig canonical = cfg;
  std::sort(canonical.jitter.masses.begin(), canonical.jitter.masses.end());
  std::sort(canonical.jitter.pieces.begin(), canonical.jitter.pieces.end(),
            [](const auto& a, const auto& b) { return a.lo < b.lo; });
  return ValidatedConfig(std::move(canonical));
}

std::string describe(const std::vector<ValidationIssue>& issues) {
  std::ostringstream os;
  for (const auto& issue : issues)
    os << to_string(issue.code) << " (" << issue.detail << ")\n";
  return os.str();
}

}  // namespace jwr
