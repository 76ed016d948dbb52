#ifndef JWR_IO_HPP
#define JWR_IO_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jwr/adversary.hpp"
#include "jwr/config.hpp"
#include "jwr/schedule.hpp"

namespace jwr {

// Filesystem failures (unreadable input, unwritable output); distinct from
// malformed content so the CLI can map them to its own exit code.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed numeric text format used across every artifact this library writes:
// 12 significant digits, C locale.
std::string format_significant(double x, int digits = 12);
// Discrete timestamps serialize as integers, continuous ones with 12
// significant digits.
std::string format_timestamp(double x, Mode mode);

nlohmann::ordered_json jitter_to_json(const JitterSpec& jitter, Mode mode);
JitterSpec jitter_from_json(const nlohmann::json& j, Mode mode);

nlohmann::ordered_json config_to_json(const SamplingConfig& cfg);
SamplingConfig config_from_json(const nlohmann::json& j);

struct StrategyConfigFile {
  Strategy strategy = Strategy::jwr;
  SamplingConfig config;
};

// Strategy config file: {"strategy", "mode", "t", and for jwr "t_p" and
// "jitter"}.
StrategyConfigFile strategy_config_from_json(const nlohmann::json& j);

// Schedule file format (deterministic byte layout):
// {"strategy", "mode", "t", "t_p", "jitter", "seed", "timestamps": [...]}.
std::string schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(const std::string& text);

// Attack spec: {"kind":"periodic", "period", "phase", "width", "horizon"} |
// {"kind":"explicit", "timestamps":[...] or "intervals":[[lo,hi],...]} |
// {"kind":"complement", "timestamps":[...]}. A horizon override replaces the
// file's horizon.
AttackSet attack_from_json(const nlohmann::json& j, Mode mode,
                           std::optional<double> horizon_override = {});

struct RunManifest {
  std::string command;
  std::vector<std::string> argv;  // replaying this argv reproduces outputs
  nlohmann::ordered_json resolved_config;
  std::uint64_t master_seed = 0;
  std::string tool_version;
  std::vector<std::string> outputs;
  double duration_seconds = 0.0;
};

std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace jwr

#endif  // JWR_IO_HPP
