#include "jwr/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace jwr {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void bad_input(const std::string& what) {
  throw std::invalid_argument(what);
}

Mode mode_from_string(const std::string& s) {
  if (s == "continuous") return Mode::continuous;
  if (s == "discrete") return Mode::discrete;
  bad_input("unknown mode: " + s);
}

}  // namespace

std::string format_significant(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

std::string format_timestamp(double x, Mode mode) {
  if (mode == Mode::discrete) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld",
                  static_cast<long long>(std::llround(x)));
    return buf;
  }
  return format_significant(x);
}

nlohmann::ordered_json jitter_to_json(const JitterSpec& jitter, Mode mode) {
  ordered_json j;
  if (jitter.is_uniform()) {
    j["kind"] = "uniform";
    return j;
  }
  j["kind"] = "explicit";
  if (mode == Mode::discrete) {
    ordered_json masses = ordered_json::array();
    for (const auto& [offset, mass] : jitter.masses)
      masses.push_back(ordered_json::array({offset, mass}));
    j["masses"] = std::move(masses);
  } else {
    ordered_json pieces = ordered_json::array();
    for (const auto& piece : jitter.pieces)
      pieces.push_back(
          ordered_json::array({piece.lo, piece.hi, piece.density}));
    j["pieces"] = std::move(pieces);
  }
  return j;
}

JitterSpec jitter_from_json(const nlohmann::json& j, Mode mode) {
  if (!j.is_object() || !j.contains("kind"))
    bad_input("jitter spec needs a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "uniform") return JitterSpec::uniform_jitter();
  if (kind != "explicit") bad_input("unknown jitter kind: " + kind);

  if (mode == Mode::discrete) {
    if (!j.contains("masses")) bad_input("explicit discrete jitter needs \"masses\"");
    std::vector<std::pair<std::int64_t, double>> masses;
    for (const auto& entry : j.at("masses")) {
      if (!entry.is_array() || entry.size() != 2)
        bad_input("jitter mass entries are [offset, mass] pairs");
      masses.emplace_back(entry[0].get<std::int64_t>(),
                          entry[1].get<double>());
    }
    return JitterSpec::discrete_masses(std::move(masses));
  }
  if (!j.contains("pieces")) bad_input("explicit continuous jitter needs \"pieces\"");
  std::vector<JitterSpec::Piece> pieces;
  for (const auto& entry : j.at("pieces")) {
    if (!entry.is_array() || entry.size() != 3)
      bad_input("jitter pieces are [lo, hi, density] triples");
    pieces.push_back(
        {entry[0].get<double>(), entry[1].get<double>(), entry[2].get<double>()});
  }
  return JitterSpec::piecewise_density(std::move(pieces));
}

nlohmann::ordered_json config_to_json(const SamplingConfig& cfg) {
  ordered_json j;
  j["mode"] = to_string(cfg.mode);
  j["t"] = cfg.t;
  j["t_p"] = cfg.t_p;
  j["jitter"] = jitter_to_json(cfg.jitter, cfg.mode);
  return j;
}

SamplingConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) bad_input("config must be a JSON object");
  SamplingConfig cfg;
  cfg.mode = mode_from_string(j.at("mode").get<std::string>());
  cfg.t = j.at("t").get<double>();
  cfg.t_p = j.value("t_p", 0.0);
  if (j.contains("jitter")) cfg.jitter = jitter_from_json(j.at("jitter"), cfg.mode);
  return cfg;
}

StrategyConfigFile strategy_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) bad_input("config must be a JSON object");
  StrategyConfigFile file;
  const std::string name = j.value("strategy", std::string("jwr"));
  const auto strategy = strategy_from_string(name);
  if (!strategy) bad_input("unknown strategy: " + name);
  file.strategy = *strategy;
  file.config = config_from_json(j);
  return file;
}

std::string schedule_to_json(const Schedule& schedule) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"strategy\": \"" << to_string(schedule.strategy) << "\",\n";
  os << "  \"mode\": \"" << to_string(schedule.mode) << "\",\n";
  os << "  \"t\": " << format_timestamp(schedule.t, schedule.mode) << ",\n";
  os << "  \"t_p\": " << format_timestamp(schedule.t_p, schedule.mode)
     << ",\n";
  os << "  \"jitter\": " << jitter_to_json(schedule.jitter, schedule.mode).dump()
     << ",\n";
  os << "  \"seed\": " << schedule.seed << ",\n";
  os << "  \"timestamps\": [";
  for (std::size_t i = 0; i < schedule.timestamps.size(); ++i) {
    if (i) os << ", ";
    os << format_timestamp(schedule.timestamps[i], schedule.mode);
  }
  os << "]\n}\n";
  return os.str();
}

Schedule schedule_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad_input(std::string("schedule JSON parse error: ") + e.what());
  }
  Schedule schedule;
  const auto strategy = strategy_from_string(j.at("strategy").get<std::string>());
  if (!strategy) bad_input("unknown strategy in schedule file");
  schedule.strategy = *strategy;
  schedule.mode = mode_from_string(j.at("mode").get<std::string>());
  schedule.t = j.at("t").get<double>();
  schedule.t_p = j.value("t_p", 0.0);
  if (j.contains("jitter"))
    schedule.jitter = jitter_from_json(j.at("jitter"), schedule.mode);
  schedule.seed = j.value("seed", std::uint64_t{0});
  for (const auto& ts : j.at("timestamps"))
    schedule.timestamps.push_back(ts.get<double>());
  return schedule;
}

AttackSet attack_from_json(const nlohmann::json& j, Mode mode,
                           std::optional<double> horizon_override) {
  if (!j.is_object() || !j.contains("kind"))
    bad_input("attack spec needs a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  double horizon = horizon_override.value_or(j.value("horizon", 0.0));
  if (horizon <= 0.0) bad_input("attack spec needs a positive horizon");

  if (kind == "periodic") {
    return AttackSet::periodic(mode, j.at("period").get<double>(),
                               j.value("phase", 0.0),
                               j.value("width", 1.0), horizon);
  }
  if (kind == "explicit") {
    if (j.contains("intervals")) {
      std::vector<std::pair<double, double>> intervals;
      for (const auto& iv : j.at("intervals")) {
        if (!iv.is_array() || iv.size() != 2)
          bad_input("attack intervals are [lo, hi] pairs");
        intervals.emplace_back(iv[0].get<double>(), iv[1].get<double>());
      }
      return AttackSet::explicit_intervals(mode, std::move(intervals), horizon);
    }
    std::vector<double> points;
    for (const auto& ts : j.at("timestamps")) points.push_back(ts.get<double>());
    return AttackSet::explicit_points(mode, std::move(points), horizon,
                                      j.value("width", 1.0));
  }
  if (kind == "complement") {
    std::vector<double> points;
    for (const auto& ts : j.at("timestamps")) points.push_back(ts.get<double>());
    return AttackSet::complement_of_points(mode, std::move(points), horizon,
                                           j.value("width", 1.0));
  }
  bad_input("unknown attack kind: " + kind);
}

std::string manifest_to_json(const RunManifest& manifest) {
  ordered_json j;
  j["command"] = manifest.command;
  j["argv"] = manifest.argv;
  j["config"] = manifest.resolved_config;
  j["seed"] = manifest.master_seed;
  j["version"] = manifest.tool_version;
  j["outputs"] = manifest.outputs;
  j["duration_seconds"] = manifest.duration_seconds;
  return j.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad_input(std::string("manifest parse error: ") + e.what());
  }
  RunManifest manifest;
  manifest.command = j.at("command").get<std::string>();
  manifest.argv = j.at("argv").get<std::vector<std::string>>();
  manifest.resolved_config = j.value("config", json::object());
  manifest.master_seed = j.value("seed", std::uint64_t{0});
  manifest.tool_version = j.value("version", std::string());
  manifest.outputs = j.value("outputs", std::vector<std::string>{});
  manifest.duration_seconds = j.value("duration_seconds", 0.0);
  return manifest;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("read failure: " + path);
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("write failure: " + path);
}

}  // namespace jwr
