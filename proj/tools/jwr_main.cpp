// Command line front end: generate | validate | analyze | attack | sweep.
//
// Exit codes: 0 ok, 2 invalid input, 3 I/O failure, 4 insufficient data.
// stdout carries nothing but optional progress; diagnostics go to stderr.
// Every run writes a manifest next to its primary output; re-running the
// argv recorded there reproduces the outputs (bit-exactly in discrete mode).

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jwr/adversary.hpp"
#include "jwr/analysis.hpp"
#include "jwr/io.hpp"
#include "jwr/rng.hpp"
#include "jwr/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitIo = 3;
constexpr int kExitInsufficientData = 4;

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Cli {
  std::string config_path;
  std::string schedule_path;
  std::string attack_path;
  std::string grid_path;
  std::string out_path;
  std::string out_dir;
  std::string which;
  std::string format = "csv";
  std::uint64_t seed = 0;
  std::uint64_t n = 1000;
  std::uint64_t trials = 10000;
  std::uint64_t horizon = 40;  // in multiples of t
  std::uint64_t budget = 0;
  int threads = 1;
  int max_lag = 10;
  std::vector<std::string> argv;
};

jwr::ValidatedConfig validate_or_die(const jwr::SamplingConfig& cfg) {
  auto result = jwr::validate_config(cfg);
  if (auto* issues = std::get_if<std::vector<jwr::ValidationIssue>>(&result)) {
    std::cerr << "invalid sampling config:\n" << jwr::describe(*issues);
    std::exit(kExitInvalidInput);
  }
  return std::get<jwr::ValidatedConfig>(std::move(result));
}

jwr::StrategySpec load_strategy(const std::string& config_path) {
  const auto file = jwr::strategy_config_from_json(
      nlohmann::json::parse(jwr::read_text_file(config_path)));
  if (file.strategy == jwr::Strategy::jwr)
    return jwr::StrategySpec::for_jwr(validate_or_die(file.config));
  if (!(file.config.t > 0))
    throw std::invalid_argument("baseline config needs positive t");
  if (file.config.mode == jwr::Mode::discrete &&
      std::nearbyint(file.config.t) != file.config.t)
    throw std::invalid_argument("discrete baseline needs integral t");
  return jwr::StrategySpec::baseline(file.strategy, file.config.mode,
                                     file.config.t);
}

void write_manifest(const std::string& command, const Cli& cli,
                    const nlohmann::ordered_json& resolved,
                    const std::vector<std::string>& outputs,
                    double duration_seconds, const std::string& path) {
  jwr::RunManifest manifest;
  manifest.command = command;
  manifest.argv = cli.argv;
  manifest.resolved_config = resolved;
  manifest.master_seed = cli.seed;
  manifest.tool_version = jwr::kVersion;
  manifest.outputs = outputs;
  manifest.duration_seconds = duration_seconds;
  jwr::write_text_file(path, jwr::manifest_to_json(manifest));
}

std::string csv_cell(double x) { return jwr::format_significant(x); }

// ---------------------------------------------------------------------------
// generate

int cmd_generate(const Cli& cli) {
  const auto start = std::chrono::steady_clock::now();
  const jwr::StrategySpec spec = load_strategy(cli.config_path);
  if (cli.n < 1) throw std::invalid_argument("--n must be >= 1");
  const jwr::Schedule schedule = jwr::materialize(spec, cli.seed, cli.n);
  jwr::write_text_file(cli.out_path, jwr::schedule_to_json(schedule));

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  nlohmann::ordered_json resolved;
  resolved["strategy"] = jwr::to_string(spec.strategy);
  resolved["config"] = jwr::config_to_json(
      spec.jwr_config ? spec.jwr_config->config()
                      : jwr::SamplingConfig{spec.mode, spec.t, 0.0, {}});
  resolved["n"] = cli.n;
  write_manifest("generate", cli, resolved, {cli.out_path}, secs,
                 cli.out_path + ".manifest.json");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// validate

int cmd_validate(const Cli& cli) {
  const auto file = jwr::strategy_config_from_json(
      nlohmann::json::parse(jwr::read_text_file(cli.config_path)));
  if (file.strategy != jwr::Strategy::jwr) {
    if (!(file.config.t > 0)) {
      std::cerr << "invalid sampling config: t must be positive\n";
      return kExitInvalidInput;
    }
    return kExitOk;
  }
  auto result = jwr::validate_config(file.config);
  if (auto* issues = std::get_if<std::vector<jwr::ValidationIssue>>(&result)) {
    std::cerr << "invalid sampling config:\n" << jwr::describe(*issues);
    return kExitInvalidInput;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// analyze

std::optional<double> alpha_if_defined(const jwr::StrategySpec& spec) {
  if (spec.strategy == jwr::Strategy::jwr && spec.mode == jwr::Mode::discrete &&
      spec.jwr_config->t_int() == 2)
    return jwr::alpha_of_config(*spec.jwr_config);
  return std::nullopt;
}

int analyze_marginal(const Cli& cli, const jwr::StrategySpec& spec,
                     std::ostringstream& csv) {
  if (cli.config_path.empty())
    throw InsufficientData(
        "marginal analysis needs --config and --trials (many independent "
        "schedules), not a single schedule file");
  if (cli.trials < 1000)
    throw InsufficientData("marginal analysis needs --trials >= 1000");
  if (spec.strategy != jwr::Strategy::jwr)
    throw std::invalid_argument("marginal analysis targets the jwr strategy");

  const std::vector<std::size_t> indices = {0, 1, 5, 50};
  const std::size_t max_index = 50;
  std::vector<std::vector<double>> collected(indices.size());
  for (auto& c : collected) c.reserve(cli.trials);

  for (std::uint64_t trial = 0; trial < cli.trials; ++trial) {
    jwr::JwrStream stream(*spec.jwr_config,
                          jwr::derive_seed(cli.seed, "marginal-trial", trial));
    std::size_t pos = 0;
    for (std::size_t i = 0; i <= max_index; ++i) {
      const double a = stream.next();
      if (pos < indices.size() && indices[pos] == i) {
        collected[pos].push_back(a - static_cast<double>(i) * spec.t);
        ++pos;
      }
    }
  }

  csv << "index,n,test,statistic,p_value\n";
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const auto test =
        jwr::marginal_uniformity_test(collected[k], *spec.jwr_config);
    csv << indices[k] << "," << test.n << ","
        << (test.kind == jwr::MarginalTest::Kind::ks ? "ks" : "chi_square")
        << "," << csv_cell(test.statistic) << "," << csv_cell(test.p_value)
        << "\n";
  }
  return kExitOk;
}

int cmd_analyze(const Cli& cli) {
  const auto start = std::chrono::steady_clock::now();

  std::optional<jwr::Schedule> schedule;
  std::optional<jwr::StrategySpec> spec;
  if (!cli.schedule_path.empty()) {
    schedule = jwr::schedule_from_json(jwr::read_text_file(cli.schedule_path));
    if (schedule->strategy == jwr::Strategy::jwr) {
      jwr::SamplingConfig cfg{schedule->mode, schedule->t, schedule->t_p,
                              schedule->jitter};
      spec = jwr::StrategySpec::for_jwr(validate_or_die(cfg));
    } else {
      spec = jwr::StrategySpec::baseline(schedule->strategy, schedule->mode,
                                         schedule->t);
    }
  } else if (!cli.config_path.empty()) {
    spec = load_strategy(cli.config_path);
  } else {
    throw std::invalid_argument("analyze needs --schedule or --config");
  }

  std::ostringstream csv;
  if (cli.which == "marginal") {
    analyze_marginal(cli, *spec, csv);
  } else if (cli.which == "autocorr") {
    if (!schedule) {
      if (cli.n < 100)
        throw InsufficientData("autocorr needs --n >= 100 * max lag");
      schedule = jwr::materialize(*spec, cli.seed, cli.n);
    }
    const auto series = jwr::offsets(*schedule);
    if (series.size() <
        static_cast<std::size_t>(100) * static_cast<std::size_t>(cli.max_lag))
      throw InsufficientData("autocorr needs series length >= 100 * max lag");
    const auto curve =
        jwr::autocorrelation_curve(series, cli.max_lag, alpha_if_defined(*spec));
    csv << "lag,empirical,theoretical,stderr\n";
    for (std::size_t i = 0; i < curve.lags.size(); ++i)
      csv << curve.lags[i] << "," << csv_cell(curve.empirical[i]) << ","
          << csv_cell(curve.theoretical[i]) << "," << csv_cell(curve.stderrs[i])
          << "\n";
  } else if (cli.which == "gaps") {
    if (!schedule) schedule = jwr::materialize(*spec, cli.seed, cli.n);
    if (schedule->timestamps.size() < 2)
      throw InsufficientData("gap analysis needs >= 2 timestamps");
    const double variance = jwr::gap_variance(*schedule);
    const auto alpha = alpha_if_defined(*spec);
    csv << "n,gap_variance,theory_alpha\n";
    csv << schedule->timestamps.size() << "," << csv_cell(variance) << ","
        << (alpha ? csv_cell(*alpha) : "nan") << "\n";
  } else if (cli.which == "spectral") {
    if (spec->strategy != jwr::Strategy::jwr)
      throw std::invalid_argument("spectral analysis targets the jwr strategy");
    const auto report = jwr::spectral_report(*spec->jwr_config, 64, 200);
    csv << "k,d_real,d_imag,d_abs\n";
    for (std::size_t k = 0; k < report.d.size(); ++k)
      csv << k << "," << csv_cell(report.d[k].real()) << ","
          << csv_cell(report.d[k].imag()) << "," << csv_cell(std::abs(report.d[k]))
          << "\n";
    // TV decay with its spectral-gap envelope goes to a sibling file. The
    // series is cut once it reaches the floating-point noise floor; fitting
    // the envelope constant past that point would chase rounding error.
    const double slem = report.slem;
    std::size_t kept = report.tv.size();
    while (kept > 10 && report.tv[kept - 1] < 1e-13) --kept;
    double c_fit = 0.0;
    for (std::size_t n = 0; n < kept; ++n) {
      const double scale = std::pow(slem, static_cast<double>(n));
      if (scale > 0.0 && report.tv[n] > 1e-13)
        c_fit = std::max(c_fit, report.tv[n] / scale);
    }
    std::ostringstream tv_csv;
    tv_csv << "n,tv,bound\n";
    for (std::size_t n = 0; n < kept; ++n)
      tv_csv << n << "," << csv_cell(report.tv[n]) << ","
             << csv_cell(c_fit * std::pow(slem, static_cast<double>(n)))
             << "\n";
    const std::string tv_path =
        cli.out_path + (cli.out_path.ends_with(".csv") ? "" : ".csv") + ".tv.csv";
    jwr::write_text_file(tv_path, tv_csv.str());
  } else {
    throw std::invalid_argument(
        "unknown --which (marginal | autocorr | gaps | spectral)");
  }

  jwr::write_text_file(cli.out_path, csv.str());
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  nlohmann::ordered_json resolved;
  resolved["which"] = cli.which;
  if (spec->jwr_config)
    resolved["config"] = jwr::config_to_json(spec->jwr_config->config());
  write_manifest("analyze", cli, resolved, {cli.out_path}, secs,
                 cli.out_path + ".manifest.json");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// attack

int cmd_attack(const Cli& cli) {
  const auto start = std::chrono::steady_clock::now();
  const jwr::StrategySpec spec = load_strategy(cli.config_path);
  if (cli.trials < 100)
    throw std::invalid_argument("--trials must be >= 100");
  if (cli.horizon < 1)
    throw std::invalid_argument("--horizon must be >= 1 interval");

  const auto attack_json =
      nlohmann::json::parse(jwr::read_text_file(cli.attack_path));

  // Horizon grid: up to 8 evenly spaced interval counts ending at --horizon.
  std::vector<std::uint64_t> interval_grid;
  const std::uint64_t max_m = cli.horizon;
  const std::uint64_t points = std::min<std::uint64_t>(8, max_m);
  for (std::uint64_t k = 1; k <= points; ++k) {
    const std::uint64_t m = max_m * k / points;
    if (interval_grid.empty() || interval_grid.back() != m)
      interval_grid.push_back(m);
  }

  std::vector<jwr::AttackSet> attacks;
  for (const std::uint64_t m : interval_grid) {
    const double horizon = static_cast<double>(m) * spec.t;
    attacks.push_back(jwr::attack_from_json(attack_json, spec.mode, horizon));
  }

  const bool with_exact = spec.mode == jwr::Mode::discrete;
  const jwr::MissCurve curve = jwr::build_miss_curve(
      spec, attacks, cli.trials, cli.seed, with_exact, cli.threads);

  std::ostringstream csv;
  csv << "strategy,horizon,measure,trials,misses,p_hat,wilson_lo,wilson_hi,"
         "exact\n";
  for (const auto& point : curve.points) {
    csv << jwr::to_string(spec.strategy) << ","
        << jwr::format_timestamp(point.horizon, spec.mode) << ","
        << csv_cell(point.measure) << "," << point.estimate.trials << ","
        << point.estimate.misses << "," << csv_cell(point.estimate.p_hat)
        << "," << csv_cell(point.estimate.wilson.lo) << ","
        << csv_cell(point.estimate.wilson.hi) << ","
        << (point.exact ? csv_cell(*point.exact) : "") << "\n";
  }
  jwr::write_text_file(cli.out_path, csv.str());

  nlohmann::ordered_json fit;
  fit["ok"] = curve.fit.ok;
  fit["slope"] = curve.fit.slope;
  fit["intercept"] = curve.fit.intercept;
  fit["r_squared"] = curve.fit.r_squared;
  fit["no_decay"] = curve.fit.no_decay;
  fit["excluded_zeros"] = curve.fit.excluded_zeros;
  if (!curve.fit.error.empty()) fit["error"] = curve.fit.error;
  const std::string fit_path = cli.out_path + ".fit.json";
  jwr::write_text_file(fit_path, fit.dump(2) + "\n");

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  nlohmann::ordered_json resolved;
  resolved["strategy"] = jwr::to_string(spec.strategy);
  resolved["attack"] = attack_json;
  resolved["trials"] = cli.trials;
  resolved["horizon_intervals"] = cli.horizon;
  write_manifest("attack", cli, resolved, {cli.out_path, fit_path}, secs,
                 cli.out_path + ".manifest.json");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepCell {
  double alpha = 0.0;
  bool ok = false;
  std::string error;
  double l_c_theory = 0.0;
  double autocorr_fit_l_c = 0.0;
  double gap_variance_empirical = 0.0;
  double miss_slope = 0.0;
};

SweepCell run_sweep_cell(double alpha, std::uint64_t steps,
                         std::uint64_t cell_seed) {
  SweepCell cell;
  cell.alpha = alpha;
  try {
    jwr::SamplingConfig cfg;
    cfg.mode = jwr::Mode::discrete;
    cfg.t = 2.0;
    cfg.t_p = 1.0;
    cfg.jitter = jwr::JitterSpec::discrete_masses(
        {{-1, alpha}, {0, 1.0 - 2.0 * alpha}, {1, alpha}});
    auto validated = jwr::validate_config(cfg);
    if (std::holds_alternative<std::vector<jwr::ValidationIssue>>(validated))
      throw std::invalid_argument(
          "alpha produces an invalid jitter: " +
          jwr::describe(std::get<std::vector<jwr::ValidationIssue>>(validated)));
    const auto& vc = std::get<jwr::ValidatedConfig>(validated);

    cell.l_c_theory = jwr::correlation_length(alpha);

    const jwr::Schedule schedule = jwr::generate_schedule(
        vc, jwr::derive_seed(cell_seed, "sweep-schedule", 0), steps);
    const auto series = jwr::offsets(schedule);
    const auto curve = jwr::autocorrelation_curve(series, 10, alpha);
    cell.autocorr_fit_l_c = jwr::fitted_correlation_length(curve);
    cell.gap_variance_empirical = jwr::gap_variance(schedule);

    std::vector<double> measures, misses;
    for (std::uint64_t m = 5; m <= 40; m += 5) {
      const auto attack = jwr::AttackSet::periodic(
          jwr::Mode::discrete, 2.0, 0.0, 1.0, static_cast<double>(2 * m));
      measures.push_back(attack.measure());
      misses.push_back(jwr::exact_miss_dp(vc, attack));
    }
    const auto fit = jwr::fit_exponential(measures, misses);
    if (!fit.ok) throw std::invalid_argument("miss fit failed: " + fit.error);
    cell.miss_slope = fit.slope;
    cell.ok = true;
  } catch (const std::exception& e) {
    cell.error = e.what();
  }
  return cell;
}

int cmd_sweep(const Cli& cli) {
  const auto start = std::chrono::steady_clock::now();
  const auto grid =
      nlohmann::json::parse(jwr::read_text_file(cli.grid_path));
  if (!grid.contains("alpha") || !grid.at("alpha").is_array() ||
      grid.at("alpha").empty())
    throw std::invalid_argument("sweep grid needs a nonempty \"alpha\" array");
  const auto alphas = grid.at("alpha").get<std::vector<double>>();
  const auto steps = grid.value("steps", std::uint64_t{1000000});

  std::filesystem::create_directories(cli.out_dir);

  std::ostringstream csv;
  csv << "alpha,l_c_theory,autocorr_fit_l_c,gap_variance_empirical,"
         "miss_slope\n";
  std::size_t succeeded = 0;
  std::vector<std::string> outputs;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const std::string cell_path = cli.out_dir + "/cell_" +
                                  jwr::format_significant(alphas[i], 6) +
                                  ".json";
    SweepCell cell;
    bool reused = false;
    if (std::filesystem::exists(cell_path)) {
      // Cells are independent and resumable: a finished cell is reused.
      try {
        const auto j = nlohmann::json::parse(jwr::read_text_file(cell_path));
        cell.alpha = j.at("alpha").get<double>();
        cell.ok = j.at("ok").get<bool>();
        cell.error = j.value("error", std::string());
        cell.l_c_theory = j.value("l_c_theory", 0.0);
        cell.autocorr_fit_l_c = j.value("autocorr_fit_l_c", 0.0);
        cell.gap_variance_empirical = j.value("gap_variance_empirical", 0.0);
        cell.miss_slope = j.value("miss_slope", 0.0);
        reused = true;
      } catch (const std::exception&) {
        reused = false;
      }
    }
    if (!reused)
      cell = run_sweep_cell(alphas[i], steps,
                            jwr::derive_seed(cli.seed, "sweep-cell", i));

    nlohmann::ordered_json j;
    j["alpha"] = cell.alpha;
    j["ok"] = cell.ok;
    if (!cell.error.empty()) j["error"] = cell.error;
    j["l_c_theory"] = cell.l_c_theory;
    j["autocorr_fit_l_c"] = cell.autocorr_fit_l_c;
    j["gap_variance_empirical"] = cell.gap_variance_empirical;
    j["miss_slope"] = cell.miss_slope;
    jwr::write_text_file(cell_path, j.dump(2) + "\n");
    outputs.push_back(cell_path);

    if (cell.ok) {
      ++succeeded;
      csv << csv_cell(cell.alpha) << "," << csv_cell(cell.l_c_theory) << ","
          << csv_cell(cell.autocorr_fit_l_c) << ","
          << csv_cell(cell.gap_variance_empirical) << ","
          << csv_cell(cell.miss_slope) << "\n";
    } else {
      std::cerr << "sweep cell alpha=" << alphas[i]
                << " failed: " << cell.error << "\n";
    }
  }

  const std::string aggregate_path = cli.out_dir + "/sweep.csv";
  jwr::write_text_file(aggregate_path, csv.str());
  outputs.push_back(aggregate_path);

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  nlohmann::ordered_json resolved;
  resolved["alpha"] = alphas;
  resolved["steps"] = steps;
  write_manifest("sweep", cli, resolved, outputs, secs,
                 cli.out_dir + "/manifest.json");
  if (succeeded == 0) {
    std::cerr << "all sweep cells failed\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarially robust frame sampling: jittering with "
               "reflection, baselines, analysis, attack experiments"};
  app.set_version_flag("--version", jwr::kVersion);
  app.require_subcommand(1);

  Cli cli;
  cli.argv.assign(argv, argv + argc);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", cli.seed, "Master seed (64-bit)");
    cmd->add_option("--format", cli.format, "Output format (json|csv)");
  };

  auto* generate = app.add_subcommand("generate", "Sample a schedule");
  generate->add_option("--config", cli.config_path, "Strategy config JSON")
      ->required();
  generate->add_option("--n", cli.n, "Number of timestamps")->required();
  generate->add_option("--out", cli.out_path, "Output schedule path")
      ->required();
  add_common(generate);

  auto* validate = app.add_subcommand("validate", "Validate a config");
  validate->add_option("--config", cli.config_path, "Strategy config JSON")
      ->required();

  auto* analyze = app.add_subcommand("analyze", "Statistical reports");
  analyze->add_option("--config", cli.config_path, "Strategy config JSON");
  analyze->add_option("--schedule", cli.schedule_path, "Schedule JSON file");
  analyze->add_option("--which", cli.which,
                      "marginal | autocorr | gaps | spectral")
      ->required();
  analyze->add_option("--out", cli.out_path, "Output CSV path")->required();
  analyze->add_option("--n", cli.n, "Schedule length when generating");
  analyze->add_option("--trials", cli.trials,
                      "Independent schedules (marginal analysis)");
  analyze->add_option("--max-lag", cli.max_lag, "Autocorrelation max lag");
  add_common(analyze);

  auto* attack = app.add_subcommand("attack", "Miss-probability experiments");
  attack->add_option("--config", cli.config_path, "Strategy config JSON")
      ->required();
  attack->add_option("--attack", cli.attack_path, "Attack spec JSON")
      ->required();
  attack->add_option("--trials", cli.trials, "Monte Carlo trials per point");
  attack->add_option("--horizon", cli.horizon,
                     "Max horizon in multiples of t");
  attack->add_option("--threads", cli.threads, "Worker threads");
  attack->add_option("--out", cli.out_path, "Output CSV path")->required();
  add_common(attack);

  auto* sweep = app.add_subcommand("sweep", "Alpha-grid experiment sweep");
  sweep->add_option("--grid", cli.grid_path, "Grid JSON file")->required();
  sweep->add_option("--out-dir", cli.out_dir, "Output directory")->required();
  add_common(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (generate->parsed()) return cmd_generate(cli);
    if (validate->parsed()) return cmd_validate(cli);
    if (analyze->parsed()) return cmd_analyze(cli);
    if (attack->parsed()) return cmd_attack(cli);
    if (sweep->parsed()) return cmd_sweep(cli);
  } catch (const InsufficientData& e) {
    std::cerr << "insufficient data: " << e.what() << "\n";
    return kExitInsufficientData;
  } catch (const jwr::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
