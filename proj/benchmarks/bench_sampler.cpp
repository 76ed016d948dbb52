#include <benchmark/benchmark.h>

#include <variant>

#include "jwr/adversary.hpp"
#include "jwr/analysis.hpp"
#include "jwr/sampler.hpp"

namespace {

jwr::ValidatedConfig make_config(jwr::Mode mode, double t, double t_p) {
  jwr::SamplingConfig cfg;
  cfg.mode = mode;
  cfg.t = t;
  cfg.t_p = t_p;
  auto result = jwr::validate_config(cfg);
  return std::get<jwr::ValidatedConfig>(std::move(result));
}

void BM_ContinuousStep(benchmark::State& state) {
  const auto cfg = make_config(jwr::Mode::continuous, 1.0, 0.1);
  auto s = jwr::init_sampler(cfg, 42);
  for (auto _ : state) {
    auto step = jwr::next_sample(cfg, s);
    s = step.state;
    benchmark::DoNotOptimize(step.timestamp);
  }
}
BENCHMARK(BM_ContinuousStep);

void BM_DiscreteStep(benchmark::State& state) {
  const auto cfg = make_config(jwr::Mode::discrete, 10.0, 3.0);
  auto s = jwr::init_sampler(cfg, 42);
  for (auto _ : state) {
    auto step = jwr::next_sample(cfg, s);
    s = step.state;
    benchmark::DoNotOptimize(step.timestamp);
  }
}
BENCHMARK(BM_DiscreteStep);

void BM_ExactMissDp(benchmark::State& state) {
  const auto cfg = make_config(jwr::Mode::discrete, 2.0, 1.0);
  const auto attack = jwr::AttackSet::periodic(
      jwr::Mode::discrete, 2.0, 0.0, 1.0, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(jwr::exact_miss_dp(cfg, attack));
  }
}
BENCHMARK(BM_ExactMissDp)->Arg(80)->Arg(800);

void BM_TransitionMatrix(benchmark::State& state) {
  const auto cfg = make_config(jwr::Mode::discrete,
                               static_cast<double>(state.range(0)), 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(jwr::TransitionMatrix::exact(cfg).slem());
  }
}
BENCHMARK(BM_TransitionMatrix)->Arg(12)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
