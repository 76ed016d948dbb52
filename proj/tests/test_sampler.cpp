#include <doctest.h>

#include <variant>
#include <vector>

#include "jwr/sampler.hpp"
#include "jwr/stats.hpp"

using jwr::JitterSpec;
using jwr::Mode;
using jwr::SamplingConfig;
using jwr::ValidatedConfig;

namespace {

ValidatedConfig valid(const SamplingConfig& cfg) {
  auto result = jwr::validate_config(cfg);
  REQUIRE(std::holds_alternative<ValidatedConfig>(result));
  return std::get<ValidatedConfig>(result);
}

ValidatedConfig continuous_uniform(double t, double t_p) {
  return valid({Mode::continuous, t, t_p, JitterSpec::uniform_jitter()});
}

ValidatedConfig discrete_uniform(double t, double t_p) {
  return valid({Mode::discrete, t, t_p, JitterSpec::uniform_jitter()});
}

}  // namespace

TEST_CASE("continuous reflection hand traces") {
  // Upper overshoot in interval 1 of width 1: 2*2*1 - 2.03 = 1.97.
  CHECK(jwr::reflect(2.03, 1, 1.0) == doctest::Approx(1.97).epsilon(1e-12));
  // In-range passthrough.
  CHECK(jwr::reflect(1.5, 1, 1.0) == 1.5);
  // Lower overshoot: 2*1*1 - 0.97 = 1.03.
  CHECK(jwr::reflect(0.97, 1, 1.0) == doctest::Approx(1.03).epsilon(1e-12));
  // Boundary ties pass through untouched.
  CHECK(jwr::reflect(1.0, 1, 1.0) == 1.0);
  CHECK(jwr::reflect(2.0, 1, 1.0) == 2.0);
}

TEST_CASE("discrete reflection hand traces") {
  // Upper: 2*2*10 - 22 - 1 = 17.
  CHECK(jwr::reflect(std::int64_t{22}, 1, std::int64_t{10}) == 17);
  // Lower: 2*1*10 - 7 - 1 = 12.
  CHECK(jwr::reflect(std::int64_t{7}, 1, std::int64_t{10}) == 12);
  // In range.
  CHECK(jwr::reflect(std::int64_t{15}, 1, std::int64_t{10}) == 15);
  // The upper boundary itself reflects: b = (i+1)t maps to (i+1)t - 1.
  CHECK(jwr::reflect(std::int64_t{20}, 1, std::int64_t{10}) == 19);
}

TEST_CASE("exhaustive discrete reflection closure for t <= 12") {
  for (std::int64_t t = 2; t <= 12; ++t) {
    for (std::int64_t t_p = 1; t_p < t; ++t_p) {
      for (std::int64_t b = 0; b < t; ++b) {
        for (std::int64_t v = -t_p; v <= t_p; ++v) {
          const std::int64_t nb = jwr::reflect_offset(b + v, t);
          CHECK(nb >= 0);
          CHECK(nb < t);
        }
      }
    }
  }
}

TEST_CASE("init_sampler is deterministic and in range") {
  const auto cfg = discrete_uniform(10, 3);
  const auto a = jwr::init_sampler(cfg, 77);
  const auto b = jwr::init_sampler(cfg, 77);
  CHECK(a == b);
  CHECK(a.index == 0);
  CHECK(a.offset >= 0.0);
  CHECK(a.offset <= 9.0);

  const auto c = jwr::init_sampler(cfg, 78);
  CHECK(a.rng != c.rng);  // different seeds, different stream state
}

TEST_CASE("initial offset is uniform on [0, t) under KS at 0.01") {
  const auto cfg = continuous_uniform(1.0, 0.1);
  std::vector<double> draws;
  draws.reserve(100000);
  for (std::uint64_t seed = 0; seed < 100000; ++seed)
    draws.push_back(jwr::init_sampler(cfg, jwr::derive_seed(9, "a0", seed)).offset);
  const auto ks = jwr::ks_uniform_test(draws, 0.0, 1.0);
  CHECK(ks.p_value > 0.01);
}

TEST_CASE("next_sample composes jitter draw and reflection") {
  const auto check_composition = [](const ValidatedConfig& cfg) {
    auto state = jwr::init_sampler(cfg, 4242);
    for (int i = 0; i < 200; ++i) {
      auto rng_probe = state.rng;
      double expected_offset;
      if (cfg.mode() == Mode::discrete) {
        const auto v = jwr::draw_jitter_int(cfg, rng_probe);
        expected_offset = static_cast<double>(jwr::reflect_offset(
            static_cast<std::int64_t>(state.offset) + v, cfg.t_int()));
      } else {
        const double v = jwr::draw_jitter(cfg, rng_probe);
        expected_offset = jwr::reflect_offset(state.offset + v, cfg.t());
      }
      const auto step = jwr::next_sample(cfg, state);
      CHECK(step.state.index == state.index + 1);
      CHECK(step.state.offset == expected_offset);
      CHECK(step.timestamp ==
            expected_offset + static_cast<double>(step.state.index) * cfg.t());
      state = step.state;
    }
  };
  check_composition(continuous_uniform(1.0, 0.1));
  check_composition(discrete_uniform(10, 3));
}

TEST_CASE("offsets stay in range over a million steps") {
  {
    const auto cfg = continuous_uniform(1.0, 0.37);
    auto state = jwr::init_sampler(cfg, 1);
    for (int i = 0; i < 1000000; ++i) {
      state = jwr::next_sample(cfg, state).state;
      REQUIRE(state.offset >= 0.0);
      REQUIRE(state.offset <= 1.0);
    }
  }
  {
    const auto cfg = discrete_uniform(5, 4);
    auto state = jwr::init_sampler(cfg, 2);
    for (int i = 0; i < 1000000; ++i) {
      state = jwr::next_sample(cfg, state).state;
      REQUIRE(state.offset >= 0.0);
      REQUIRE(state.offset <= 4.0);
    }
  }
}

TEST_CASE("the walk is Markov in (index, offset, rng): equal states share futures") {
  const auto cfg = discrete_uniform(10, 3);
  auto state = jwr::init_sampler(cfg, 5);
  for (int i = 0; i < 17; ++i) state = jwr::next_sample(cfg, state).state;

  auto fork = state;  // value copy of the complete state
  std::vector<double> a, b;
  auto sa = state, sb = fork;
  for (int i = 0; i < 100; ++i) {
    auto ra = jwr::next_sample(cfg, sa);
    auto rb = jwr::next_sample(cfg, sb);
    sa = ra.state;
    sb = rb.state;
    a.push_back(ra.timestamp);
    b.push_back(rb.timestamp);
  }
  CHECK(a == b);
}

TEST_CASE("explicit discrete jitter draws follow the requested masses") {
  const auto cfg = valid({Mode::discrete, 2.0, 1.0,
                          JitterSpec::discrete_masses(
                              {{-1, 0.25}, {0, 0.5}, {1, 0.25}})});
  jwr::SplitMix64 rng(99);
  int counts[3] = {0, 0, 0};
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) ++counts[jwr::draw_jitter_int(cfg, rng) + 1];
  CHECK(counts[0] == doctest::Approx(draws * 0.25).epsilon(0.03));
  CHECK(counts[1] == doctest::Approx(draws * 0.50).epsilon(0.03));
  CHECK(counts[2] == doctest::Approx(draws * 0.25).epsilon(0.03));
}

TEST_CASE("piecewise continuous jitter draws stay in support and are symmetric") {
  const auto cfg = valid({Mode::continuous, 1.0, 0.2,
                          JitterSpec::piecewise_density({{-0.2, -0.1, 3.0},
                                                         {-0.1, 0.1, 2.0},
                                                         {0.1, 0.2, 3.0}})});
  jwr::SplitMix64 rng(3);
  int negative = 0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const double v = jwr::draw_jitter(cfg, rng);
    REQUIRE(v >= -0.2);
    REQUIRE(v <= 0.2);
    if (v < 0) ++negative;
  }
  CHECK(negative == doctest::Approx(draws / 2.0).epsilon(0.02));
}
