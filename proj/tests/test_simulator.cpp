#include "mcrx/channel_models.hpp"
#include "mcrx/simulator.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

using namespace mcrx;
using mcrx::testing::rel;
using mcrx::testing::system1;
using mcrx::testing::system2;

namespace {

SimConfig sim(SystemConfig system, RxModel model, double step, std::uint64_t seed = 7)
{
    return SimConfig{system, model, seed, step, StepMode::Adaptive};
}

std::size_t index_of(const SystemConfig& s, double t)
{
    return static_cast<std::size_t>(std::llround(t / s.sampling_period)) - 1;
}

} // namespace

TEST_SUITE("simulator") {

TEST_CASE("diffusion step statistics")
{
    auto cfg = sim(system1(), RxModel::Passive, 20e-6);
    cfg.system.diff_coef = 0.0;
    ParticleState still(Dimension::Three, 10);
    Rng rng(1);
    diffuse_step(still, cfg, rng);
    for (double c : still.coords) CHECK(c == 0.0);

    cfg.system.diff_coef = 1e-9;
    const std::size_t n = 1'000'000;
    ParticleState state(Dimension::One, n);
    diffuse_step(state, cfg, rng);
    const double mean = std::accumulate(state.coords.begin(), state.coords.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double x : state.coords) var += (x - mean) * (x - mean);
    var /= static_cast<double>(n - 1);
    const double expected = 2.0 * 1e-9 * 20e-6;
    CHECK(rel(var, expected) < 0.01);
    CHECK(std::abs(mean) < 3.0 * std::sqrt(expected / static_cast<double>(n)));

    ParticleState partly(Dimension::Three, 2);
    partly.alive[1] = 0;
    partly.absorbed = 1;
    diffuse_step(partly, cfg, rng);
    CHECK(partly.coords[0] != 0.0);
    CHECK(partly.coords[3] == 0.0);
    CHECK(partly.coords[5] == 0.0);
}

TEST_CASE("passive counting")
{
    // Unit-scaled geometry keeps boundary points exactly representable.
    SystemConfig unit{Dimension::Three, 4, 1.0, 5.0, 1.0, 1.0, 1, 1};
    const auto cfg = sim(unit, RxModel::Passive, 1.0);
    ParticleState state(Dimension::Three, 4);
    CHECK(count_passive(state, cfg) == 0);
    state.coords[0] = 6.0;  // on the sphere
    state.coords[3] = 5.0;
    state.coords[4] = 1.0;  // on the sphere, off axis
    state.coords[6] = 6.0001;
    CHECK(count_passive(state, cfg) == 2);

    unit.dimension = Dimension::One;
    const auto one_d = sim(unit, RxModel::Passive, 1.0);
    ParticleState line(Dimension::One, 3);
    line.coords = {4.0, 6.0, 6.1};
    CHECK(count_passive(line, one_d) == 2);
}

TEST_CASE("segment test")
{
    const SystemConfig s1{Dimension::Three, 1, 1.0, 5.0, 1.0, 1.0, 1, 1};
    const std::vector<double> before{3, 0, 0}, after{7, 0, 0};
    CHECK(segment_hits_receiver(before, after, s1));
    const std::vector<double> miss0{3, 1.1, 0}, miss1{7, 1.1, 0};
    CHECK_FALSE(segment_hits_receiver(miss0, miss1, s1));
    const std::vector<double> graze0{3, 1, 0}, graze1{7, 1, 0};
    CHECK(segment_hits_receiver(graze0, graze1, s1));
    const std::vector<double> short0{1, 0, 0}, short1{3.9, 0, 0};
    CHECK_FALSE(segment_hits_receiver(short0, short1, s1));
    const std::vector<double> touch{4, 0, 0};
    CHECK(segment_hits_receiver(short0, touch, s1));
    const std::vector<double> away0{7, 0, 0}, away1{9, 0, 0};
    CHECK_FALSE(segment_hits_receiver(away0, away1, s1));
    const std::vector<double> in{5, 0, 0};
    CHECK(segment_hits_receiver(in, away1, s1));

    auto s2 = s1;
    s2.dimension = Dimension::One;
    const std::vector<double> a{3}, b{7}, c{3.9}, e{4};
    CHECK(segment_hits_receiver(a, b, s2));
    CHECK_FALSE(segment_hits_receiver(a, c, s2));
    CHECK(segment_hits_receiver(a, e, s2));
    CHECK_THROWS_AS(segment_hits_receiver(a, b, s1), std::invalid_argument);
}

TEST_CASE("absorb_crossing marks and tallies")
{
    const auto cfg = sim(system1(), RxModel::Absorbing, 2e-6);
    ParticleState state(Dimension::Three, 3);
    const std::vector<double> prev{3e-6, 0, 0, 3e-6, 2e-6, 0, 0, 0, 0};
    state.coords = {7e-6, 0, 0, 7e-6, 2e-6, 0, 0, 0, 0};
    CHECK(absorb_crossing(prev, state, cfg) == 1);
    CHECK(state.alive[0] == 0);
    CHECK(state.live_count() == 2);
    // A dead molecule is never counted twice.
    CHECK(absorb_crossing(prev, state, cfg) == 0);
    CHECK(state.absorbed == 1);
}

TEST_CASE("fine stepping conserves molecules")
{
    auto cfg = sim(system1(), RxModel::Absorbing, 2e-6);
    cfg.system.n_released = 300;
    ParticleState state(Dimension::Three, 300);
    // Start near the receiver so that absorption happens quickly.
    for (std::size_t i = 0; i < state.size(); ++i) state.coords[3 * i] = 3.5e-6;
    Rng rng(99);
    std::uint64_t prev_absorbed = 0;
    for (int step = 0; step < 2000; ++step) {
        const std::vector<double> prev = state.coords;
        diffuse_step(state, cfg, rng);
        absorb_crossing(prev, state, cfg);
        const auto alive = static_cast<std::uint64_t>(std::count(state.alive.begin(), state.alive.end(), 1));
        REQUIRE(alive + state.absorbed == 300);
        REQUIRE(state.absorbed >= prev_absorbed);
        prev_absorbed = state.absorbed;
    }
    CHECK(state.absorbed > 0);
}

TEST_CASE("realizations are deterministic and well-formed")
{
    auto cfg = sim(system1(), RxModel::Absorbing, 2e-6);
    cfg.system.n_released = 500;
    cfg.system.sample_count = 300;
    const auto a = run_realization(cfg, 42);
    const auto b = run_realization(cfg, 42);
    CHECK(a == b);
    CHECK(a.size() == 300);
    CHECK(std::is_sorted(a.begin(), a.end()));
    CHECK(a.back() <= 500);
    CHECK(run_realization(cfg, 43) != a);

    cfg.stepping = StepMode::Fine;
    cfg.system.n_released = 50;
    const auto f = run_realization(cfg, 5);
    CHECK(f == run_realization(cfg, 5));
    CHECK(std::is_sorted(f.begin(), f.end()));

    auto passive = sim(system2(), RxModel::Passive, 1e-3);
    const auto p = run_realization(passive, 9);
    CHECK(p.size() == 62);
    for (auto c : p) CHECK(c <= 1000);
}

TEST_CASE("config validation")
{
    auto cfg = sim(system1(), RxModel::Passive, 15e-6);
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.sim_time_step = 80e-6;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.sim_time_step = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.sim_time_step = 40e-6;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.steps_per_sample() == 1);
    cfg.sim_time_step = 2e-6;
    CHECK(cfg.steps_per_sample() == 20);
}

TEST_CASE("seed mixing")
{
    CHECK(splitmix64(0) == 0);
    CHECK(realization_seed(1, 0) != realization_seed(1, 1));
    CHECK(realization_seed(1, 0) != realization_seed(2, 0));
    CHECK(realization_seed(5, 3) == splitmix64(5 + 4 * 0x9E3779B97F4A7C15ULL));
}

TEST_CASE("single realization ensemble")
{
    auto cfg = sim(system2(), RxModel::Passive, 1e-3, 11);
    cfg.system.realizations = 1;
    const auto res = run_ensemble(cfg, 1);
    const auto one = run_realization(cfg, realization_seed(11, 0));
    REQUIRE(res.mean_counts.size() == one.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(res.mean_counts[i] == static_cast<double>(one[i]));
        CHECK(res.variance[i] == 0.0);
    }
    CHECK(res.realization_count == 1);
    CHECK(res.sample_times.front() == doctest::Approx(2e-3));
}

TEST_CASE("thread count does not change results")
{
    auto cfg = sim(system1(), RxModel::Absorbing, 2e-6, 3);
    cfg.system.n_released = 200;
    cfg.system.sample_count = 200;
    cfg.system.realizations = 7;
    const auto a = run_ensemble(cfg, 1);
    const auto b = run_ensemble(cfg, 3);
    CHECK(a.mean_counts == b.mean_counts);
    CHECK(a.variance == b.variance);
}

TEST_CASE("fine and adaptive stepping agree")
{
    for (auto model : {RxModel::Absorbing, RxModel::Passive}) {
        auto cfg = sim(system1(), model, model == RxModel::Absorbing ? 2e-6 : 20e-6, 17);
        cfg.system.n_released = 200;
        cfg.system.sample_count = 250; // 10 ms
        cfg.system.realizations = 100;
        cfg.stepping = StepMode::Fine;
        const auto fine = run_ensemble(cfg);
        cfg.stepping = StepMode::Adaptive;
        cfg.seed = 18;
        const auto fast = run_ensemble(cfg);
        const std::size_t m = model == RxModel::Absorbing ? 249 : index_of(cfg.system, 4.2e-3);
        const double se = std::hypot(fine.ci_halfwidth[m], fast.ci_halfwidth[m]) / 1.96;
        CHECK(std::abs(fine.mean_counts[m] - fast.mean_counts[m]) < 4.0 * se);
    }
}

TEST_CASE("passive ensemble matches the analytical CIR at the peak")
{
    auto cfg = sim(system1(), RxModel::Passive, 20e-6, 2024);
    cfg.system.sample_count = 110;
    cfg.system.realizations = 1000;
    const auto res = run_ensemble(cfg);
    const std::size_t m = index_of(cfg.system, 4.2e-3);
    CHECK(rel(res.mean_counts[m], cir_passive_3d(cfg.system, res.sample_times[m])) < 0.05);
}

TEST_CASE("absorbing ensemble at reduced N")
{
    auto cfg = sim(system1(), RxModel::Absorbing, 2e-6, 77);
    cfg.system.n_released = 1000;
    cfg.system.realizations = 200;
    const auto res = run_ensemble(cfg);
    const double expected = cir_absorbing_3d(cfg.system, res.sample_times.back());
    CHECK(rel(res.mean_counts.back(), expected) < 0.05);
    CHECK(std::is_sorted(res.mean_counts.begin(), res.mean_counts.end()));
}

TEST_CASE("coarse absorbing steps underestimate")
{
    auto cfg = sim(system1(), RxModel::Absorbing, 20e-6, 5);
    cfg.system.n_released = 1000;
    cfg.system.sample_count = 250;
    cfg.system.realizations = 200;
    const auto res = run_ensemble(cfg);
    for (std::size_t m = 0; m < 5; ++m)
        CHECK(res.mean_counts[m] <= cir_absorbing_3d(cfg.system, res.sample_times[m]));
    const std::size_t late = index_of(cfg.system, 0.01);
    CHECK(res.mean_counts[late] + res.ci_halfwidth[late] < cir_absorbing_3d(cfg.system, res.sample_times[late]));
}

TEST_CASE("confidence half-width scales as 1/sqrt(R)")
{
    auto cfg = sim(system2(), RxModel::Passive, 1e-3, 8);
    cfg.system.realizations = 100;
    const auto small = run_ensemble(cfg);
    cfg.system.realizations = 10000;
    const auto large = run_ensemble(cfg);
    double ci_small = 0.0, ci_large = 0.0;
    for (std::size_t m = 5; m < small.ci_halfwidth.size(); ++m) {
        ci_small += small.ci_halfwidth[m];
        ci_large += large.ci_halfwidth[m];
    }
    CHECK(rel(ci_small / ci_large, 10.0) < 0.2);
}

TEST_CASE("ensemble conversions")
{
    auto cfg = sim(system2(), RxModel::Passive, 1e-3, 1);
    cfg.system.realizations = 3;
    const auto res = run_ensemble(cfg);
    const auto obs = to_observation(res);
    CHECK(obs.counts == res.mean_counts);
    CHECK(obs.sampling_period == 2e-3);
    CHECK(obs.dimension == Dimension::One);
    const auto series = to_series(res);
    CHECK(series.kind().family == SignalFamily::PassiveCir);
    CHECK(series.kind().provenance == Provenance::Simulated);
    CHECK(series.size() == 62);
}

}
