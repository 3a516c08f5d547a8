#include <benchmark/benchmark.h>

#include <filesystem>

#include "irrsim/draw.hpp"
#include "irrsim/fitting.hpp"
#include "irrsim/io.hpp"
#include "irrsim/montecarlo.hpp"
#include "irrsim/scoreline_model.hpp"

using namespace irrsim;

namespace {

const std::filesystem::path kData = IRRSIM_DATA_DIR;

ModelParams league_params(const std::vector<TeamRecord>& teams) {
    const auto s = league_phase_elo_scale(teams);
    return {0.242, 0.286, 0.301, 0.105, s.mean, s.sd};
}

void BM_ScorelineMatrix(benchmark::State& state) {
    const GoalRates r{1.72, 1.27};
    const int max_goals = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(scoreline_matrix(r, 0.105, max_goals));
}
BENCHMARK(BM_ScorelineMatrix)->Arg(10)->Arg(20);

void BM_SampleScoreline(benchmark::State& state) {
    const ScorelineSampler sampler(scoreline_matrix({1.72, 1.27}, 0.105));
    Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(sampler(rng));
}
BENCHMARK(BM_SampleScoreline);

void BM_GenerateSchedule(benchmark::State& state) {
    Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(generate_index_fixtures(rng));
}
BENCHMARK(BM_GenerateSchedule);

void BM_SimulateRun(benchmark::State& state) {
    const auto teams = io::parse_teams_csv(kData / "ucl2024_teams.csv");
    const LeagueModel model(teams, league_params(teams), kDefaultMaxGoals);
    const auto fixtures = to_index_fixtures(model, io::parse_schedule_csv(kData / "ucl2024_schedule.csv"));
    Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(simulate_run(model, fixtures, rng, {}));
}
BENCHMARK(BM_SimulateRun);

void BM_ThresholdCurve(benchmark::State& state) {
    const auto teams = io::parse_teams_csv(kData / "ucl2024_teams.csv");
    const RandomSchedules src{PotAssignment::from_teams(teams)};
    SimConfig cfg;
    cfg.n_runs = state.range(0);
    cfg.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(threshold_curve(teams, src, league_params(teams), cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ThresholdCurve)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_LogLikelihood(benchmark::State& state) {
    const auto matches = io::parse_matches_csv(kData / "ucl2024_matches.csv");
    const auto s = pooled_elo_scale(matches);
    const ModelParams p{0.244, 0.285, 0.297, 0.102, s.mean, s.sd};
    for (auto _ : state) benchmark::DoNotOptimize(log_likelihood(p, matches));
}
BENCHMARK(BM_LogLikelihood);

void BM_FitDixonColes(benchmark::State& state) {
    const auto matches = io::parse_matches_csv(kData / "ucl2024_matches.csv");
    for (auto _ : state) benchmark::DoNotOptimize(fit(matches, ModelKind::DixonColes));
}
BENCHMARK(BM_FitDixonColes)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
