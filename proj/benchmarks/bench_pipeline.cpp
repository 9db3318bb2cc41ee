#include <benchmark/benchmark.h>

#include <random>

#include "wattribute/aggregation/design.hpp"
#include "wattribute/aggregation/intervals.hpp"
#include "wattribute/analysis/spearman.hpp"
#include "wattribute/estimator/lasso.hpp"
#include "wattribute/simkit/generator.hpp"

using namespace wattribute;

namespace {

simkit::ScenarioSpec busy_node(double duration_s, int processes) {
    simkit::ScenarioSpec s;
    s.duration_s = duration_s;
    s.noise_std_w = 1.0;
    s.coefficients = {{"cpu_time_ns", 2e-8}, {"ctx_switches", 1e-3}, {"disk_write_bytes", 5e-8}};
    for (int p = 0; p < processes; ++p) {
        simkit::ProcessSpec proc;
        proc.name = "w" + std::to_string(p);
        proc.pid = 1000 + p;
        double t = 0.0;
        for (int k = 0; t < duration_s; ++k) {
            const double len = 5.0 + (p + k) % 7;
            const double rate = 1e8 * (1 + (p * 3 + k) % 9);
            proc.phases.push_back({k % 2 ? simkit::PhaseKind::idle : simkit::PhaseKind::compute, len,
                                   {{"cpu_time_ns", rate}, {"ctx_switches", rate * 1e-6}, {"disk_write_bytes", rate * 0.01}}});
            t += len;
        }
        s.processes.push_back(std::move(proc));
    }
    return s;
}

void BM_BuildIntervals(benchmark::State& state) {
    const auto sim = simkit::generate(busy_node(static_cast<double>(state.range(0)), 16));
    const auto schema = aggregation::FeatureSchema::infer(sim.events);
    for (auto _ : state) {
        auto set = aggregation::build_intervals(sim.events, std::chrono::seconds(1), schema);
        benchmark::DoNotOptimize(set.intervals.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(sim.events.size()));
}
BENCHMARK(BM_BuildIntervals)->Arg(600)->Arg(3600);

void BM_SolveLasso(benchmark::State& state) {
    const auto T = state.range(0);
    const auto p = state.range(1);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n01(0.0, 1.0);
    Eigen::MatrixXd Z(T, p);
    Eigen::VectorXd y(T);
    for (Eigen::Index t = 0; t < T; ++t) {
        for (Eigen::Index j = 0; j < p; ++j) Z(t, j) = std::abs(n01(rng)) * (1.0 + static_cast<double>(j));
        y(t) = 50.0 + Z.row(t).sum() + n01(rng);
    }
    const double l1 = 1e-3 * estimator::lambda1_max(Z, y, 1.0);
    for (auto _ : state) {
        auto sol = estimator::solve_lasso(Z, y, l1, 1.0);
        benchmark::DoNotOptimize(sol.w.data());
    }
}
BENCHMARK(BM_SolveLasso)->Args({600, 4})->Args({3600, 8})->Args({3600, 32});

void BM_Spearman(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> u(0, 100);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = u(rng);
        y[i] = x[i] + u(rng);
    }
    for (auto _ : state) benchmark::DoNotOptimize(analysis::spearman(x, y));
}
BENCHMARK(BM_Spearman)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
