#include <benchmark/benchmark.h>

#include "ammgreeks/mc_oracle.hpp"
#include "ammgreeks/replication.hpp"

using namespace ammgreeks;

namespace {

Scenario scenario() {
    Scenario s;
    s.lp.position = pool_from_deposit(10000.0, 1000.0);
    s.lp.market = MarketParams::from_rf(0.03, 0.7, 0.10);
    s.lp.s_t = 1000.0;
    s.lp.t = 0.25;
    s.lp.maturity_T = 0.5;
    s.lp.locked = true;
    s.ig = IgContract{10000.0, 1000.0, 0.25 + 7.0 / 365.0, 0.25};
    return s;
}

McConfig config(int workers) {
    McConfig c;
    c.n_paths = 1 << 18;
    c.seed = 42;
    c.workers = workers;
    return c;
}

void BM_McSerial(benchmark::State& state) {
    const auto s = scenario();
    const auto cfg = config(1);
    for (auto _ : state) benchmark::DoNotOptimize(mc_price_serial({PayoffKind::ig}, s, cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.n_paths));
}

void BM_McOmp(benchmark::State& state) {
    const auto s = scenario();
    const auto cfg = config(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(mc_price({PayoffKind::ig}, s, cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.n_paths));
}

void BM_StripSerial(benchmark::State& state) {
    const auto s = scenario();
    const auto grid = build_strike_grid(1000.0, 0.7, s.ig->tau(), 1e-8);
    for (auto _ : state) benchmark::DoNotOptimize(price_ig_via_strip_serial(*s.ig, 1000.0, s.market(), grid));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}

void BM_StripOmp(benchmark::State& state) {
    const auto s = scenario();
    const auto grid = build_strike_grid(1000.0, 0.7, s.ig->tau(), 1e-8);
    const int workers = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(price_ig_via_strip(*s.ig, 1000.0, s.market(), grid, workers));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}

void BM_BuildGrid(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_strike_grid(1000.0, 0.7, 7.0 / 365.0, 1e-6));
}

}  // namespace

BENCHMARK(BM_McSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_McOmp)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StripSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_StripOmp)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BuildGrid)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
