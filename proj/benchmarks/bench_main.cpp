#include "benchmark/benchmark.h"

#include "upsim/event_queue.hpp"
#include "upsim/phy.hpp"
#include "upsim/rng.hpp"
#include "upsim/scenario.hpp"

#include <vector>

using namespace upsim;

static void BM_EventQueueChurn(benchmark::State& state) {
    const int live = static_cast<int>(state.range(0));
    for (auto _ : state) {
        EventQueue q;
        RngStream rng(1, "bench.queue");
        std::vector<EventHandle> handles;
        handles.reserve(live);
        long executed = 0;
        for (int i = 0; i < live; ++i)
            handles.push_back(q.schedule_at(rng.uniform_int(0, 1000000), [&] { ++executed; }));
        for (int i = 0; i < live; ++i) {
            if (rng.uniform_int(0, 3) == 0) q.cancel(handles[rng.uniform_int(0, live - 1)]);
            handles[i] = q.schedule_at(rng.uniform_int(0, 2000000), [&] { ++executed; });
        }
        q.run_until(2000001);
        benchmark::DoNotOptimize(executed);
    }
    state.SetItemsProcessed(state.iterations() * live * 2);
}
BENCHMARK(BM_EventQueueChurn)->Arg(1000)->Arg(10000);

static void BM_RngUniformInt(benchmark::State& state) {
    RngStream rng(7, "bench.rng");
    uint64_t acc = 0;
    for (auto _ : state) acc += rng.uniform_int(0, 8);
    benchmark::DoNotOptimize(acc);
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RngUniformInt);

static void BM_RngExponential(benchmark::State& state) {
    RngStream rng(7, "bench.rng");
    double acc = 0;
    for (auto _ : state) acc += rng.exponential(0.1);
    benchmark::DoNotOptimize(acc);
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RngExponential);

static void BM_MsduAirtime(benchmark::State& state) {
    ProtocolTimings t{};
    int64_t acc = 0;
    int bytes = 30;
    for (auto _ : state) {
        acc += ppdu_duration_us(frame_payload_bits(1, bytes, 30), PpduClass::kPerRu, t);
        bytes = bytes % 1700 + 37;
    }
    benchmark::DoNotOptimize(acc);
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_MsduAirtime);

// One second of simulated air per iteration, so items/s reads as sim-seconds
// per wall-second for a mid-size cell.
static void BM_RunScenario(benchmark::State& state, Scheme scheme) {
    ScenarioConfig cfg;
    cfg.scheme = scheme;
    cfg.n_stochastic = (scheme == Scheme::kEdca) ? 1 : 30;
    cfg.ra_rus = (scheme == Scheme::kUora) ? 5 : 0;
    cfg.duration_us = 1'000'000;
    cfg.warmup_extra_us = 0;
    cfg.seed = 42;
    for (auto _ : state) {
        RunResult r = run_scenario(cfg);
        benchmark::DoNotOptimize(r.delivered);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK_CAPTURE(BM_RunScenario, edca, Scheme::kEdca)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunScenario, sa_ofdma, Scheme::kSaOfdma)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunScenario, uora, Scheme::kUora)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunScenario, a2p, Scheme::kA2p)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
