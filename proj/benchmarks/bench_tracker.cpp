#include <benchmark/benchmark.h>

#include <shoptrack/stream.hpp>
#include <shoptrack/synth.hpp>
#include <shoptrack/tracker.hpp>

#include <sstream>
#include <vector>

using namespace shoptrack;

namespace {

Scenario busy_scenario(std::int64_t n_frames) {
    ScenarioConfig config;
    config.seed = 17;
    config.n_garments = 10;
    config.garment_spacing = 400.0;
    config.n_customers = 20;
    config.customer_radius = 50.0;
    config.jitter = 2.0;
    config.n_frames = n_frames;
    for (int m = 0; m < 8; ++m) {
        config.moves.push_back(
            {m % config.n_customers, (m + 1) * n_frames / 10, (m * 3 + 1) % config.n_garments});
    }
    return generate(config);
}

void BM_tracker_stream(benchmark::State& state) {
    const Scenario scenario = busy_scenario(state.range(0));
    const EngineConfig config;

    for (auto _ : state) {
        Tracker tracker(config);
        for (const auto& frame : scenario.frames) tracker.process_frame(frame);
        benchmark::DoNotOptimize(tracker.finalize());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_tracker_stream)->Arg(100)->Arg(1000)->Arg(5000);

void BM_stream_parse(benchmark::State& state) {
    const Scenario scenario = busy_scenario(state.range(0));
    std::ostringstream serialized;
    write_stream(serialized, scenario.frames);
    const std::string text = serialized.str();

    for (auto _ : state) {
        std::istringstream in(text);
        benchmark::DoNotOptimize(read_stream(in));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_stream_parse)->Arg(100)->Arg(1000);

} // namespace

BENCHMARK_MAIN();
