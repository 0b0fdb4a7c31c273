#include <benchmark/benchmark.h>

#include <shoptrack/mcoke.hpp>
#include <shoptrack/model.hpp>
#include <shoptrack/wkm.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

using namespace shoptrack;

namespace {

double unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<WeightedPoint> random_points(std::mt19937_64& rng, int n, double weight,
                                         PointKind kind) {
    std::vector<WeightedPoint> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        points.push_back({(kind == PointKind::garment ? "g" : "c") + std::to_string(i),
                          {unit(rng) * 1000.0, unit(rng) * 1000.0},
                          weight,
                          kind});
    }
    return points;
}

void BM_weighted_kmeans(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    std::mt19937_64 rng(7);
    const auto points = random_points(rng, n, 1.0, PointKind::customer);
    std::vector<Point2D> seeds;
    for (int j = 0; j < k; ++j) seeds.push_back({unit(rng) * 1000.0, unit(rng) * 1000.0});

    for (auto _ : state) {
        benchmark::DoNotOptimize(weighted_kmeans(points, seeds, 100, 1e-6));
    }
}
BENCHMARK(BM_weighted_kmeans)->Args({20, 4})->Args({50, 8})->Args({200, 16});

void BM_cluster_frame(benchmark::State& state) {
    const int n_customers = static_cast<int>(state.range(0));
    const int n_garments = static_cast<int>(state.range(1));
    std::mt19937_64 rng(11);
    FrameAnnotations frame;
    for (int i = 0; i < n_customers; ++i) {
        CustomerObservation c;
        c.tracking_id = customer_key("c" + std::to_string(i));
        const double x = unit(rng) * 1000.0;
        const double y = unit(rng) * 1000.0;
        c.bbox = {x - 20.0, y - 45.0, x + 20.0, y + 45.0};
        c.age_years = 30;
        c.expression = "neutral";
        frame.customers.push_back(std::move(c));
    }
    for (int j = 0; j < n_garments; ++j) {
        GarmentObservation g;
        g.tracking_id = garment_key("g" + std::to_string(j));
        const double x = unit(rng) * 1000.0;
        const double y = unit(rng) * 1000.0;
        g.bbox = {x - 30.0, y - 40.0, x + 30.0, y + 40.0};
        g.color = "Blue";
        frame.garments.push_back(std::move(g));
    }
    const EngineConfig config;

    for (auto _ : state) {
        benchmark::DoNotOptimize(cluster_frame(frame.customers, frame.garments, config));
    }
}
BENCHMARK(BM_cluster_frame)->Args({20, 10})->Args({40, 10})->Args({100, 20});

} // namespace

BENCHMARK_MAIN();
