#include <benchmark/benchmark.h>

#include <random>

#include "relspan/attacks.hpp"
#include "relspan/lso.hpp"
#include "relspan/resilience1d.hpp"
#include "relspan/shadow.hpp"
#include "relspan/spanner1d.hpp"

using namespace relspan;

namespace {

void BM_Gradation(benchmark::State& state) {
    const Vertex n = static_cast<Vertex>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_gradation(n, seed++));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_Gradation)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oN);

void BM_Build1D(benchmark::State& state) {
    const Vertex n = static_cast<Vertex>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_1d(n, 0.25, std::nullopt, 1.0, seed++));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_Build1D)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oN);

void BM_EdgeEnumeration(benchmark::State& state) {
    const Vertex n = static_cast<Vertex>(state.range(0));
    const Spanner1D s = build_1d(n, 0.25, std::nullopt, 1.0, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(s.enumerate_edges());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.edge_count()));
}
BENCHMARK(BM_EdgeEnumeration)->Range(1 << 10, 1 << 14);

void BM_Shadow(benchmark::State& state) {
    const Vertex n = static_cast<Vertex>(state.range(0));
    const Attack atk = generate_attack(AttackKind::uniform, n, n / 8, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_shadow(atk.vertices, Fraction::of(1, 2), n));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_Shadow)->Range(1 << 10, 1 << 18)->Complexity(benchmark::oN);

void BM_MonotonePath(benchmark::State& state) {
    const Vertex n = static_cast<Vertex>(state.range(0));
    const Spanner1D s = build_1d(n, 0.25, std::nullopt, 1.0, 7);
    Attack atk = generate_attack(AttackKind::uniform, n, n / 8, 3);
    std::sort(atk.vertices.begin(), atk.vertices.end());
    Vertex u = 1, v = n;
    while (std::binary_search(atk.vertices.begin(), atk.vertices.end(), u)) ++u;
    while (std::binary_search(atk.vertices.begin(), atk.vertices.end(), v)) --v;
    for (auto _ : state) {
        benchmark::DoNotOptimize(monotone_path(s, atk.vertices, u, v));
    }
}
BENCHMARK(BM_MonotonePath)->Range(1 << 10, 1 << 14);

void BM_BadPoints(benchmark::State& state) {
    const Vertex n = static_cast<Vertex>(state.range(0));
    const Spanner1D s = build_1d(n, 0.25, std::nullopt, 1.0, 7);
    Attack atk = generate_attack(AttackKind::uniform, n, n / 8, 3);
    std::sort(atk.vertices.begin(), atk.vertices.end());
    for (auto _ : state) {
        benchmark::DoNotOptimize(bad_points_1d(s, atk.vertices));
    }
}
BENCHMARK(BM_BadPoints)->Range(1 << 10, 1 << 13);

void BM_OrderingCompare(benchmark::State& state) {
    const OrderingFamily fam = build_orderings(0.25, 2);
    std::mt19937_64 rng(9);
    std::vector<Point> pts;
    for (int i = 0; i < 256; ++i)
        pts.push_back({static_cast<double>(rng() >> 11) * 0x1.0p-53,
                       static_cast<double>(rng() >> 11) * 0x1.0p-53});
    std::uint64_t sigma = 0;
    std::size_t i = 0;
    for (auto _ : state) {
        const Point& a = pts[i % pts.size()];
        const Point& b = pts[(i * 7 + 1) % pts.size()];
        benchmark::DoNotOptimize(compare(fam, sigma, a, b));
        sigma = (sigma + 1) % fam.count();
        ++i;
    }
}
BENCHMARK(BM_OrderingCompare);

void BM_LsoVerify(benchmark::State& state) {
    const OrderingFamily fam = build_orderings(0.25, 2);
    std::mt19937_64 rng(10);
    std::size_t i = 0;
    std::vector<Point> pts;
    for (int k = 0; k < 64; ++k)
        pts.push_back({static_cast<double>(rng() >> 11) * 0x1.0p-53,
                       static_cast<double>(rng() >> 11) * 0x1.0p-53});
    for (auto _ : state) {
        const Point& a = pts[i % pts.size()];
        const Point& b = pts[(i + 17) % pts.size()];
        benchmark::DoNotOptimize(verify_lso_property(fam, a, b));
        ++i;
    }
}
BENCHMARK(BM_LsoVerify);

}  // namespace

BENCHMARK_MAIN();
