#include <benchmark/benchmark.h>

#include "latop/apps.hpp"
#include "latop/geometry.hpp"
#include "latop/polybasis.hpp"
#include "latop/spectral.hpp"
#include "latop/transferop.hpp"

using namespace latop;

namespace {

MapWeightSystem interval_map_system() {
    MapWeightSystem sys;
    sys.foci = {cplx{0.0}, cplx{1.0}};
    sys.R = 16.99;
    sys.branches.push_back({[](cplx z) { return z / (11.0 + z); },
                            [](cplx z) {
                                const cplx d = 11.0 + z;
                                return 11.0 / (d * d);
                            }});
    for (int i = 1; i <= 11; ++i) {
        sys.branches.push_back({[i](cplx z) { return (z + static_cast<double>(i)) / 12.0; },
                                [](cplx) { return cplx{1.0 / 12.0, 0.0}; }});
    }
    return sys;
}

void BM_cheb_transform(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<cplx> samples(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) samples[static_cast<size_t>(k)] = cplx{std::sin(0.1 * k), 0.3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(cheb_transform(samples));
    }
}
BENCHMARK(BM_cheb_transform)->Arg(16)->Arg(64)->Arg(128);

void BM_laurent_transform(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<cplx> samples(static_cast<size_t>(2 * n));
    for (int k = 0; k < 2 * n; ++k) samples[static_cast<size_t>(k)] = cplx{std::cos(0.2 * k), 0.1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(laurent_transform(samples));
    }
}
BENCHMARK(BM_laurent_transform)->Arg(16)->Arg(53);

void BM_assemble_cheb(benchmark::State& state) {
    const MapWeightSystem sys = interval_map_system();
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_cheb(sys, n));
    }
}
BENCHMARK(BM_assemble_cheb)->Arg(16)->Arg(42)->Arg(64);

void BM_eigendecompose(benchmark::State& state) {
    const CollocationMatrix M =
        assemble_cheb(interval_map_system(), static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigendecompose(M));
    }
}
BENCHMARK(BM_eigendecompose)->Arg(16)->Arg(42)->Arg(64);

void BM_blaschke_benchmark(benchmark::State& state) {
    const cplx mu{0.0, 0.33};
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(blaschke_benchmark(mu, n));
    }
}
BENCHMARK(BM_blaschke_benchmark)->Arg(13)->Arg(23)->Unit(benchmark::kMillisecond);

void BM_contraction_search(benchmark::State& state) {
    std::vector<MapFn> maps;
    for (const MapWeightBranch& b : interval_map_system().branches) maps.push_back(b.map);
    const std::vector<double> grid = uniform_grid(1.01, 40.0, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            contraction_search(maps, Foci{cplx{0.0}, cplx{1.0}}, grid, 256));
    }
}
BENCHMARK(BM_contraction_search)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
