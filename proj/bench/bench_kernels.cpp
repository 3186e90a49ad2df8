// Serial reference kernels against their OpenMP counterparts.
// Thread count for the parallel runs is the benchmark argument.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <vector>

#include "nvrot/evolution.hpp"
#include "nvrot/metrology.hpp"
#include "nvrot/spectrum.hpp"

using namespace nvrot;

namespace {

const ModelParams kParams = ModelParams::from_coupling(20.0, 10.0);
const std::vector<double> kDeltas = linspace(0.0, 50.0, 5001);

void threads_arg(benchmark::internal::Benchmark *b) {
    for (int n : {1, 2, 4, 8}) {
        b->Arg(n);
    }
    b->UseRealTime();
}

void BM_PopulationSeries_Serial(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            reference::population_series(kParams, StateVector::ket_zero(), 100.0, 1e-3, Frame::lab));
    }
}
BENCHMARK(BM_PopulationSeries_Serial)->UseRealTime();

void BM_PopulationSeries_OpenMP(benchmark::State &state) {
    omp_set_num_threads(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            population_series(kParams, StateVector::ket_zero(), 100.0, 1e-3, Frame::lab));
    }
}
BENCHMARK(BM_PopulationSeries_OpenMP)->Apply(threads_arg);

void BM_SweepSpectrum_Serial(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::sweep_spectrum(kParams, kDeltas));
    }
}
BENCHMARK(BM_SweepSpectrum_Serial)->UseRealTime();

void BM_SweepSpectrum_OpenMP(benchmark::State &state) {
    omp_set_num_threads(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep_spectrum(kParams, kDeltas));
    }
}
BENCHMARK(BM_SweepSpectrum_OpenMP)->Apply(threads_arg);

void BM_QfiTimeSeries_Serial(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            reference::qfi_time_series(kParams, StateVector::ket_zero(), 30.0, 1e-3));
    }
}
BENCHMARK(BM_QfiTimeSeries_Serial)->UseRealTime();

void BM_QfiTimeSeries_OpenMP(benchmark::State &state) {
    omp_set_num_threads(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qfi_time_series(kParams, StateVector::ket_zero(), 30.0, 1e-3));
    }
}
BENCHMARK(BM_QfiTimeSeries_OpenMP)->Apply(threads_arg);

void BM_QfiDeltaSweep_Serial(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::qfi_delta_sweep(kParams, 10.0, kDeltas));
    }
}
BENCHMARK(BM_QfiDeltaSweep_Serial)->UseRealTime();

void BM_QfiDeltaSweep_OpenMP(benchmark::State &state) {
    omp_set_num_threads(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qfi_delta_sweep(kParams, 10.0, kDeltas));
    }
}
BENCHMARK(BM_QfiDeltaSweep_OpenMP)->Apply(threads_arg);

} // namespace

BENCHMARK_MAIN();
