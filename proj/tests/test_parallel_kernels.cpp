#include "catch_amalgamated.hpp"

#include <omp.h>

#include <vector>

#include "nvrot/evolution.hpp"
#include "nvrot/metrology.hpp"
#include "nvrot/spectrum.hpp"

using namespace nvrot;

// Every parallel kernel must match its serial twin bit for bit.

namespace {

struct ThreadCount {
    int saved = omp_get_max_threads();
    explicit ThreadCount(int n) { omp_set_num_threads(n); }
    ~ThreadCount() { omp_set_num_threads(saved); }
};

const StateVector kMixed = StateVector::make(CVec3(Complex(0.6, 0.0), Complex(0.0, 0.48), Complex(0.64, 0.0)));

} // namespace

TEST_CASE("population_series matches the serial kernel", "[parallel]") {
    const ThreadCount threads(4);
    const ModelParams p = ModelParams::from_coupling(17.0, 8.0);
    for (const Frame frame : {Frame::rotating, Frame::lab}) {
        const Trajectory par = population_series(p, kMixed, 10.0, 0.003, frame);
        const Trajectory ser = reference::population_series(p, kMixed, 10.0, 0.003, frame);
        REQUIRE(par.times == ser.times);
        CHECK(par.populations == ser.populations);
        for (std::size_t i = 0; i < par.states.size(); ++i) {
            REQUIRE(par.states[i].amps == ser.states[i].amps);
        }
    }
}

TEST_CASE("sweep_spectrum matches the serial kernel", "[parallel]") {
    const ThreadCount threads(4);
    const ModelParams tmpl = ModelParams::from_coupling(0.0, 10.0);
    const std::vector<double> deltas = linspace(0.0, 50.0, 1001);
    const auto par = sweep_spectrum(tmpl, deltas, kMixed);
    const auto ser = reference::sweep_spectrum(tmpl, deltas, kMixed);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        REQUIRE(par[i].delta == ser[i].delta);
        REQUIRE(par[i].k0 == ser[i].k0);
        REQUIRE(par[i].omega == ser[i].omega);
        REQUIRE(par[i].k == ser[i].k);
    }
}

TEST_CASE("QFI kernels match their serial twins", "[parallel]") {
    const ThreadCount threads(4);
    const ModelParams p = ModelParams::from_coupling(20.0, 10.0);
    for (const Frame frame : {Frame::rotating, Frame::lab}) {
        const QfiSeries par = qfi_time_series(p, StateVector::ket_zero(), 30.0, 0.01, frame);
        const QfiSeries ser = reference::qfi_time_series(p, StateVector::ket_zero(), 30.0, 0.01, frame);
        REQUIRE(par.points.size() == ser.points.size());
        for (std::size_t i = 0; i < par.points.size(); ++i) {
            REQUIRE(par.points[i].t == ser.points[i].t);
            REQUIRE(par.points[i].value == ser.points[i].value);
        }

        const std::vector<double> deltas = linspace(0.0, 50.0, 777);
        const auto rows_par = qfi_delta_sweep(p, 10.0, deltas, kMixed, frame);
        const auto rows_ser = reference::qfi_delta_sweep(p, 10.0, deltas, kMixed, frame);
        REQUIRE(rows_par.size() == rows_ser.size());
        for (std::size_t i = 0; i < rows_par.size(); ++i) {
            REQUIRE(rows_par[i].delta == rows_ser[i].delta);
            REQUIRE(rows_par[i].qfi == rows_ser[i].qfi);
        }
    }
}

TEST_CASE("thread count does not change results", "[parallel]") {
    const ModelParams tmpl = ModelParams::from_coupling(0.0, 10.0);
    const std::vector<double> deltas = linspace(0.0, 50.0, 501);
    std::vector<QfiSweepRow> one;
    {
        const ThreadCount threads(1);
        one = qfi_delta_sweep(tmpl, 10.0, deltas);
    }
    const ThreadCount threads(3);
    const auto three = qfi_delta_sweep(tmpl, 10.0, deltas);
    for (std::size_t i = 0; i < one.size(); ++i) {
        REQUIRE(one[i].qfi == three[i].qfi);
    }
}
