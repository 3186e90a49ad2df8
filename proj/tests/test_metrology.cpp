#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "nvrot/errors.hpp"
#include "nvrot/metrology.hpp"
#include "oracles.hpp"

using namespace nvrot;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ModelParams random_params(oracle::Sampler &rng) {
    return ModelParams::from_coupling(rng.uniform(0.0, 50.0), rng.uniform(1.0, 20.0));
}

CMat3 random_hermitian(oracle::Sampler &rng) {
    CMat3 g;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            g(i, j) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        }
    }
    return 0.5 * (g + g.adjoint());
}

// rho(theta) = U diag(p(theta)) U^dagger with U = exp(-i theta G).
struct MixedFamily {
    CMat3 g;
    Vec3 p(double theta) const {
        const double s = 0.2 * std::sin(theta);
        return Vec3(0.6 + s, 0.4 - s, 0.0);
    }
    Vec3 dp(double theta) const {
        const double c = 0.2 * std::cos(theta);
        return Vec3(c, -c, 0.0);
    }
    CMat3 u(double theta) const { return CMat3((-kI * theta * g).exp()); }
    CMat3 rho(double theta) const {
        const CMat3 uu = u(theta);
        return uu * p(theta).cast<Complex>().asDiagonal() * uu.adjoint();
    }
};

// SLD form F = 2 sum |<i|d rho|j>|^2 / (p_i + p_j) with d rho by central difference.
double sld_qfi(const MixedFamily &f, double theta) {
    const double h = 1e-5;
    const CMat3 drho = (f.rho(theta + h) - f.rho(theta - h)) / (2.0 * h);
    const CMat3 uu = f.u(theta);
    const CMat3 m = uu.adjoint() * drho * uu;
    const Vec3 p = f.p(theta);
    double out = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (p(i) + p(j) > 1e-14) {
                out += 2.0 * std::norm(m(i, j)) / (p(i) + p(j));
            }
        }
    }
    return out;
}

} // namespace

TEST_CASE("propagator derivative", "[metrology]") {
    SECTION("against Richardson finite differences") {
        oracle::Sampler rng(61);
        for (int i = 0; i < 20; ++i) {
            const ModelParams p = random_params(rng);
            const double t = rng.uniform(0.0, 10.0);
            const CMat3 exact = propagator_derivative(eigendecompose(generator_m(p), StateVector::ket_zero()), t);
            const CMat3 fd = oracle::propagator_derivative_fd(p, t);
            REQUIRE((exact - fd).cwiseAbs().maxCoeff() < 1e-7);
        }
    }
    SECTION("d(U^dagger U) = 0") {
        oracle::Sampler rng(67);
        for (int i = 0; i < 20; ++i) {
            const ModelParams p = random_params(rng);
            const EigenSystem eig = eigendecompose(generator_m(p), StateVector::ket_zero());
            const double t = rng.uniform(0.0, 10.0);
            const CMat3 u = propagator(eig, t);
            const CMat3 du = propagator_derivative(eig, t);
            CHECK((du.adjoint() * u + u.adjoint() * du).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
    SECTION("degenerate spectrum uses the limit form") {
        // A = 0, D = 0: M = diag(delta, 0, -delta) is diagonal, so dU is too.
        const ModelParams p = ModelParams::from_coupling(0.0, 0.0, 0.0);
        const EigenSystem eig = eigendecompose(generator_m(p), StateVector::ket_zero());
        const double t = 1.7;
        const CMat3 du = propagator_derivative(eig, t);
        CHECK(std::abs(du(0, 0) - (-kI * kTwoPi * t)) < 1e-13);
        CHECK(std::abs(du(1, 1)) < 1e-13);
        CHECK(std::abs(du(2, 2) - (kI * kTwoPi * t)) < 1e-13);
        CHECK((du - oracle::propagator_derivative_fd(p, t)).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("pure-state QFI examples", "[metrology]") {
    SECTION("vanishes at t = 0") {
        oracle::Sampler rng(71);
        for (int i = 0; i < 10; ++i) {
            const StateVector psi0 = StateVector::make(rng.random_state());
            CHECK(qfi_pure(random_params(rng), psi0, 0.0, Frame::rotating).value == 0.0);
            CHECK(qfi_pure(random_params(rng), psi0, 0.0, Frame::lab).value == 0.0);
        }
    }
    SECTION("uncoupled superposition of |1> and |-1>") {
        const double r = 1.0 / std::numbers::sqrt2;
        const StateVector psi0 = StateVector::make(CVec3(r, 0.0, r));
        const ModelParams p = ModelParams::from_coupling(9.0, 0.0);
        const double t = 0.8;
        CHECK_THAT(qfi_pure(p, psi0, t, Frame::rotating).value,
                   WithinRel(16.0 * std::numbers::pi * std::numbers::pi * t * t, 1e-12));
        // The frame phases cancel the delta dependence entirely.
        CHECK_THAT(qfi_pure(p, psi0, t, Frame::lab).value, WithinAbs(0.0, 1e-10));
    }
    SECTION("uncoupled |0> carries no information") {
        const ModelParams p = ModelParams::from_coupling(9.0, 0.0);
        CHECK_THAT(qfi_pure(p, StateVector::ket_zero(), 3.0, Frame::rotating).value, WithinAbs(0.0, 1e-12));
    }
    SECTION("point metadata") {
        const QfiPoint q = qfi_pure(ModelParams::from_coupling(20.0, 10.0), StateVector::ket_zero(), 2.5, Frame::lab);
        CHECK(q.t == 2.5);
        CHECK(q.delta == 20.0);
        CHECK_THAT(q.a_coupling, WithinAbs(10.0, 1e-12));
        CHECK(q.frame == Frame::lab);
    }
}

TEST_CASE("QFI against the fidelity oracle", "[metrology]") {
    oracle::Sampler rng(73);
    for (const Frame frame : {Frame::rotating, Frame::lab}) {
        for (int i = 0; i < 20; ++i) {
            const ModelParams p = random_params(rng);
            const StateVector psi0 = i % 2 ? StateVector::ket_zero() : StateVector::make(rng.random_state());
            const double t = rng.uniform(0.5, 10.0);
            const double exact = qfi_pure(p, psi0, t, frame).value;
            const double fid = oracle::fidelity_qfi(p, psi0.amps, t, frame);
            REQUIRE_THAT(exact, WithinRel(fid, 1e-3));
        }
    }
}

TEST_CASE("QFI invariances", "[metrology]") {
    oracle::Sampler rng(79);
    for (int i = 0; i < 20; ++i) {
        const ModelParams p = random_params(rng);
        const StateVector psi0 = StateVector::make(rng.random_state());
        const StateVector rotated = StateVector::make(psi0.amps * std::polar(1.0, rng.uniform(0.0, 6.0)));
        const double t = rng.uniform(0.0, 10.0);
        for (const Frame frame : {Frame::rotating, Frame::lab}) {
            const double f = qfi_pure(p, psi0, t, frame).value;
            CHECK(f >= 0.0);
            CHECK_THAT(qfi_pure(p, rotated, t, frame).value, WithinAbs(f, 1e-9 * std::max(1.0, f)));
        }
        const StateDerivative sd = state_and_derivative(p, psi0, t, Frame::rotating);
        const Complex g = std::polar(1.0, rng.uniform(0.0, 6.0));
        CHECK_THAT(pure_state_qfi(g * sd.psi, g * sd.dpsi),
                   WithinAbs(pure_state_qfi(sd.psi, sd.dpsi), 1e-9));
        // Adding a multiple of psi to dpsi leaves F unchanged.
        CHECK_THAT(pure_state_qfi(sd.psi, sd.dpsi + kI * 3.0 * sd.psi),
                   WithinAbs(pure_state_qfi(sd.psi, sd.dpsi), 1e-8));
    }
}

TEST_CASE("QFI series is continuous and non-negative", "[metrology]") {
    const ModelParams p = ModelParams::from_coupling(20.0, 10.0);
    const QfiSeries s = qfi_time_series(p, StateVector::ket_zero(), 10.0, 1e-3);
    REQUIRE(s.points.size() == 10001);
    CHECK(s.points.front().value == 0.0);
    for (std::size_t i = 0; i < s.points.size(); ++i) {
        const QfiPoint &q = s.points[i];
        REQUIRE(q.value >= 0.0);
        if (i % 50 == 0) {
            const double nearby = qfi_pure(p, StateVector::ket_zero(), q.t + 1e-9).value;
            REQUIRE_THAT(nearby, WithinAbs(q.value, 1e-4 * std::max(1.0, q.value)));
        }
    }

    const std::vector<double> deltas = linspace(0.0, 50.0, 26);
    const auto rows = qfi_delta_sweep(p, 10.0, deltas);
    REQUIRE(rows.size() == deltas.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].delta == deltas[i]);
        CHECK(rows[i].qfi == qfi_pure(p.with_delta(deltas[i]), StateVector::ket_zero(), 10.0).value);
    }
}

TEST_CASE("mixed-state QFI", "[metrology]") {
    SECTION("rank-one input reduces to the pure-state formula") {
        oracle::Sampler rng(83);
        for (int i = 0; i < 20; ++i) {
            const ModelParams p = random_params(rng);
            const StateDerivative sd = state_and_derivative(p, StateVector::make(rng.random_state()),
                                                            rng.uniform(0.0, 10.0), Frame::lab);
            SpectralDecomposition d{{1.0}, {0.0}, {sd.psi}, {sd.dpsi}};
            const double pure = pure_state_qfi(sd.psi, sd.dpsi);
            CHECK_THAT(qfi_mixed(d), WithinAbs(pure, 1e-10 * std::max(1.0, pure)));
        }
    }
    SECTION("fixed eigenbasis gives the classical Fisher information") {
        const double theta = 0.4;
        const double p0 = std::cos(theta) * std::cos(theta);
        const double dp0 = -std::sin(2.0 * theta);
        SpectralDecomposition d{{p0, 1.0 - p0},
                                {dp0, -dp0},
                                {CVec3(1, 0, 0), CVec3(0, 1, 0)},
                                {CVec3::Zero(), CVec3::Zero()}};
        CHECK_THAT(qfi_mixed(d), WithinAbs(4.0, 1e-12));
    }
    SECTION("unitary family with changing weights against the SLD oracle") {
        oracle::Sampler rng(89);
        for (int i = 0; i < 10; ++i) {
            MixedFamily f{random_hermitian(rng)};
            const double theta = rng.uniform(-1.0, 1.0);
            const CMat3 u = f.u(theta);
            const CMat3 du = -kI * f.g * u;
            const Vec3 p = f.p(theta);
            const Vec3 dp = f.dp(theta);
            SpectralDecomposition d;
            for (int k = 0; k < 3; ++k) {
                d.probs.push_back(p(k));
                d.dprobs.push_back(dp(k));
                d.states.push_back(u.col(k));
                d.dstates.push_back(du.col(k));
            }
            CHECK_THAT(qfi_mixed(d), WithinAbs(sld_qfi(f, theta), 1e-6));
        }
    }
    SECTION("input checks") {
        SpectralDecomposition bad{{0.5, 0.4}, {0.0, 0.0}, {CVec3(1, 0, 0), CVec3(0, 1, 0)},
                                  {CVec3::Zero(), CVec3::Zero()}};
        CHECK_THROWS_AS(qfi_mixed(bad), ValidationError);
        bad.probs = {0.5, 0.5};
        bad.dprobs.pop_back();
        CHECK_THROWS_AS(qfi_mixed(bad), ValidationError);
    }
}

TEST_CASE("Cramer-Rao bound", "[metrology]") {
    CHECK_THAT(cramer_rao_bound(4.0, 1), WithinAbs(0.5, 1e-15));
    CHECK_THAT(cramer_rao_bound(100.0, 4), WithinAbs(0.05, 1e-15));
    CHECK_THAT(cramer_rao_bound(5.60, 1), WithinAbs(0.4226, 1e-4));
    CHECK_THROWS_AS(cramer_rao_bound(0.0, 1), NumericError);
    CHECK_THROWS_AS(cramer_rao_bound(1.0, 0), ValidationError);
    CHECK_THROWS_AS(cramer_rao_bound(-1.0, 1), ValidationError);
}
