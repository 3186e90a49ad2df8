#include "oracles.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace nvrot::oracle {

CMat3 propagator_expm(const Mat3 &m, double t) {
    const CMat3 generator = (-kI * (kTwoPi * t)) * m.cast<Complex>();
    return generator.exp();
}

CVec3 rotating_state(const ModelParams &p, const CVec3 &psi0, double t) {
    return propagator_expm(generator_m(p).m, t) * psi0;
}

CVec3 lab_state(const ModelParams &p, const CVec3 &psi0, double t) {
    const CVec3 y = rotating_state(p, psi0, t);
    const double w = kTwoPi * t;
    const double d = p.d_zfs();
    const double delta = p.delta();
    return CVec3(y(0) * std::polar(1.0, w * (delta - d)), y(1) * std::polar(1.0, -w * d),
                 y(2) * std::polar(1.0, -w * (delta + d)));
}

CVec3 state(const ModelParams &p, const CVec3 &psi0, double t, Frame frame) {
    return frame == Frame::lab ? lab_state(p, psi0, t) : rotating_state(p, psi0, t);
}

CMat3 propagator_derivative_fd(const ModelParams &p, double t, double eps) {
    auto central = [&](double h) {
        const Mat3 up = generator_m(p.with_delta(p.delta() + h)).m;
        const Mat3 dn = generator_m(p.with_delta(p.delta() - h)).m;
        return CMat3((propagator_expm(up, t) - propagator_expm(dn, t)) / (2.0 * h));
    };
    return (4.0 * central(0.5 * eps) - central(eps)) / 3.0;
}

double fidelity_qfi(const ModelParams &p, const CVec3 &psi0, double t, Frame frame, double eps) {
    // Symmetric overlap is even in h, so only even powers survive.
    auto estimate = [&](double h) {
        const CVec3 lo = state(p.with_delta(p.delta() - h), psi0, t, frame);
        const CVec3 hi = state(p.with_delta(p.delta() + h), psi0, t, frame);
        return 2.0 * (1.0 - std::abs(lo.dot(hi))) / (h * h);
    };
    return (4.0 * estimate(0.5 * eps) - estimate(eps)) / 3.0;
}

DeltaZeroSolution delta_zero_solution(double a, double d) {
    // Block [[0, s], [s, -D]] with s = sqrt(2) A acting on ((|1>+|-1>)/sqrt2, |0>).
    const double s = std::sqrt(2.0) * a;
    const double root = std::sqrt(d * d / 4.0 + s * s);
    DeltaZeroSolution out{};
    out.lambda_minus = -d / 2.0 - root;
    out.lambda_plus = -d / 2.0 + root;
    // Eigenvector (s, lambda) up to normalisation; |0> weight = lambda^2 / (s^2 + lambda^2).
    auto weight = [s](double lambda) { return lambda * lambda / (s * s + lambda * lambda); };
    out.weight_minus = weight(out.lambda_minus);
    out.weight_plus = weight(out.lambda_plus);
    return out;
}

double crossing_closed_form(double a, double d) { return std::sqrt(a * a + d * d / 9.0); }

Vec3 eigenvalues_eigen(const ModelParams &p) {
    Eigen::SelfAdjointEigenSolver<Mat3> solver(generator_m(p).m);
    return solver.eigenvalues();
}

CVec3 Sampler::random_state() {
    std::normal_distribution<double> g(0.0, 1.0);
    CVec3 v;
    for (int i = 0; i < 3; ++i) {
        v(i) = Complex(g(rng_), g(rng_));
    }
    return v.normalized();
}

} // namespace nvrot::oracle
