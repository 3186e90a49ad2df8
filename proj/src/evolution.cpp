#include "nvrot/evolution.hpp"

#include <cmath>
#include <string>

#include "nvrot/errors.hpp"
#include "nvrot/symmetric_eigen.hpp"

namespace nvrot {

namespace {

constexpr std::size_t kMaxRk4Steps = 2'000'000'000;

StateVector state_at(const ModelParams &params, const EigenSystem &eig, double t,
                     Frame frame) {
    StateVector rot = propagate(eig, t);
    if (frame == Frame::rotating) {
        return rot;
    }
    return StateVector{frame_phase_map(params, t) * rot.amps, Frame::lab, t};
}

void fill_trajectory_point(const ModelParams &params, const EigenSystem &eig, Trajectory &traj,
                           std::size_t i) {
    traj.states[i] = state_at(params, eig, traj.times[i], traj.frame);
    traj.populations[i] = traj.states[i].population(1);
}

Trajectory empty_trajectory(double t_max, double dt, Frame frame, std::size_t max_samples) {
    Trajectory traj;
    traj.frame = frame;
    traj.times = uniform_time_grid(t_max, dt, max_samples);
    traj.states.resize(traj.times.size());
    traj.populations.resize(traj.times.size());
    return traj;
}

// Right-hand side -i 2 pi H psi.
CVec3 rhs(const CMat3 &h, const CVec3 &psi) { return (-kI * kTwoPi) * (h * psi); }

} // namespace

std::vector<double> uniform_time_grid(double t_max, double dt, std::size_t max_samples) {
    if (!std::isfinite(t_max) || !std::isfinite(dt) || t_max <= 0.0 || dt <= 0.0) {
        throw ValidationError("time grid requires finite t_max > 0 and dt > 0");
    }
    if (dt > t_max) {
        throw ValidationError("time grid requires dt <= t_max");
    }
    const double intervals = std::floor(t_max / dt + 1e-9);
    if (intervals + 1.0 > static_cast<double>(max_samples)) {
        throw ValidationError("time grid would hold " + std::to_string(intervals + 1.0) +
                              " samples, above the cap of " + std::to_string(max_samples));
    }
    const auto n = static_cast<std::size_t>(intervals) + 1;
    std::vector<double> times(n);
    for (std::size_t k = 0; k < n; ++k) {
        times[k] = static_cast<double>(k) * dt;
    }
    return times;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count == 0) {
        throw ValidationError("linspace requires at least one point");
    }
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = lo + static_cast<double>(i) * step;
    }
    out.back() = hi;
    return out;
}

EigenSystem eigendecompose(const GeneratorM &m, const StateVector &initial) {
    const SymmetricEigen3 solved = jacobi_eigen3(m.m);
    EigenSystem eig;
    eig.lambdas = solved.values;
    eig.vectors = solved.vectors;
    eig.overlaps = solved.vectors.transpose().cast<Complex>() * initial.amps;
    eig.weights = eig.overlaps.cwiseAbs2();
    return eig;
}

CMat3 propagator(const EigenSystem &eig, double t) {
    const CMat3 v = eig.vectors.cast<Complex>();
    CVec3 phases;
    for (int k = 0; k < 3; ++k) {
        phases(k) = std::exp(-kI * (kTwoPi * eig.lambdas(k) * t));
    }
    return v * phases.asDiagonal() * v.transpose();
}

StateVector propagate(const EigenSystem &eig, double t) {
    CVec3 amps = CVec3::Zero();
    for (int k = 0; k < 3; ++k) {
        const Complex phase = std::exp(-kI * (kTwoPi * eig.lambdas(k) * t));
        amps += (eig.overlaps(k) * phase) * eig.vectors.col(k).cast<Complex>();
    }
    return StateVector{amps, Frame::rotating, t};
}

StateVector propagate_lab(const ModelParams &params, const StateVector &initial, double t) {
    const EigenSystem eig = eigendecompose(generator_m(params), initial);
    return StateVector{frame_phase_map(params, t) * propagate(eig, t).amps, Frame::lab, t};
}

Trajectory population_series(const ModelParams &params, const StateVector &initial,
                             double t_max, double dt, Frame frame, std::size_t max_samples) {
    Trajectory traj = empty_trajectory(t_max, dt, frame, max_samples);
    const EigenSystem eig = eigendecompose(generator_m(params), initial);
    const auto n = static_cast<std::ptrdiff_t>(traj.times.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        fill_trajectory_point(params, eig, traj, static_cast<std::size_t>(i));
    }
    return traj;
}

namespace reference {

Trajectory population_series(const ModelParams &params, const StateVector &initial,
                             double t_max, double dt, Frame frame, std::size_t max_samples) {
    Trajectory traj = empty_trajectory(t_max, dt, frame, max_samples);
    const EigenSystem eig = eigendecompose(generator_m(params), initial);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        fill_trajectory_point(params, eig, traj, i);
    }
    return traj;
}

} // namespace reference

std::vector<StateVector> rk4_checkpoints(const ModelParams &params, const StateVector &initial,
                                         std::span<const double> checkpoints, double dt,
                                         Frame frame) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ValidationError("rk4 step must be finite and > 0");
    }
    const CMat3 m = generator_m(params).m.cast<Complex>();
    auto hamiltonian = [&](double t) -> CMat3 {
        return frame == Frame::rotating ? m : hamiltonian_lab(params, t);
    };

    std::vector<StateVector> out;
    out.reserve(checkpoints.size());
    CVec3 psi = initial.amps;
    double t = 0.0;
    std::size_t steps = 0;
    for (const double target : checkpoints) {
        if (target < t) {
            throw ValidationError("rk4 checkpoints must be ascending and >= 0");
        }
        const double span = target - t;
        const auto full = static_cast<std::size_t>(std::floor(span / dt));
        steps += full + 1;
        if (steps > kMaxRk4Steps) {
            throw ValidationError("rk4 step budget exceeded");
        }
        const double t0 = t;
        for (std::size_t k = 0; k <= full; ++k) {
            const double ts = t0 + static_cast<double>(k) * dt;
            const double h = (k < full) ? dt : target - ts;
            if (h <= 0.0) {
                break;
            }
            const CVec3 k1 = rhs(hamiltonian(ts), psi);
            const CMat3 h_mid = hamiltonian(ts + 0.5 * h);
            const CVec3 k2 = rhs(h_mid, psi + (0.5 * h) * k1);
            const CVec3 k3 = rhs(h_mid, psi + (0.5 * h) * k2);
            const CVec3 k4 = rhs(hamiltonian(ts + h), psi + h * k3);
            psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        t = target;
        out.push_back(StateVector{psi, frame, target});
    }
    return out;
}

StateVector rk4_oracle(const ModelParams &params, const StateVector &initial, double t,
                       double dt, Frame frame) {
    const double target[1] = {t};
    return rk4_checkpoints(params, initial, target, dt, frame).front();
}

} // namespace nvrot
