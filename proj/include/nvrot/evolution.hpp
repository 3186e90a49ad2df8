#pragma once

/**
 * @file
 * Exact propagation under the constant rotating-frame generator, lab-frame
 * reconstruction, population time series, and a fixed-step RK4 integrator
 * kept as an independent oracle.
 */

#include <cstddef>
#include <span>
#include <vector>

#include "nvrot/core_model.hpp"
#include "nvrot/grid.hpp"

namespace nvrot {

struct EigenSystem {
    Vec3 lambdas;   ///< ascending, GHz
    Mat3 vectors;   ///< orthonormal columns
    CVec3 overlaps; ///< <v_k | psi(0)>
    Vec3 weights;   ///< c_k = |<v_k | psi(0)>|^2
};

EigenSystem eigendecompose(const GeneratorM &m, const StateVector &initial);

/// U(t) = exp(-i 2 pi M t) assembled from the eigensystem.
CMat3 propagator(const EigenSystem &eig, double t);

/// Rotating-frame state Y(t) = sum_k <v_k|Y(0)> e^{-i 2 pi lambda_k t} v_k.
/// Negative t runs the unitary group backwards.
StateVector propagate(const EigenSystem &eig, double t);

/// Lab-frame state Phi(t) Y(t) for an initial state given at t = 0.
StateVector propagate_lab(const ModelParams &params, const StateVector &initial, double t);

struct Trajectory {
    Frame frame = Frame::rotating;
    std::vector<double> times;
    std::vector<StateVector> states;
    std::vector<double> populations; ///< P(t) = |b(t)|^2
};

/// |0> population on the uniform grid {0, dt, ..., t_max}; OpenMP-parallel
/// over grid points with results in grid order.
Trajectory population_series(const ModelParams &params, const StateVector &initial,
                             double t_max, double dt, Frame frame = Frame::rotating,
                             std::size_t max_samples = kDefaultMaxSamples);

/// Fixed-step fourth-order Runge-Kutta integration of i dpsi/dt = 2 pi H psi,
/// with H = M in the rotating frame or the explicit time-dependent lab
/// Hamiltonian. The last step is shortened to land exactly on @p t.
StateVector rk4_oracle(const ModelParams &params, const StateVector &initial, double t,
                       double dt, Frame frame);

/// Same integrator, sampled at each of the ascending @p checkpoints in one pass.
std::vector<StateVector> rk4_checkpoints(const ModelParams &params, const StateVector &initial,
                                         std::span<const double> checkpoints, double dt,
                                         Frame frame);

namespace reference {

/// Serial twin of nvrot::population_series.
Trajectory population_series(const ModelParams &params, const StateVector &initial,
                             double t_max, double dt, Frame frame = Frame::rotating,
                             std::size_t max_samples = kDefaultMaxSamples);

} // namespace reference

} // namespace nvrot
