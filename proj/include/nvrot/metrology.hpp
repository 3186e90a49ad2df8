#pragma once

/**
 * @file
 * Quantum Fisher information for the rotation rate. The derivative is taken
 * with respect to delta = Omega - omega at fixed omega, which equals the
 * derivative with respect to Omega.
 */

#include <cstddef>
#include <span>
#include <vector>

#include "nvrot/core_model.hpp"
#include "nvrot/evolution.hpp"
#include "nvrot/grid.hpp"

namespace nvrot {

/// Eigenvalue gaps below this use the confluent (diagonal) derivative formula.
inline constexpr double kDegeneracyThreshold = 1e-9;

/// Frame whose QFI series best reproduces the reference quadratic fits; see
/// frame_prestudy() and the README for the study that fixed it.
inline constexpr Frame kDefaultQfiFrame = Frame::rotating;

/**
 * @brief Exact d/d(delta) of U(t) = exp(-i 2 pi M t).
 *
 * Uses dM/d(delta) = diag(1, 0, -1) and the divided-difference form of the
 * derivative of a matrix function in the eigenbasis of M.
 */
CMat3 propagator_derivative(const EigenSystem &eig, double t);

struct QfiPoint {
    double t = 0.0;
    double delta = 0.0;
    double a_coupling = 0.0;
    Frame frame = Frame::rotating;
    double value = 0.0;
};

/// 4 (<dpsi|dpsi> - |<psi|dpsi>|^2), unclamped.
double pure_state_qfi(const CVec3 &psi, const CVec3 &dpsi);

/// State and its delta-derivative at time t in the requested frame.
struct StateDerivative {
    CVec3 psi;
    CVec3 dpsi;
};

StateDerivative state_and_derivative(const ModelParams &params, const StateVector &initial,
                                     double t, Frame frame);

/// Pure-state QFI at time t. Values in [-1e-10, 0) are clamped to zero; larger
/// negatives throw NumericError.
QfiPoint qfi_pure(const ModelParams &params, const StateVector &initial, double t,
                  Frame frame = kDefaultQfiFrame);

struct SpectralDecomposition {
    std::vector<double> probs;
    std::vector<double> dprobs;
    std::vector<CVec3> states;
    std::vector<CVec3> dstates;
};

/// Mixed-state QFI from a spectral decomposition rho = sum_i p_i |psi_i><psi_i|.
/// Terms with p_i (or p_i + p_j) below 1e-14 are dropped.
double qfi_mixed(const SpectralDecomposition &decomp);

/// Lower bound 1 / sqrt(nu F) on the estimation error after nu repetitions.
double cramer_rao_bound(double fisher, long nu);

struct QfiSeries {
    Frame frame = Frame::rotating;
    std::vector<QfiPoint> points;
};

QfiSeries qfi_time_series(const ModelParams &params, const StateVector &initial, double t_max,
                          double dt, Frame frame = kDefaultQfiFrame,
                          std::size_t max_samples = kDefaultMaxSamples);

struct QfiSweepRow {
    double delta = 0.0;
    double qfi = 0.0;
};

std::vector<QfiSweepRow> qfi_delta_sweep(const ModelParams &tmpl, double t_fixed,
                                         std::span<const double> deltas,
                                         const StateVector &initial = StateVector::ket_zero(),
                                         Frame frame = kDefaultQfiFrame);

namespace reference {

QfiSeries qfi_time_series(const ModelParams &params, const StateVector &initial, double t_max,
                          double dt, Frame frame = kDefaultQfiFrame,
                          std::size_t max_samples = kDefaultMaxSamples);

std::vector<QfiSweepRow> qfi_delta_sweep(const ModelParams &tmpl, double t_fixed,
                                         std::span<const double> deltas,
                                         const StateVector &initial = StateVector::ket_zero(),
                                         Frame frame = kDefaultQfiFrame);

} // namespace reference

} // namespace nvrot
