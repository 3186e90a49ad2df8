#include "nvrot/metrology.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "nvrot/errors.hpp"

namespace nvrot {

namespace {

constexpr double kNegativeQfiTolerance = 1e-10;
constexpr double kDropProbability = 1e-14;

double clamp_qfi(double value) {
    if (value >= 0.0) {
        return value;
    }
    if (value >= -kNegativeQfiTolerance) {
        return 0.0;
    }
    throw NumericError("QFI evaluated to " + std::to_string(value) +
                       ", below the round-off tolerance");
}

StateDerivative derive(const ModelParams &params, const EigenSystem &eig,
                       const StateVector &initial, double t, Frame frame) {
    StateDerivative out{propagator(eig, t) * initial.amps,
                        propagator_derivative(eig, t) * initial.amps};
    if (frame == Frame::lab) {
        // d/d(delta) of Phi(t) = i 2 pi t diag(1, 0, -1) Phi(t).
        const PhaseMap phi = frame_phase_map(params, t);
        out.dpsi = phi * ((kI * kTwoPi * t) * kSpinProjection.cast<Complex>().cwiseProduct(out.psi) +
                          out.dpsi);
        out.psi = phi * out.psi;
    }
    return out;
}

QfiPoint evaluate_point(const ModelParams &params, const EigenSystem &eig,
                        const StateVector &initial, double t, Frame frame) {
    const StateDerivative sd = derive(params, eig, initial, t, frame);
    return QfiPoint{t, params.delta(), params.a_coupling(), frame,
                    clamp_qfi(pure_state_qfi(sd.psi, sd.dpsi))};
}

QfiSeries empty_series(double t_max, double dt, Frame frame, std::size_t max_samples,
                       std::vector<double> &times) {
    times = uniform_time_grid(t_max, dt, max_samples);
    QfiSeries series;
    series.frame = frame;
    series.points.resize(times.size());
    return series;
}

} // namespace

CMat3 propagator_derivative(const EigenSystem &eig, double t) {
    const Mat3 &v = eig.vectors;
    // dM/d(delta) in the eigenbasis.
    const Mat3 n_tilde = v.transpose() * kSpinProjection.asDiagonal() * v;

    CVec3 phase;
    for (int k = 0; k < 3; ++k) {
        phase(k) = std::exp(-kI * (kTwoPi * eig.lambdas(k) * t));
    }

    CMat3 gamma;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            const double gap = eig.lambdas(j) - eig.lambdas(k);
            if (j == k || std::abs(gap) < kDegeneracyThreshold) {
                gamma(j, k) = -kI * kTwoPi * t * phase(j);
            } else {
                gamma(j, k) = (phase(j) - phase(k)) / gap;
            }
        }
    }
    const CMat3 inner = n_tilde.cast<Complex>().cwiseProduct(gamma);
    const CMat3 vc = v.cast<Complex>();
    return vc * inner * vc.transpose();
}

double pure_state_qfi(const CVec3 &psi, const CVec3 &dpsi) {
    return 4.0 * (dpsi.squaredNorm() - std::norm(psi.dot(dpsi)));
}

StateDerivative state_and_derivative(const ModelParams &params, const StateVector &initial,
                                     double t, Frame frame) {
    return derive(params, eigendecompose(generator_m(params), initial), initial, t, frame);
}

QfiPoint qfi_pure(const ModelParams &params, const StateVector &initial, double t, Frame frame) {
    const EigenSystem eig = eigendecompose(generator_m(params), initial);
    return evaluate_point(params, eig, initial, t, frame);
}

double qfi_mixed(const SpectralDecomposition &d) {
    const std::size_t n = d.probs.size();
    if (d.dprobs.size() != n || d.states.size() != n || d.dstates.size() != n) {
        throw ValidationError("spectral decomposition fields differ in length");
    }
    const double total = std::accumulate(d.probs.begin(), d.probs.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-8) {
        throw ValidationError("spectral decomposition probabilities sum to " +
                              std::to_string(total) + ", not 1");
    }

    double classical = 0.0;
    double quantum = 0.0;
    double coherence = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = d.probs[i];
        if (p >= kDropProbability) {
            classical += d.dprobs[i] * d.dprobs[i] / p;
        }
        quantum += 4.0 * p * d.dstates[i].squaredNorm();
        for (std::size_t j = 0; j < n; ++j) {
            const double sum = p + d.probs[j];
            if (sum < kDropProbability) {
                continue;
            }
            coherence += 8.0 * p * d.probs[j] / sum * std::norm(d.states[j].dot(d.dstates[i]));
        }
    }
    return classical + quantum - coherence;
}

double cramer_rao_bound(double fisher, long nu) {
    if (nu < 1) {
        throw ValidationError("number of repetitions must be >= 1");
    }
    if (!std::isfinite(fisher) || fisher < 0.0) {
        throw ValidationError("Fisher information must be finite and >= 0");
    }
    if (fisher == 0.0) {
        throw NumericError("zero Fisher information: the estimate is unbounded");
    }
    return 1.0 / std::sqrt(static_cast<double>(nu) * fisher);
}

QfiSeries qfi_time_series(const ModelParams &params, const StateVector &initial, double t_max,
                          double dt, Frame frame, std::size_t max_samples) {
    std::vector<double> times;
    QfiSeries series = empty_series(t_max, dt, frame, max_samples, times);
    const EigenSystem eig = eigendecompose(generator_m(params), initial);
    const auto n = static_cast<std::ptrdiff_t>(times.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        series.points[idx] = evaluate_point(params, eig, initial, times[idx], frame);
    }
    return series;
}

std::vector<QfiSweepRow> qfi_delta_sweep(const ModelParams &tmpl, double t_fixed,
                                         std::span<const double> deltas,
                                         const StateVector &initial, Frame frame) {
    std::vector<QfiSweepRow> rows(deltas.size());
    const auto n = static_cast<std::ptrdiff_t>(deltas.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const ModelParams p = tmpl.with_delta(deltas[idx]);
        rows[idx] = QfiSweepRow{deltas[idx], qfi_pure(p, initial, t_fixed, frame).value};
    }
    return rows;
}

namespace reference {

QfiSeries qfi_time_series(const ModelParams &params, const StateVector &initial, double t_max,
                          double dt, Frame frame, std::size_t max_samples) {
    std::vector<double> times;
    QfiSeries series = empty_series(t_max, dt, frame, max_samples, times);
    const EigenSystem eig = eigendecompose(generator_m(params), initial);
    for (std::size_t i = 0; i < times.size(); ++i) {
        series.points[i] = evaluate_point(params, eig, initial, times[i], frame);
    }
    return series;
}

std::vector<QfiSweepRow> qfi_delta_sweep(const ModelParams &tmpl, double t_fixed,
                                         std::span<const double> deltas,
                                         const StateVector &initial, Frame frame) {
    std::vector<QfiSweepRow> rows;
    rows.reserve(deltas.size());
    for (const double delta : deltas) {
        rows.push_back(
            QfiSweepRow{delta, qfi_pure(tmpl.with_delta(delta), initial, t_fixed, frame).value});
    }
    return rows;
}

} // namespace reference

} // namespace nvrot
