#include "nvrot/core_model.hpp"

#include <cmath>
#include <string>

#include "nvrot/errors.hpp"

namespace nvrot {

namespace {

// mu_B is quoted in MHz/mT while every other frequency is in GHz.
constexpr double kMhzPerGhz = 1000.0;

void require_finite(double value, const char *name) {
    if (!std::isfinite(value)) {
        throw ValidationError(std::string("model parameter '") + name + "' must be finite");
    }
}

} // namespace

ModelParams::ModelParams(const Values &values) : values_(values) {
    require_finite(values.d_zfs, "d_zfs");
    require_finite(values.g_e, "g_e");
    require_finite(values.mu_b, "mu_b");
    require_finite(values.b_field, "b_field");
    require_finite(values.omega_field, "omega_field");
    require_finite(values.omega_rot, "omega_rot");
    if (values.d_zfs < 0.0) {
        throw ValidationError("model parameter 'd_zfs' must be >= 0");
    }
    if (values.b_field < 0.0) {
        throw ValidationError("model parameter 'b_field' must be >= 0");
    }
}

double ModelParams::field_for_coupling(double a, double g_e, double mu_b) {
    if (!std::isfinite(a) || a < 0.0) {
        throw ValidationError("coupling A must be finite and >= 0");
    }
    if (g_e * mu_b == 0.0) {
        throw ValidationError("g_e * mu_b must be nonzero to convert a coupling to a field");
    }
    return a * std::numbers::sqrt2 * kMhzPerGhz / (g_e * mu_b);
}

ModelParams ModelParams::from_coupling(double delta, double a, double d_zfs) {
    Values v;
    v.d_zfs = d_zfs;
    v.omega_field = 0.0;
    v.omega_rot = delta;
    v.b_field = field_for_coupling(a, v.g_e, v.mu_b);
    return ModelParams(v);
}

double ModelParams::a_coupling() const {
    return values_.g_e * values_.mu_b * values_.b_field / std::numbers::sqrt2 / kMhzPerGhz;
}

ModelParams ModelParams::with_delta(double delta) const {
    Values v = values_;
    v.omega_rot = v.omega_field + delta;
    return ModelParams(v);
}

ModelParams ModelParams::with_coupling(double a) const {
    Values v = values_;
    v.b_field = field_for_coupling(a, v.g_e, v.mu_b);
    return ModelParams(v);
}

SpinOps SpinOps::standard() {
    const double r = 1.0 / std::numbers::sqrt2;
    SpinOps ops;
    ops.sx << 0.0, r, 0.0,
              r, 0.0, r,
              0.0, r, 0.0;
    ops.sy << 0.0, -kI * r, 0.0,
              kI * r, 0.0, -kI * r,
              0.0, kI * r, 0.0;
    ops.sz = CMat3::Zero();
    ops.sz.diagonal() << 1.0, 0.0, -1.0;
    return ops;
}

const char *to_string(Frame frame) {
    return frame == Frame::lab ? "lab" : "rotating";
}

Frame frame_from_string(const std::string &name) {
    if (name == "lab") {
        return Frame::lab;
    }
    if (name == "rotating") {
        return Frame::rotating;
    }
    throw ValidationError("unknown frame '" + name + "' (expected lab or rotating)");
}

StateVector StateVector::make(const CVec3 &amps, Frame frame, double time, double tol) {
    if (!amps.allFinite()) {
        throw ValidationError("state amplitudes must be finite");
    }
    const double norm2 = amps.squaredNorm();
    if (std::abs(norm2 - 1.0) > tol) {
        throw ValidationError("state is not normalised: |a|^2+|b|^2+|c|^2 = " +
                              std::to_string(norm2));
    }
    return StateVector{amps, frame, time};
}

StateVector StateVector::ket_plus() { return StateVector{CVec3(1.0, 0.0, 0.0)}; }
StateVector StateVector::ket_zero() { return StateVector{CVec3(0.0, 1.0, 0.0)}; }
StateVector StateVector::ket_minus() { return StateVector{CVec3(0.0, 0.0, 1.0)}; }

Mat3 rotation_matrix_z(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Mat3 r;
    r << c, -s, 0.0,
         s, c, 0.0,
         0.0, 0.0, 1.0;
    return r;
}

SpinOps rotate_spin_ops_matrix(const SpinOps &ops, double angle) {
    const Mat3 r = rotation_matrix_z(angle);
    const CMat3 *column[3] = {&ops.sx, &ops.sy, &ops.sz};
    SpinOps out;
    CMat3 *rotated[3] = {&out.sx, &out.sy, &out.sz};
    for (int i = 0; i < 3; ++i) {
        *rotated[i] = CMat3::Zero();
        for (int j = 0; j < 3; ++j) {
            *rotated[i] += r(i, j) * *column[j];
        }
    }
    return out;
}

SpinOps rotate_spin_ops_conjugation(const SpinOps &ops, double angle) {
    // Sz is diagonal, so exp(-i angle Sz) is exact phase-by-phase.
    PhaseMap r;
    for (int k = 0; k < 3; ++k) {
        r.diagonal()(k) = std::exp(-kI * angle * kSpinProjection(k));
    }
    const PhaseMap r_dag(r.diagonal().conjugate());
    return SpinOps{r_dag * ops.sx * r, r_dag * ops.sy * r, r_dag * ops.sz * r};
}

CMat3 hamiltonian_lab(const ModelParams &params, double t) {
    const SpinOps s = SpinOps::standard();
    const double phi = kTwoPi * params.delta() * t;
    const double zeeman = std::numbers::sqrt2 * params.a_coupling(); // g_e mu_B B in GHz
    return params.d_zfs() * s.sz * s.sz + zeeman * (std::cos(phi) * s.sx - std::sin(phi) * s.sy);
}

GeneratorM generator_m(const ModelParams &params) {
    const double delta = params.delta();
    const double a = params.a_coupling();
    GeneratorM g;
    g.m << delta, a, 0.0,
           a, -params.d_zfs(), a,
           0.0, a, -delta;
    return g;
}

PhaseMap frame_phase_map(const ModelParams &params, double t) {
    const double delta = params.delta();
    const double d = params.d_zfs();
    PhaseMap phi;
    phi.diagonal() << std::exp(kI * (kTwoPi * (delta - d) * t)),
                      std::exp(-kI * (kTwoPi * d * t)),
                      std::exp(-kI * (kTwoPi * (delta + d) * t));
    return phi;
}

} // namespace nvrot
