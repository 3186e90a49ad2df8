#pragma once

/**
 * @file
 * Physical parameters, spin-1 operator algebra, rotation maps and the
 * Hamiltonians of an NV center spinning about z inside a field that also
 * rotates about z.
 *
 * Units: every frequency is stored as the quoted number in GHz and denotes
 * an angular frequency of 2*pi*value rad/ns. Times are in ns.
 * Dynamical phases are therefore 2*pi*frequency*time.
 */

#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Dense>

namespace nvrot {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CVec3 = Eigen::Vector3cd;
using CMat3 = Eigen::Matrix3cd;
using PhaseMap = Eigen::DiagonalMatrix<Complex, 3>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Spin projection m for each basis slot, in the fixed order (|1>, |0>, |-1>).
inline const Vec3 kSpinProjection{1.0, 0.0, -1.0};

/**
 * @brief Physical constants and control parameters of the rotating NV model.
 *
 * Immutable and validated on construction: all values finite, D >= 0 and
 * B >= 0. Frequencies in GHz, mu_B in MHz/mT, B in mT.
 */
class ModelParams {
  public:
    struct Values {
        double d_zfs = 2.87;      ///< zero-field splitting D
        double g_e = 2.0;         ///< Lande factor
        double mu_b = 14.0;       ///< Bohr magneton, MHz/mT
        double b_field = 0.0;     ///< field magnitude B, mT
        double omega_field = 0.0; ///< field rotation rate
        double omega_rot = 0.0;   ///< mechanical rotation rate

        bool operator==(const Values &) const = default;
    };

    ModelParams() : ModelParams(Values{}) {}
    explicit ModelParams(const Values &values);

    /// Field-at-rest parametrisation: omega_field = 0, omega_rot = delta and
    /// B chosen so that a_coupling() == a.
    static ModelParams from_coupling(double delta, double a, double d_zfs = 2.87);

    /// Field strength in mT that produces coupling @p a for the given g_e, mu_B.
    static double field_for_coupling(double a, double g_e, double mu_b);

    [[nodiscard]] const Values &values() const { return values_; }
    [[nodiscard]] double d_zfs() const { return values_.d_zfs; }
    [[nodiscard]] double g_e() const { return values_.g_e; }
    [[nodiscard]] double mu_b() const { return values_.mu_b; }
    [[nodiscard]] double b_field() const { return values_.b_field; }
    [[nodiscard]] double omega_field() const { return values_.omega_field; }
    [[nodiscard]] double omega_rot() const { return values_.omega_rot; }

    /// Effective rotation rate of the field seen by the spin, Omega - omega.
    [[nodiscard]] double delta() const { return values_.omega_rot - values_.omega_field; }

    /// A = g_e mu_B B / sqrt(2), converted from MHz to GHz.
    [[nodiscard]] double a_coupling() const;

    /// Copy with omega_rot moved so that delta() == @p delta.
    [[nodiscard]] ModelParams with_delta(double delta) const;
    /// Copy with B rescaled so that a_coupling() == @p a.
    [[nodiscard]] ModelParams with_coupling(double a) const;

    bool operator==(const ModelParams &) const = default;

  private:
    Values values_;
};

/// Spin-1 operators in the basis (|1>, |0>, |-1>).
struct SpinOps {
    CMat3 sx;
    CMat3 sy;
    CMat3 sz;

    static SpinOps standard();
};

enum class Frame { lab, rotating };

const char *to_string(Frame frame);
Frame frame_from_string(const std::string &name);

/// Normalised pure state (a, b, c) over (|1>, |0>, |-1>) tagged with its frame.
struct StateVector {
    CVec3 amps = CVec3::Zero();
    Frame frame = Frame::rotating;
    double time = 0.0;

    /// Throws ValidationError unless |a|^2 + |b|^2 + |c|^2 = 1 within @p tol.
    static StateVector make(const CVec3 &amps, Frame frame = Frame::rotating, double time = 0.0,
                            double tol = 1e-12);

    static StateVector ket_plus();
    static StateVector ket_zero();
    static StateVector ket_minus();

    [[nodiscard]] double norm() const { return amps.norm(); }
    [[nodiscard]] double population(int slot) const { return std::norm(amps(slot)); }
};

/// Time-independent rotating-frame generator [[D', A, 0], [A, -D, A], [0, A, -D']]
/// with D' = delta.
struct GeneratorM {
    Mat3 m = Mat3::Zero();
};

/// Counter-clockwise rotation about z by @p angle radians.
Mat3 rotation_matrix_z(double angle);

/// Applies rotation_matrix_z(angle) to the operator column (Sx, Sy, Sz).
SpinOps rotate_spin_ops_matrix(const SpinOps &ops, double angle);

/// Conjugates each operator: S -> R^dagger S R with R = exp(-i angle Sz).
SpinOps rotate_spin_ops_conjugation(const SpinOps &ops, double angle);

/**
 * @brief Lab-frame Hamiltonian D Sz^2 + g_e mu_B B [cos(phi) Sx - sin(phi) Sy],
 * phi = 2 pi delta t.
 *
 * Entries are in GHz; diag(D, 0, D) with off-diagonals A exp(+-i phi).
 */
CMat3 hamiltonian_lab(const ModelParams &params, double t);

GeneratorM generator_m(const ModelParams &params);

/// psi_lab = Phi(t) psi_rot with
/// Phi = diag(e^{i2pi(delta-D)t}, e^{-i2pi D t}, e^{-i2pi(delta+D)t}).
PhaseMap frame_phase_map(const ModelParams &params, double t);

} // namespace nvrot
