#pragma once

/**
 * @file
 * Line decomposition of the |0> population,
 *   P(t) = k0 + sum_i k_i cos(2 pi omega_i t + phase_i),
 * built exactly from the eigensystem, plus a sampled periodogram used to
 * cross-check it numerically.
 */

#include <array>
#include <span>
#include <vector>

#include "nvrot/core_model.hpp"
#include "nvrot/evolution.hpp"

namespace nvrot {

/// Lines closer than this (GHz) are merged; lines below it fold into k0.
inline constexpr double kLineMergeTolerance = 1e-9;
/// Lines whose amplitude is below this are dropped as round-off.
inline constexpr double kLineAmplitudeFloor = 1e-14;

struct SpectralLine {
    double omega = 0.0;     ///< GHz, >= 0
    double amplitude = 0.0; ///< cosine amplitude, >= 0
    double phase = 0.0;     ///< 0 for real initial states such as |0>
    std::array<int, 2> pair{0, 0}; ///< eigenvalue indices (j < k) of the first contributing pair
    int multiplicity = 1;   ///< number of eigenpairs merged into this line
};

struct Spectrum {
    double k0 = 0.0;
    std::vector<SpectralLine> lines; ///< amplitude-descending

    /// k0 + sum of line amplitudes (cosines at t = 0 for zero phases).
    [[nodiscard]] double total_weight() const;
    [[nodiscard]] double evaluate(double t) const;
};

Spectrum analytic_spectrum(const EigenSystem &eig);

enum class Window { rectangular, hann };

const char *to_string(Window window);
Window window_from_string(const std::string &name);

struct Periodogram {
    double bin_width = 0.0;
    std::vector<double> frequency;
    /// Single-sided magnitude scaled so a cosine of amplitude K peaks near K.
    std::vector<double> magnitude;
};

struct SpectralPeak {
    double frequency = 0.0;
    double magnitude = 0.0;
};

/// Zero-padded discrete Fourier magnitude of uniformly sampled data.
/// Requires >= 64 samples on a uniform grid.
Periodogram periodogram(std::span<const double> times, std::span<const double> samples,
                        int zero_pad_factor = 8, Window window = Window::rectangular);
Periodogram periodogram(const Trajectory &traj, int zero_pad_factor = 8,
                        Window window = Window::rectangular);

/// Local maxima above @p min_magnitude (DC bin excluded), refined by
/// three-point quadratic interpolation.
std::vector<SpectralPeak> find_peaks(const Periodogram &pg, double min_magnitude);

struct SpectrumRow {
    double delta = 0.0;
    std::array<double, 3> omega{0.0, 0.0, 0.0};
    double k0 = 0.0;
    std::array<double, 3> k{0.0, 0.0, 0.0};
};

SpectrumRow spectrum_row(double delta, const Spectrum &spec);

/// One analytic spectrum per delta with the coupling of @p tmpl held fixed.
std::vector<SpectrumRow> sweep_spectrum(const ModelParams &tmpl, std::span<const double> deltas,
                                        const StateVector &initial = StateVector::ket_zero());

/// lambda_3 - 2 lambda_2 + lambda_1; zero where the two smaller eigenvalue
/// gaps coincide.
double crossing_indicator(const ModelParams &params);

struct CrossingResult {
    double delta = 0.0;
    double indicator = 0.0;
    int iterations = 0;
};

/// Bisection root of crossing_indicator on [delta_lo, delta_hi]; throws
/// NumericError("no sign change ...") if the bracket does not straddle a root.
CrossingResult find_frequency_crossing(const ModelParams &tmpl, double delta_lo, double delta_hi);

enum class BeatRegime { single_line, crossed, beating, generic };

const char *to_string(BeatRegime regime);

struct BeatClassification {
    BeatRegime regime = BeatRegime::generic;
    double envelope_frequency = 0.0; ///< |omega_a - omega_b| of the deciding pair
    double modulation_ratio = 0.0;   ///< min(K_a, K_b) / max(K_a, K_b)
};

/**
 * @brief Labels the dynamical regime of a spectrum.
 *
 * - single_line: exactly one line above @p amplitude_floor.
 * - crossed: some pair of lines coincides (merged, or relative frequency
 *   gap below @p crossing_tol).
 * - beating: the two largest lines have relative gap below @p closeness and
 *   amplitude ratio above @p balance.
 * - generic: anything else, including a spectrum with no lines.
 *
 * Thresholds must lie in (0, 1).
 */
BeatClassification classify_beat(const Spectrum &spec, double closeness = 0.15,
                                 double balance = 0.5, double crossing_tol = 0.03,
                                 double amplitude_floor = 1e-9);

namespace reference {

std::vector<SpectrumRow> sweep_spectrum(const ModelParams &tmpl, std::span<const double> deltas,
                                        const StateVector &initial = StateVector::ket_zero());

} // namespace reference

} // namespace nvrot
