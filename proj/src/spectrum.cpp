#include "nvrot/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <fftw3.h>

#include "nvrot/errors.hpp"
#include "nvrot/symmetric_eigen.hpp"

namespace nvrot {

namespace {

struct Phasor {
    double omega;
    Complex value; // amplitude * e^{i phase}
    std::array<int, 2> pair;
    int multiplicity;
};

SpectrumRow row_for(const ModelParams &tmpl, double delta, const StateVector &initial) {
    const ModelParams p = tmpl.with_delta(delta);
    return spectrum_row(delta, analytic_spectrum(eigendecompose(generator_m(p), initial)));
}

void require_unit_interval(double value, const char *name) {
    if (!(value > 0.0 && value < 1.0)) {
        throw ValidationError(std::string(name) + " must lie in (0, 1)");
    }
}

double relative_gap(double a, double b) {
    const double hi = std::max(a, b);
    return hi > 0.0 ? std::abs(a - b) / hi : 0.0;
}

} // namespace

double Spectrum::total_weight() const {
    double sum = k0;
    for (const auto &line : lines) {
        sum += line.amplitude * std::cos(line.phase);
    }
    return sum;
}

double Spectrum::evaluate(double t) const {
    double p = k0;
    for (const auto &line : lines) {
        p += line.amplitude * std::cos(kTwoPi * line.omega * t + line.phase);
    }
    return p;
}

Spectrum analytic_spectrum(const EigenSystem &eig) {
    // Projection of each eigen-component onto the |0> slot.
    CVec3 beta;
    for (int k = 0; k < 3; ++k) {
        beta(k) = eig.overlaps(k) * eig.vectors(1, k);
    }

    Spectrum spec;
    spec.k0 = beta.cwiseAbs2().sum();

    std::vector<Phasor> phasors;
    for (int j = 0; j < 3; ++j) {
        for (int k = j + 1; k < 3; ++k) {
            const double omega = eig.lambdas(k) - eig.lambdas(j);
            const Complex value = 2.0 * beta(j) * std::conj(beta(k));
            if (omega <= kLineMergeTolerance) {
                spec.k0 += value.real();
                continue;
            }
            auto same = std::find_if(phasors.begin(), phasors.end(), [omega](const Phasor &p) {
                return std::abs(p.omega - omega) <= kLineMergeTolerance;
            });
            if (same != phasors.end()) {
                same->value += value;
                ++same->multiplicity;
            } else {
                phasors.push_back(Phasor{omega, value, {j, k}, 1});
            }
        }
    }

    for (const auto &p : phasors) {
        if (std::abs(p.value) < kLineAmplitudeFloor) {
            continue;
        }
        SpectralLine line;
        line.omega = p.omega;
        line.amplitude = std::abs(p.value);
        line.phase = line.amplitude > 0.0 ? std::arg(p.value) : 0.0;
        line.pair = p.pair;
        line.multiplicity = p.multiplicity;
        spec.lines.push_back(line);
    }
    std::stable_sort(spec.lines.begin(), spec.lines.end(),
                     [](const SpectralLine &a, const SpectralLine &b) {
                         if (a.amplitude != b.amplitude) {
                             return a.amplitude > b.amplitude;
                         }
                         return a.omega < b.omega;
                     });
    return spec;
}

const char *to_string(Window window) {
    return window == Window::hann ? "hann" : "rectangular";
}

Window window_from_string(const std::string &name) {
    if (name == "rectangular") {
        return Window::rectangular;
    }
    if (name == "hann") {
        return Window::hann;
    }
    throw ValidationError("unknown window '" + name + "' (expected rectangular or hann)");
}

Periodogram periodogram(std::span<const double> times, std::span<const double> samples,
                        int zero_pad_factor, Window window) {
    const std::size_t n = samples.size();
    if (times.size() != n) {
        throw ValidationError("periodogram: times and samples differ in length");
    }
    if (n < 64) {
        throw ValidationError("periodogram: at least 64 samples are required");
    }
    if (zero_pad_factor < 1) {
        throw ValidationError("periodogram: zero-pad factor must be >= 1");
    }
    const double dt = (times[n - 1] - times[0]) / static_cast<double>(n - 1);
    if (!(dt > 0.0)) {
        throw ValidationError("periodogram: time grid must be increasing");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs((times[i] - times[i - 1]) - dt) > 1e-9 * std::max(1.0, dt)) {
            throw ValidationError("periodogram: time grid is not uniform");
        }
    }

    const std::size_t padded = n * static_cast<std::size_t>(zero_pad_factor);
    const std::size_t bins = padded / 2 + 1;

    std::vector<double> input(padded, 0.0);
    double window_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double w = 1.0;
        if (window == Window::hann) {
            w = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(n - 1));
        }
        window_sum += w;
        input[i] = w * samples[i];
    }

    std::vector<fftw_complex> output(bins);
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(padded), input.data(), output.data(),
                                          FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    Periodogram pg;
    pg.bin_width = 1.0 / (static_cast<double>(padded) * dt);
    pg.frequency.resize(bins);
    pg.magnitude.resize(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        const double mag = std::hypot(output[k][0], output[k][1]) / window_sum;
        pg.frequency[k] = static_cast<double>(k) * pg.bin_width;
        pg.magnitude[k] = (k == 0) ? mag : 2.0 * mag;
    }
    return pg;
}

Periodogram periodogram(const Trajectory &traj, int zero_pad_factor, Window window) {
    return periodogram(traj.times, traj.populations, zero_pad_factor, window);
}

std::vector<SpectralPeak> find_peaks(const Periodogram &pg, double min_magnitude) {
    std::vector<SpectralPeak> peaks;
    const auto &m = pg.magnitude;
    for (std::size_t k = 1; k + 1 < m.size(); ++k) {
        // Bin 0 is not doubled; put it on the same scale before comparing.
        const double alpha = k == 1 ? 2.0 * m[0] : m[k - 1];
        if (m[k] < min_magnitude || !(m[k] > alpha) || m[k] < m[k + 1]) {
            continue;
        }
        const double beta = m[k];
        const double gamma = m[k + 1];
        const double denom = alpha - 2.0 * beta + gamma;
        const double offset = denom != 0.0 ? 0.5 * (alpha - gamma) / denom : 0.0;
        peaks.push_back(SpectralPeak{(static_cast<double>(k) + offset) * pg.bin_width,
                                     beta - 0.25 * (alpha - gamma) * offset});
    }
    return peaks;
}

SpectrumRow spectrum_row(double delta, const Spectrum &spec) {
    SpectrumRow row;
    row.delta = delta;
    row.k0 = spec.k0;
    for (std::size_t i = 0; i < spec.lines.size() && i < 3; ++i) {
        row.omega[i] = spec.lines[i].omega;
        row.k[i] = spec.lines[i].amplitude;
    }
    return row;
}

std::vector<SpectrumRow> sweep_spectrum(const ModelParams &tmpl, std::span<const double> deltas,
                                        const StateVector &initial) {
    std::vector<SpectrumRow> rows(deltas.size());
    const auto n = static_cast<std::ptrdiff_t>(deltas.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        rows[idx] = row_for(tmpl, deltas[idx], initial);
    }
    return rows;
}

namespace reference {

std::vector<SpectrumRow> sweep_spectrum(const ModelParams &tmpl, std::span<const double> deltas,
                                        const StateVector &initial) {
    std::vector<SpectrumRow> rows;
    rows.reserve(deltas.size());
    for (const double delta : deltas) {
        rows.push_back(row_for(tmpl, delta, initial));
    }
    return rows;
}

} // namespace reference

double crossing_indicator(const ModelParams &params) {
    const Vec3 l = jacobi_eigen3(generator_m(params).m).values;
    return l(2) - 2.0 * l(1) + l(0);
}

CrossingResult find_frequency_crossing(const ModelParams &tmpl, double delta_lo,
                                       double delta_hi) {
    if (!std::isfinite(delta_lo) || !std::isfinite(delta_hi) || delta_lo >= delta_hi) {
        throw ValidationError("crossing bracket requires finite lo < hi");
    }
    double lo = delta_lo;
    double hi = delta_hi;
    double g_lo = crossing_indicator(tmpl.with_delta(lo));
    const double g_hi = crossing_indicator(tmpl.with_delta(hi));
    if (g_lo == 0.0) {
        return CrossingResult{lo, 0.0, 0};
    }
    if (g_hi == 0.0) {
        return CrossingResult{hi, 0.0, 0};
    }
    if (std::signbit(g_lo) == std::signbit(g_hi)) {
        throw NumericError("no sign change of the crossing indicator on [" +
                           std::to_string(delta_lo) + ", " + std::to_string(delta_hi) + "]");
    }

    CrossingResult result;
    for (result.iterations = 1; result.iterations <= 200; ++result.iterations) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = crossing_indicator(tmpl.with_delta(mid));
        result.delta = mid;
        result.indicator = g_mid;
        if (g_mid == 0.0 || hi - lo <= 1e-12 * std::max(1.0, std::abs(mid))) {
            break;
        }
        if (std::signbit(g_mid) == std::signbit(g_lo)) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    return result;
}

const char *to_string(BeatRegime regime) {
    switch (regime) {
    case BeatRegime::single_line:
        return "single_line";
    case BeatRegime::crossed:
        return "crossed";
    case BeatRegime::beating:
        return "beating";
    case BeatRegime::generic:
        break;
    }
    return "generic";
}

BeatClassification classify_beat(const Spectrum &spec, double closeness, double balance,
                                 double crossing_tol, double amplitude_floor) {
    require_unit_interval(closeness, "closeness");
    require_unit_interval(balance, "balance");
    require_unit_interval(crossing_tol, "crossing_tol");

    std::vector<SpectralLine> lines;
    for (const auto &line : spec.lines) {
        if (line.amplitude > amplitude_floor) {
            lines.push_back(line);
        }
    }

    BeatClassification out;
    if (lines.empty()) {
        return out;
    }
    if (lines.size() == 1) {
        out.regime = lines.front().multiplicity > 1 ? BeatRegime::crossed : BeatRegime::single_line;
        return out;
    }

    auto describe = [](const SpectralLine &a, const SpectralLine &b, BeatRegime regime) {
        return BeatClassification{regime, std::abs(a.omega - b.omega),
                                  std::min(a.amplitude, b.amplitude) /
                                      std::max(a.amplitude, b.amplitude)};
    };

    for (const auto &line : lines) {
        if (line.multiplicity > 1) {
            return BeatClassification{BeatRegime::crossed, 0.0, 1.0};
        }
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            if (relative_gap(lines[i].omega, lines[j].omega) < crossing_tol) {
                return describe(lines[i], lines[j], BeatRegime::crossed);
            }
        }
    }

    const BeatClassification top = describe(lines[0], lines[1], BeatRegime::beating);
    if (relative_gap(lines[0].omega, lines[1].omega) < closeness && top.modulation_ratio > balance) {
        return top;
    }
    out = top;
    out.regime = BeatRegime::generic;
    return out;
}

} // namespace nvrot
