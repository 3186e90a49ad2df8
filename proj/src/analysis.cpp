#include "nvrot/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "nvrot/errors.hpp"

namespace nvrot {

FitResult fit_quadratic(std::span<const double> t, std::span<const double> f) {
    if (t.size() != f.size()) {
        throw ValidationError("fit_quadratic: abscissae and values differ in length");
    }
    if (std::set<double>(t.begin(), t.end()).size() < 3) {
        throw ValidationError("fit_quadratic: rank deficient, need >= 3 distinct abscissae");
    }
    const auto n = static_cast<double>(t.size());
    const double mean = std::accumulate(t.begin(), t.end(), 0.0) / n;
    double scale = 0.0;
    for (const double x : t) {
        scale = std::max(scale, std::abs(x - mean));
    }

    Mat3 normal = Mat3::Zero();
    Vec3 rhs = Vec3::Zero();
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double u = (t[i] - mean) / scale;
        const Vec3 row(1.0, u, u * u);
        normal += row * row.transpose();
        rhs += f[i] * row;
    }
    const Vec3 g = normal.ldlt().solve(rhs);

    // Map alpha + beta u + gamma u^2 with u = (t - mean) / scale back to t.
    FitResult fit;
    fit.coeff_a = g(2) / (scale * scale);
    fit.coeff_b = g(1) / scale - 2.0 * g(2) * mean / (scale * scale);
    fit.coeff_c = g(0) - g(1) * mean / scale + g(2) * mean * mean / (scale * scale);
    fit.window_lo = *std::min_element(t.begin(), t.end());
    fit.window_hi = *std::max_element(t.begin(), t.end());
    fit.n_points = t.size();

    double ss = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double u = (t[i] - mean) / scale;
        const double r = f[i] - (g(0) + u * (g(1) + u * g(2)));
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

FitResult fit_qfi_window(const QfiSeries &series, double lo, double hi) {
    std::vector<double> t;
    std::vector<double> f;
    for (const auto &p : series.points) {
        if (p.t >= lo - 1e-12 && p.t <= hi + 1e-12) {
            t.push_back(p.t);
            f.push_back(p.value);
        }
    }
    FitResult fit = fit_quadratic(t, f);
    fit.window_lo = lo;
    fit.window_hi = hi;
    return fit;
}

std::vector<ScalingRow> scaling_study(const ModelParams &base, std::span<const double> a_values,
                                      double delta, FitWindow window, double dt, Frame frame) {
    std::vector<ScalingRow> rows;
    rows.reserve(a_values.size());
    for (const double a : a_values) {
        if (!(a > 0.0)) {
            throw ValidationError("scaling_study: couplings must be positive");
        }
        const ModelParams p = base.with_coupling(a).with_delta(delta);
        const QfiSeries series =
            qfi_time_series(p, StateVector::ket_zero(), window.hi, dt, frame);
        ScalingRow row;
        row.a_coupling = a;
        row.fit = fit_qfi_window(series, window.lo, window.hi);
        row.coeff_a = row.fit.coeff_a;
        row.coeff_a_times_a2 = row.coeff_a * a * a;
        rows.push_back(row);
    }
    return rows;
}

double scaling_spread(std::span<const ScalingRow> rows) {
    if (rows.empty()) {
        throw ValidationError("scaling_spread: no rows");
    }
    double lo = rows.front().coeff_a_times_a2;
    double hi = lo;
    double sum = 0.0;
    for (const auto &r : rows) {
        lo = std::min(lo, r.coeff_a_times_a2);
        hi = std::max(hi, r.coeff_a_times_a2);
        sum += r.coeff_a_times_a2;
    }
    const double mean = sum / static_cast<double>(rows.size());
    return (hi - lo) / std::abs(mean);
}

double reference_deviation(const FitResult &fit, const ReferenceFit &ref) {
    const double da = std::abs(fit.coeff_a - ref.coeff_a) / std::abs(ref.coeff_a);
    const double db = std::abs(fit.coeff_b - ref.coeff_b) / std::abs(ref.coeff_b);
    const double dc = std::abs(fit.coeff_c - ref.coeff_c) / 0.5;
    return std::max({da, db, dc});
}

FrameStudy frame_prestudy(const ModelParams &base, std::span<const ReferenceFit> refs,
                          double delta, std::span<const double> window_his, double dt) {
    if (refs.empty() || window_his.empty()) {
        throw ValidationError("frame_prestudy needs reference fits and windows");
    }
    FrameStudy study;
    bool first = true;
    for (const Frame frame : {Frame::rotating, Frame::lab}) {
        for (const double hi : window_his) {
            FrameStudyEntry entry;
            entry.frame = frame;
            entry.window_hi = hi;
            for (const auto &ref : refs) {
                const ModelParams p = base.with_coupling(ref.a_coupling).with_delta(delta);
                const QfiSeries series = qfi_time_series(p, StateVector::ket_zero(), hi, dt, frame);
                const FitResult fit = fit_qfi_window(series, 0.0, hi);
                entry.score = std::max(entry.score, reference_deviation(fit, ref));
                entry.fits.push_back(fit);
            }
            if (first || entry.score < study.best_score) {
                study.best_frame = frame;
                study.best_window_hi = hi;
                study.best_score = entry.score;
                first = false;
            }
            study.entries.push_back(std::move(entry));
        }
    }
    return study;
}

} // namespace nvrot
