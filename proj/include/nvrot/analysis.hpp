#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nvrot/core_model.hpp"
#include "nvrot/metrology.hpp"

namespace nvrot {

/// Least-squares parabola F(t) ~ a t^2 + b t + c.
struct FitResult {
    double coeff_a = 0.0;
    double coeff_b = 0.0;
    double coeff_c = 0.0;
    double rms_residual = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    std::size_t n_points = 0;

    [[nodiscard]] double evaluate(double t) const { return (coeff_a * t + coeff_b) * t + coeff_c; }
};

/// Ordinary least squares through normal equations on a centred, scaled
/// abscissa. Throws ValidationError with fewer than three distinct abscissae.
FitResult fit_quadratic(std::span<const double> t, std::span<const double> f);

/// Fits the points of @p series whose time lies in [lo, hi].
FitResult fit_qfi_window(const QfiSeries &series, double lo, double hi);

struct FitWindow {
    double lo = 0.0;
    double hi = 30.0;
};

struct ScalingRow {
    double a_coupling = 0.0;
    double coeff_a = 0.0;
    double coeff_a_times_a2 = 0.0;
    FitResult fit;
};

/// One quadratic fit of the QFI growth curve per coupling in @p a_values.
std::vector<ScalingRow> scaling_study(const ModelParams &base, std::span<const double> a_values,
                                      double delta, FitWindow window, double dt,
                                      Frame frame = kDefaultQfiFrame);

/// (max - min) / mean of coeff_a * A^2 across the rows.
double scaling_spread(std::span<const ScalingRow> rows);

/// Quadratic fit coefficients a QFI curve is compared against.
struct ReferenceFit {
    double a_coupling;
    double coeff_a;
    double coeff_b;
    double coeff_c;
};

/// Fits reported for delta = 20 at A = 5, 10, 15.
inline constexpr ReferenceFit kReferenceQfiFits[] = {
    {5.0, 0.1764, -0.3514, 2.0064},
    {10.0, 0.0449, -0.0888, 2.0013},
    {15.0, 0.02, -0.0404, 2.0082},
};
inline constexpr double kReferenceQfiDelta = 20.0;

/// Worst normalised deviation of @p fit from @p ref: relative error of a and b,
/// and |c - c_ref| / 0.5. A value <= 1 meets the 25% / +-0.5 agreement band.
double reference_deviation(const FitResult &fit, const ReferenceFit &ref);

struct FrameStudyEntry {
    Frame frame = Frame::rotating;
    double window_hi = 0.0;
    std::vector<FitResult> fits; ///< one per reference row
    double score = 0.0;          ///< max reference_deviation over the rows
};

struct FrameStudy {
    std::vector<FrameStudyEntry> entries;
    Frame best_frame = Frame::rotating;
    double best_window_hi = 0.0;
    double best_score = 0.0;
};

/**
 * @brief Decides which frame's QFI reproduces the reference fits.
 *
 * For each frame and each window [0, hi] in @p window_his, fits the QFI series
 * of every reference coupling and scores it with reference_deviation. The
 * entry with the lowest score wins; ties keep the earlier entry.
 */
FrameStudy frame_prestudy(const ModelParams &base, std::span<const ReferenceFit> refs,
                          double delta, std::span<const double> window_his, double dt);

} // namespace nvrot
