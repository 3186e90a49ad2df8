#include "nvrot/reproduce.hpp"

#include <fstream>

#include "nvrot/analysis.hpp"
#include "nvrot/errors.hpp"
#include "nvrot/evolution.hpp"
#include "nvrot/metrology.hpp"
#include "nvrot/output.hpp"
#include "nvrot/spectrum.hpp"

namespace nvrot {

namespace fs = std::filesystem;

namespace {

constexpr double kFig1Coupling = 10.0;
constexpr double kFig2Coupling = 10.0;
constexpr double kFig2Deltas[] = {0.0, 10.8, 40.0};
constexpr double kFig2TMax = 2.0;
constexpr double kFig2Dt = 0.001;
constexpr double kFig3Couplings[] = {5.0, 10.0, 15.0};
constexpr double kFig3Delta = 20.0;
constexpr double kFig3Dt = 0.05;
constexpr double kFig4Couplings[] = {5.0, 10.0, 15.0, 20.0};
constexpr double kFig4Time = 10.0;
constexpr double kPrestudyWindows[] = {20.0, 25.0, 30.0, 35.0, 40.0};

std::string tag(double x) { return format_number(x); }

class Writer {
  public:
    explicit Writer(fs::path dir) : dir_(std::move(dir)) {}

    template <class Fn>
    void file(const std::string &name, Fn &&fill) {
        const fs::path path = dir_ / name;
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os) {
            throw ValidationError("cannot write '" + path.string() + "'");
        }
        fill(os);
        written_.push_back(path);
    }

    std::vector<fs::path> take() { return std::move(written_); }

  private:
    fs::path dir_;
    std::vector<fs::path> written_;
};

std::vector<std::string> model_comments(const RunConfig &base) {
    const ModelParams p = base.params();
    return {"units: frequencies in GHz (angular 2*pi*value rad/ns), times in ns",
            "D = " + tag(p.d_zfs()) + ", g_e = " + tag(p.g_e()) + ", mu_B = " + tag(p.mu_b()) +
                " MHz/mT, initial state |0>"};
}

void fig1(const RunConfig &base, Writer &w) {
    const ModelParams tmpl = base.params().with_coupling(kFig1Coupling);
    const auto deltas = linspace(0.0, 50.0, 501);
    const auto rows = sweep_spectrum(tmpl, deltas);
    auto comments = model_comments(base);
    comments.push_back("fig1: analytic line spectrum of P(t), A = 10, delta in [0, 50], 501 points");
    comments.push_back("lines labelled by descending amplitude; absent lines reported as 0");
    w.file("fig1_spectrum.csv", [&](std::ostream &os) { write_spectrum_csv(os, rows, comments); });
}

void fig2(const RunConfig &base, Writer &w) {
    std::vector<std::string> regimes;
    for (const double delta : kFig2Deltas) {
        const ModelParams p = base.params().with_coupling(kFig2Coupling).with_delta(delta);
        const Trajectory traj =
            population_series(p, StateVector::ket_zero(), kFig2TMax, kFig2Dt, Frame::rotating);
        const Spectrum spec = analytic_spectrum(eigendecompose(generator_m(p), StateVector::ket_zero()));
        const BeatClassification beat =
            classify_beat(spec, base.closeness, base.balance, base.crossing_tol);
        auto comments = model_comments(base);
        comments.push_back("fig2: P(t) = |b(t)|^2, A = 10, delta = " + tag(delta) +
                           ", t in [0, 2] ns, dt = 0.001 ns");
        comments.push_back("regime: " + std::string(to_string(beat.regime)) +
                           ", envelope frequency " + tag(beat.envelope_frequency) +
                           ", modulation ratio " + tag(beat.modulation_ratio));
        w.file("fig2_delta_" + tag(delta) + ".csv",
               [&](std::ostream &os) { write_trajectory_csv(os, traj, comments); });
    }
}

void fig3(const RunConfig &base, Writer &w) {
    for (const double a : kFig3Couplings) {
        const ModelParams p = base.params().with_coupling(a).with_delta(kFig3Delta);
        const QfiSeries series =
            qfi_time_series(p, StateVector::ket_zero(), base.fit_hi, kFig3Dt, base.frame);
        const FitResult fit = fit_qfi_window(series, base.fit_lo, base.fit_hi);
        auto comments = model_comments(base);
        comments.push_back("fig3: QFI for Omega versus t, A = " + tag(a) + ", delta = 20, frame = " +
                           to_string(base.frame) + ", t in [0, " + tag(base.fit_hi) +
                           "] ns, dt = 0.05 ns");
        comments.push_back("quadratic fit on [" + tag(base.fit_lo) + ", " + tag(base.fit_hi) +
                           "]: a = " + tag(fit.coeff_a) + ", b = " + tag(fit.coeff_b) +
                           ", c = " + tag(fit.coeff_c));
        w.file("fig3_qfi_A" + tag(a) + ".csv",
               [&](std::ostream &os) { write_qfi_series_csv(os, series, comments); });
        w.file("fig3_fit_A" + tag(a) + ".json",
               [&](std::ostream &os) { write_fit(os, fit, OutputFormat::kv_json); });
    }
}

void fig4(const RunConfig &base, Writer &w) {
    const auto deltas = linspace(0.0, 50.0, 501);
    for (const double a : kFig4Couplings) {
        const ModelParams tmpl = base.params().with_coupling(a);
        const auto rows = qfi_delta_sweep(tmpl, kFig4Time, deltas, StateVector::ket_zero(), base.frame);
        auto comments = model_comments(base);
        comments.push_back("fig4: QFI for Omega versus delta at t = 10 ns, A = " + tag(a) +
                           ", frame = " + to_string(base.frame) + ", delta in [0, 50], 501 points");
        w.file("fig4_qfi_A" + tag(a) + ".csv",
               [&](std::ostream &os) { write_qfi_sweep_csv(os, rows, comments); });
    }
}

void prestudy(const RunConfig &base, Writer &w) {
    const FrameStudy study =
        frame_prestudy(base.params(), kReferenceQfiFits, kReferenceQfiDelta, kPrestudyWindows, kFig3Dt);
    w.file("prestudy_frames.csv", [&](std::ostream &os) {
        std::vector<std::string> comments = model_comments(base);
        comments.push_back("frame pre-study: quadratic fits of QFI(t) at delta = 20 on [0, hi], dt = 0.05");
        comments.push_back("score = worst of |a/a_ref - 1|, |b/b_ref - 1|, |c - c_ref|/0.5 over A; <= 1 agrees");
        comments.push_back("best: frame = " + std::string(to_string(study.best_frame)) +
                           ", window_hi = " + tag(study.best_window_hi) +
                           ", score = " + tag(study.best_score));
        write_comments(os, comments);
        os << "frame,window_hi,a_coupling,coeff_a,coeff_b,coeff_c,rms_residual,score\n";
        for (const auto &e : study.entries) {
            for (std::size_t i = 0; i < e.fits.size(); ++i) {
                const auto &f = e.fits[i];
                os << to_string(e.frame) << ',' << format_number(e.window_hi) << ','
                   << format_number(kReferenceQfiFits[i].a_coupling) << ','
                   << format_number(f.coeff_a) << ',' << format_number(f.coeff_b) << ','
                   << format_number(f.coeff_c) << ',' << format_number(f.rms_residual) << ','
                   << format_number(e.score) << '\n';
            }
        }
    });
}

} // namespace

const std::vector<std::string> &reproduce_targets() {
    static const std::vector<std::string> targets = {"fig1", "fig2", "fig3", "fig4", "prestudy",
                                                     "all"};
    return targets;
}

std::vector<fs::path> reproduce(const std::string &target, const RunConfig &base,
                                const fs::path &out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) {
        throw ValidationError("cannot create output directory '" + out_dir.string() + "'");
    }
    Writer w(out_dir);
    const bool all = target == "all";
    bool matched = all;
    if (all || target == "fig1") {
        fig1(base, w);
        matched = true;
    }
    if (all || target == "fig2") {
        fig2(base, w);
        matched = true;
    }
    if (all || target == "fig3") {
        fig3(base, w);
        matched = true;
    }
    if (all || target == "fig4") {
        fig4(base, w);
        matched = true;
    }
    if (target == "prestudy") {
        prestudy(base, w);
        matched = true;
    }
    if (!matched) {
        throw ValidationError("unknown reproduce target '" + target + "'");
    }
    return w.take();
}

} // namespace nvrot
