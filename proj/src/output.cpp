#include "nvrot/output.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace nvrot {

namespace {

void header(std::ostream &os, std::span<const std::string> comments, const char *columns) {
    write_comments(os, comments);
    os << columns << '\n';
}

template <std::size_t N>
void row(std::ostream &os, const std::array<double, N> &values) {
    for (std::size_t i = 0; i < N; ++i) {
        os << (i > 0 ? "," : "") << format_number(values[i]);
    }
    os << '\n';
}

} // namespace

std::string format_number(double value) {
    if (value == 0.0) {
        value = 0.0;
    }
    std::array<char, 64> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.15g", value);
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

std::string format_exact(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    (void)ec;
    return std::string(buf.data(), ptr);
}

void write_comments(std::ostream &os, std::span<const std::string> comments) {
    for (const auto &c : comments) {
        os << "# " << c << '\n';
    }
}

void write_trajectory_csv(std::ostream &os, const Trajectory &traj,
                          std::span<const std::string> comments) {
    header(os, comments, "t_ns,p0");
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        row<2>(os, {traj.times[i], traj.populations[i]});
    }
}

void write_spectrum_csv(std::ostream &os, std::span<const SpectrumRow> rows,
                        std::span<const std::string> comments) {
    header(os, comments, "delta,omega1,omega2,omega3,k0,k1,k2,k3");
    for (const auto &r : rows) {
        row<8>(os, {r.delta, r.omega[0], r.omega[1], r.omega[2], r.k0, r.k[0], r.k[1], r.k[2]});
    }
}

void write_periodogram_csv(std::ostream &os, const Periodogram &pg,
                           std::span<const std::string> comments) {
    header(os, comments, "frequency,magnitude");
    for (std::size_t i = 0; i < pg.frequency.size(); ++i) {
        row<2>(os, {pg.frequency[i], pg.magnitude[i]});
    }
}

void write_qfi_series_csv(std::ostream &os, const QfiSeries &series,
                          std::span<const std::string> comments) {
    header(os, comments, "t_ns,qfi");
    for (const auto &p : series.points) {
        row<2>(os, {p.t, p.value});
    }
}

void write_qfi_sweep_csv(std::ostream &os, std::span<const QfiSweepRow> rows,
                         std::span<const std::string> comments) {
    header(os, comments, "delta,qfi");
    for (const auto &r : rows) {
        row<2>(os, {r.delta, r.qfi});
    }
}

void write_scaling_csv(std::ostream &os, std::span<const ScalingRow> rows,
                       std::span<const std::string> comments) {
    header(os, comments, "a_coupling,coeff_a,coeff_a_times_a2");
    for (const auto &r : rows) {
        row<3>(os, {r.a_coupling, r.coeff_a, r.coeff_a_times_a2});
    }
}

void write_fit(std::ostream &os, const FitResult &fit, OutputFormat format,
               std::span<const std::string> comments) {
    if (format == OutputFormat::csv) {
        header(os, comments, "coeff_a,coeff_b,coeff_c,rms_residual,window_lo,window_hi");
        row<6>(os, {fit.coeff_a, fit.coeff_b, fit.coeff_c, fit.rms_residual, fit.window_lo,
                    fit.window_hi});
        return;
    }
    nlohmann::ordered_json j;
    j["coeff_a"] = fit.coeff_a;
    j["coeff_b"] = fit.coeff_b;
    j["coeff_c"] = fit.coeff_c;
    j["rms_residual"] = fit.rms_residual;
    j["window_lo"] = fit.window_lo;
    j["window_hi"] = fit.window_hi;
    os << j.dump(2) << '\n';
}

} // namespace nvrot
