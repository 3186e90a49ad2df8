#include "nvrot/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "nvrot/analysis.hpp"
#include "nvrot/config.hpp"
#include "nvrot/errors.hpp"
#include "nvrot/evolution.hpp"
#include "nvrot/metrology.hpp"
#include "nvrot/output.hpp"
#include "nvrot/reproduce.hpp"
#include "nvrot/spectrum.hpp"

namespace nvrot {

namespace {

constexpr const char *kUnitsNote =
    "Units: every frequency (D, A, delta, Omega, omega, spectral lines) is given in GHz,\n"
    "i.e. the number v stands for an angular frequency 2*pi*v rad/ns. Times are in ns,\n"
    "B in mT, mu_B in MHz/mT.";

using Command = std::function<void(const RunConfig &, std::ostream &)>;

std::vector<std::string> run_comments(const RunConfig &c, const std::string &what) {
    const ModelParams p = c.params();
    return {what, "D = " + format_number(p.d_zfs()) + ", A = " + format_number(p.a_coupling()) +
                      ", delta = " + format_number(p.delta()) + " (GHz)"};
}

void cmd_simulate(const RunConfig &c, std::ostream &os) {
    const Trajectory traj =
        population_series(c.params(), c.initial_state(), c.t_max, c.dt, c.frame, c.max_samples);
    write_trajectory_csv(os, traj,
                         run_comments(c, "population of |0>, frame = " + std::string(to_string(c.frame))));
}

void cmd_spectrum(const RunConfig &c, std::ostream &os, const std::string &periodogram_out) {
    const ModelParams p = c.params();
    const StateVector initial = c.initial_state();
    const Spectrum spec = analytic_spectrum(eigendecompose(generator_m(p), initial));
    const SpectrumRow row = spectrum_row(p.delta(), spec);
    write_spectrum_csv(os, std::span(&row, 1), run_comments(c, "analytic line spectrum of P(t)"));
    if (periodogram_out.empty()) {
        return;
    }
    std::ofstream pg_os(periodogram_out, std::ios::binary | std::ios::trunc);
    if (!pg_os) {
        throw ValidationError("cannot write '" + periodogram_out + "'");
    }
    const Trajectory traj =
        population_series(p, initial, c.t_max, c.dt, Frame::rotating, c.max_samples);
    const Periodogram pg = periodogram(traj, c.zero_pad, c.window);
    write_periodogram_csv(pg_os, pg,
                          run_comments(c, "periodogram of P(t), window = " +
                                              std::string(to_string(c.window)) + ", zero pad = " +
                                              std::to_string(c.zero_pad)));
}

void cmd_sweep_spectrum(const RunConfig &c, std::ostream &os) {
    const auto deltas = c.delta_grid.values();
    const auto rows = sweep_spectrum(c.params(), deltas, c.initial_state());
    write_spectrum_csv(os, rows, run_comments(c, "analytic line spectra over the delta grid"));
}

void cmd_crossing(const RunConfig &c, std::ostream &os) {
    const CrossingResult r = find_frequency_crossing(c.params(), c.delta_grid.lo, c.delta_grid.hi);
    os << "delta_star,indicator\n"
       << format_number(r.delta) << ',' << format_number(r.indicator) << '\n';
}

void cmd_classify(const RunConfig &c, std::ostream &os) {
    const ModelParams p = c.params();
    const Spectrum spec = analytic_spectrum(eigendecompose(generator_m(p), c.initial_state()));
    const BeatClassification b = classify_beat(spec, c.closeness, c.balance, c.crossing_tol);
    os << "delta,regime,envelope_frequency,modulation_ratio\n"
       << format_number(p.delta()) << ',' << to_string(b.regime) << ','
       << format_number(b.envelope_frequency) << ',' << format_number(b.modulation_ratio) << '\n';
}

void cmd_qfi(const RunConfig &c, std::ostream &os) {
    const QfiSeries series =
        qfi_time_series(c.params(), c.initial_state(), c.t_max, c.dt, c.frame, c.max_samples);
    auto comments = run_comments(c, "QFI for Omega, frame = " + std::string(to_string(c.frame)));
    const double last = series.points.back().value;
    if (last > 0.0) {
        comments.push_back("Cramer-Rao bound at t = " + format_number(series.points.back().t) +
                           " ns with nu = " + std::to_string(c.nu) + ": " +
                           format_number(cramer_rao_bound(last, c.nu)));
    }
    write_qfi_series_csv(os, series, comments);
}

void cmd_qfi_sweep(const RunConfig &c, std::ostream &os) {
    const auto deltas = c.delta_grid.values();
    const auto rows = qfi_delta_sweep(c.params(), c.t_fixed, deltas, c.initial_state(), c.frame);
    write_qfi_sweep_csv(os, rows,
                        run_comments(c, "QFI for Omega at t = " + format_number(c.t_fixed) +
                                            " ns, frame = " + to_string(c.frame)));
}

void cmd_fit_qfi(const RunConfig &c, std::ostream &os) {
    const QfiSeries series =
        qfi_time_series(c.params(), c.initial_state(), c.fit_hi, c.dt, c.frame, c.max_samples);
    const FitResult fit = fit_qfi_window(series, c.fit_lo, c.fit_hi);
    write_fit(os, fit, c.format, run_comments(c, "quadratic fit of the QFI growth curve"));
}

void cmd_scaling(const RunConfig &c, std::ostream &os) {
    const ModelParams p = c.params();
    const auto rows =
        scaling_study(p, c.a_values, p.delta(), FitWindow{c.fit_lo, c.fit_hi}, c.dt, c.frame);
    auto comments = run_comments(c, "leading QFI fit coefficient versus coupling");
    comments.push_back("spread of coeff_a * A^2: " + format_number(scaling_spread(rows)));
    write_scaling_csv(os, rows, comments);
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot read config file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Spin-1 NV center under mechanical rotation and a rotating field: dynamics, "
                 "quantum beats and rotation-rate QFI.\n" +
                 std::string(kUnitsNote)};
    app.name("nvrot");
    app.require_subcommand(1);

    std::string config_path;
    std::string dump_path;
    app.add_option("--config", config_path, "key = value configuration file")
        ->check(CLI::ExistingFile);
    app.add_option("--dump-config", dump_path, "write the resolved configuration to this file");

    std::map<std::string, std::string> flag_values;
    std::map<std::string, CLI::Option *> flag_options;
    for (const auto &s : setting_table()) {
        flag_options[s.key] = app.add_option(s.flag, flag_values[s.key], s.help);
    }

    std::map<std::string, Command> commands;
    auto add = [&](const char *name, const char *help, Command fn) {
        app.add_subcommand(name, help)->fallthrough();
        commands[name] = std::move(fn);
    };
    add("simulate", "population P(t) of |0> on [0, t_max] -> t_ns,p0", cmd_simulate);
    std::string periodogram_out;
    add("spectrum", "analytic spectrum at one delta -> delta,omega1..3,k0..3",
        [&periodogram_out](const RunConfig &c, std::ostream &os) {
            cmd_spectrum(c, os, periodogram_out);
        });
    app.get_subcommand("spectrum")
        ->add_option("--periodogram-out", periodogram_out,
                     "also write the numerical periodogram of P(t) to this CSV");
    add("sweep-spectrum", "analytic spectra over the delta grid", cmd_sweep_spectrum);
    add("crossing", "delta where two line frequencies coincide, bracket [lo, hi]", cmd_crossing);
    add("classify", "dynamical regime: single_line, crossed, beating or generic", cmd_classify);
    add("qfi", "QFI for Omega on [0, t_max] -> t_ns,qfi", cmd_qfi);
    add("qfi-sweep", "QFI for Omega over the delta grid at fixed t -> delta,qfi", cmd_qfi_sweep);
    add("fit-qfi", "quadratic fit of the QFI growth curve on [fit_lo, fit_hi]", cmd_fit_qfi);
    add("scaling", "leading fit coefficient for each coupling in a_values", cmd_scaling);

    std::string target;
    std::string out_dir = "reproduced";
    CLI::App *repro = app.add_subcommand("reproduce", "regenerate figure data into --out-dir");
    repro->fallthrough();
    repro->add_option("target", target, "fig1, fig2, fig3, fig4, prestudy or all")
        ->required()
        ->check(CLI::IsMember(reproduce_targets()));
    repro->add_option("--out-dir", out_dir, "directory for the generated files");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "nvrot: " << e.what() << " (run with --help for usage)\n";
        return kExitUsage;
    }

    try {
        Settings file_settings;
        if (!config_path.empty()) {
            file_settings = parse_settings(read_file(config_path), config_path);
        }
        Settings flag_settings;
        for (const auto &s : setting_table()) {
            if (flag_options[s.key]->count() > 0) {
                flag_settings[s.key] = SettingValue{flag_values[s.key], std::string("flag ") + s.flag};
            }
        }
        const RunConfig config = build_config(merge_settings(file_settings, flag_settings));

        if (!dump_path.empty()) {
            std::ofstream dump(dump_path, std::ios::binary | std::ios::trunc);
            if (!dump) {
                throw ValidationError("cannot write '" + dump_path + "'");
            }
            dump << dump_config(config);
        }

        if (repro->parsed()) {
            for (const auto &path : reproduce(target, config, out_dir)) {
                out << path.string() << '\n';
            }
            return kExitOk;
        }

        const CLI::App *sub = app.get_subcommands().front();
        const Command &command = commands.at(sub->get_name());
        if (config.output == "-") {
            command(config, out);
        } else {
            std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
            if (!file) {
                throw ValidationError("output path '" + config.output + "' is not writable");
            }
            command(config, file);
        }
        return kExitOk;
    } catch (const UsageError &e) {
        err << "nvrot: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ValidationError &e) {
        err << "nvrot: " << e.what() << '\n';
        return kExitValidation;
    } catch (const NumericError &e) {
        err << "nvrot: " << e.what() << '\n';
        return kExitValidation;
    }
}

} // namespace nvrot
