#include "nvrot/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nvrot/output.hpp"

namespace nvrot {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

const SettingValue *find(const Settings &s, const std::string &key) {
    const auto it = s.find(key);
    return it == s.end() ? nullptr : &it->second;
}

[[noreturn]] void bad_value(const std::string &key, const SettingValue &v, const char *expected) {
    throw UsageError(v.origin + ": key '" + key + "': cannot parse '" + v.text + "' as " +
                     expected);
}

[[noreturn]] void invalid(const std::string &key, const std::string &what) {
    throw ValidationError("key '" + key + "': " + what);
}

double parse_real_text(std::string_view text, bool &ok) {
    const std::string t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    ok = !t.empty() && ec == std::errc() && ptr == t.data() + t.size();
    return value;
}

double parse_real(const std::string &key, const SettingValue &v) {
    bool ok = false;
    const double value = parse_real_text(v.text, ok);
    if (!ok) {
        bad_value(key, v, "a real number");
    }
    return value;
}

long parse_integer(const std::string &key, const SettingValue &v) {
    const std::string t = trim(v.text);
    long value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        bad_value(key, v, "an integer");
    }
    return value;
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, sep)) {
        parts.push_back(trim(item));
    }
    return parts;
}

std::vector<double> parse_real_list(const std::string &key, const SettingValue &v) {
    std::vector<double> out;
    for (const auto &part : split(v.text, ',')) {
        bool ok = false;
        out.push_back(parse_real_text(part, ok));
        if (!ok) {
            bad_value(key, v, "a comma-separated list of reals");
        }
    }
    if (out.empty()) {
        bad_value(key, v, "a comma-separated list of reals");
    }
    return out;
}

// Each entry is "re" or "re:im".
std::array<Complex, 3> parse_state(const std::string &key, const SettingValue &v) {
    const auto parts = split(v.text, ',');
    if (parts.size() != 3) {
        bad_value(key, v, "three comma-separated amplitudes (re or re:im)");
    }
    std::array<Complex, 3> amps{};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto colon = parts[i].find(':');
        bool ok_re = false;
        bool ok_im = true;
        const double re = parse_real_text(parts[i].substr(0, colon), ok_re);
        double im = 0.0;
        if (colon != std::string::npos) {
            im = parse_real_text(parts[i].substr(colon + 1), ok_im);
        }
        if (!ok_re || !ok_im) {
            bad_value(key, v, "three comma-separated amplitudes (re or re:im)");
        }
        amps[i] = Complex(re, im);
    }
    return amps;
}

template <class Enum, class Fn>
Enum parse_enum(const std::string &key, const SettingValue &v, Fn from_string,
                const char *expected) {
    try {
        return from_string(trim(v.text));
    } catch (const ValidationError &) {
        bad_value(key, v, expected);
    }
}

OutputFormat format_from_string(const std::string &name) {
    if (name == "csv") {
        return OutputFormat::csv;
    }
    if (name == "kv-json") {
        return OutputFormat::kv_json;
    }
    throw ValidationError("unknown format '" + name + "'");
}

std::string format_state(const std::array<Complex, 3> &amps) {
    std::string out;
    for (std::size_t i = 0; i < 3; ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += format_exact(amps[i].real());
        if (amps[i].imag() != 0.0) {
            out += ":" + format_exact(amps[i].imag());
        }
    }
    return out;
}

std::string format_list(const std::vector<double> &values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += (i > 0 ? ", " : "") + format_exact(values[i]);
    }
    return out;
}

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

} // namespace

const char *to_string(OutputFormat format) {
    return format == OutputFormat::kv_json ? "kv-json" : "csv";
}

StateVector RunConfig::initial_state() const {
    return StateVector::make(CVec3(initial[0], initial[1], initial[2]));
}

const std::vector<SettingInfo> &setting_table() {
    static const std::vector<SettingInfo> table = {
        {"d", "--d", "zero-field splitting D [GHz]"},
        {"g_e", "--g-e", "Lande factor g_e"},
        {"mu_b", "--mu-b", "Bohr magneton [MHz/mT]"},
        {"b_mt", "--b-mt", "field magnitude B [mT]"},
        {"a", "--a", "coupling A = g_e mu_B B / sqrt(2) [GHz]; sets B"},
        {"omega_field", "--omega-field", "field rotation rate omega [GHz]"},
        {"omega_rot", "--omega-rot", "mechanical rotation rate Omega [GHz]"},
        {"delta", "--delta", "Delta = Omega - omega [GHz]; sets Omega"},
        {"initial", "--initial", "initial amplitudes over |1>,|0>,|-1> as re[:im],re[:im],re[:im]"},
        {"frame", "--frame", "frame for states and QFI: lab or rotating"},
        {"t_max", "--t-max", "end of the time grid [ns]"},
        {"dt", "--dt", "time step [ns]"},
        {"lo", "--lo", "lower Delta of sweeps and crossing brackets [GHz]"},
        {"hi", "--hi", "upper Delta of sweeps and crossing brackets [GHz]"},
        {"steps", "--steps", "number of Delta grid points"},
        {"t", "--t", "fixed evolution time for qfi-sweep [ns]"},
        {"fit_lo", "--fit-lo", "start of the quadratic fit window [ns]"},
        {"fit_hi", "--fit-hi", "end of the quadratic fit window [ns]"},
        {"a_values", "--a-values", "comma-separated couplings for scaling [GHz]"},
        {"out", "--out", "output file, '-' for stdout"},
        {"format", "--format", "csv or kv-json (fit reports)"},
        {"zero_pad", "--zero-pad", "periodogram zero-padding factor"},
        {"window", "--window", "periodogram window: rectangular or hann"},
        {"closeness", "--closeness", "beat classification: relative frequency closeness"},
        {"balance", "--balance", "beat classification: minimum amplitude ratio"},
        {"crossing_tol", "--crossing-tol", "beat classification: relative gap counted as crossed"},
        {"nu", "--nu", "number of repetitions in the Cramer-Rao bound"},
        {"max_samples", "--max-samples", "cap on time-grid samples"},
    };
    return table;
}

Settings parse_settings(const std::string &text, const std::string &source) {
    const auto &table = setting_table();
    Settings out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string origin = source + ":" + std::to_string(lineno);
        const auto hash = line.find('#');
        const std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw UsageError(origin + ": expected 'key = value'");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        const bool known = std::any_of(table.begin(), table.end(),
                                       [&key](const SettingInfo &s) { return key == s.key; });
        if (!known) {
            throw UsageError(origin + ": unknown key '" + key + "'");
        }
        if (out.contains(key)) {
            throw UsageError(origin + ": duplicate key '" + key + "' (first set at " +
                             out.at(key).origin + ")");
        }
        out.emplace(key, SettingValue{value, origin});
    }
    return out;
}

Settings merge_settings(Settings base, const Settings &overrides) {
    static const std::map<std::string, std::string> partner = {
        {"a", "b_mt"}, {"b_mt", "a"}, {"delta", "omega_rot"}, {"omega_rot", "delta"}};
    for (const auto &[key, value] : overrides) {
        if (const auto it = partner.find(key); it != partner.end() && !overrides.contains(it->second)) {
            base.erase(it->second);
        }
        base[key] = value;
    }
    return base;
}

RunConfig build_config(const Settings &s) {
    RunConfig c;
    auto real = [&s](const char *key, double &target) {
        if (const auto *v = find(s, key)) {
            target = parse_real(key, *v);
        }
    };

    real("d", c.model.d_zfs);
    real("g_e", c.model.g_e);
    real("mu_b", c.model.mu_b);
    real("b_mt", c.model.b_field);
    real("omega_field", c.model.omega_field);
    real("omega_rot", c.model.omega_rot);

    const auto *a = find(s, "a");
    if (a != nullptr && find(s, "b_mt") != nullptr) {
        throw UsageError(a->origin + ": 'a' and 'b_mt' both set the field strength");
    }
    if (a != nullptr) {
        const double coupling = parse_real("a", *a);
        if (!std::isfinite(coupling) || coupling < 0.0) {
            invalid("a", "must be finite and >= 0");
        }
        c.model.b_field = ModelParams::field_for_coupling(coupling, c.model.g_e, c.model.mu_b);
    }
    const auto *delta = find(s, "delta");
    if (delta != nullptr && find(s, "omega_rot") != nullptr) {
        throw UsageError(delta->origin + ": 'delta' and 'omega_rot' both set the rotation rate");
    }
    if (delta != nullptr) {
        c.model.omega_rot = c.model.omega_field + parse_real("delta", *delta);
    }

    if (const auto *v = find(s, "initial")) {
        c.initial = parse_state("initial", *v);
    }
    if (const auto *v = find(s, "frame")) {
        c.frame = parse_enum<Frame>("frame", *v, frame_from_string, "lab or rotating");
    }
    real("t_max", c.t_max);
    real("dt", c.dt);
    real("lo", c.delta_grid.lo);
    real("hi", c.delta_grid.hi);
    if (const auto *v = find(s, "steps")) {
        const long steps = parse_integer("steps", *v);
        if (steps < 1) {
            invalid("steps", "must be >= 1");
        }
        c.delta_grid.steps = static_cast<std::size_t>(steps);
    }
    real("t", c.t_fixed);
    real("fit_lo", c.fit_lo);
    real("fit_hi", c.fit_hi);
    if (const auto *v = find(s, "a_values")) {
        c.a_values = parse_real_list("a_values", *v);
    }
    if (const auto *v = find(s, "out")) {
        c.output = trim(v->text);
    }
    if (const auto *v = find(s, "format")) {
        c.format = parse_enum<OutputFormat>("format", *v, format_from_string, "csv or kv-json");
    }
    if (const auto *v = find(s, "zero_pad")) {
        c.zero_pad = static_cast<int>(parse_integer("zero_pad", *v));
    }
    if (const auto *v = find(s, "window")) {
        c.window = parse_enum<Window>("window", *v, window_from_string, "rectangular or hann");
    }
    real("closeness", c.closeness);
    real("balance", c.balance);
    real("crossing_tol", c.crossing_tol);
    if (const auto *v = find(s, "nu")) {
        c.nu = parse_integer("nu", *v);
    }
    if (const auto *v = find(s, "max_samples")) {
        const long cap = parse_integer("max_samples", *v);
        if (cap < 1) {
            invalid("max_samples", "must be >= 1");
        }
        c.max_samples = static_cast<std::size_t>(cap);
    }

    validate(c);
    return c;
}

void validate(const RunConfig &c) {
    try {
        ModelParams check(c.model);
    } catch (const ValidationError &e) {
        throw ValidationError(std::string("model: ") + e.what());
    }
    if (!std::isfinite(c.dt) || c.dt <= 0.0) {
        invalid("dt", "must be finite and > 0 (got " + format_number(c.dt) + ")");
    }
    if (!std::isfinite(c.t_max) || c.t_max < c.dt) {
        invalid("t_max", "must be finite and >= dt (got " + format_number(c.t_max) + ")");
    }
    if (!std::isfinite(c.delta_grid.lo) || !std::isfinite(c.delta_grid.hi) ||
        c.delta_grid.hi < c.delta_grid.lo) {
        invalid("hi", "Delta grid needs finite lo <= hi");
    }
    if (c.delta_grid.steps < 1) {
        invalid("steps", "must be >= 1");
    }
    if (!std::isfinite(c.t_fixed)) {
        invalid("t", "must be finite");
    }
    if (!std::isfinite(c.fit_lo) || c.fit_lo < 0.0) {
        invalid("fit_lo", "must be finite and >= 0");
    }
    if (!std::isfinite(c.fit_hi) || c.fit_hi <= c.fit_lo) {
        invalid("fit_hi", "must be finite and > fit_lo");
    }
    if (c.a_values.empty() ||
        std::any_of(c.a_values.begin(), c.a_values.end(),
                    [](double a) { return !std::isfinite(a) || a <= 0.0; })) {
        invalid("a_values", "must be a nonempty list of positive couplings");
    }
    if (c.output.empty()) {
        invalid("out", "must name a file or '-'");
    }
    if (c.zero_pad < 1) {
        invalid("zero_pad", "must be >= 1");
    }
    if (!in_open_unit(c.closeness)) {
        invalid("closeness", "must lie in (0, 1)");
    }
    if (!in_open_unit(c.balance)) {
        invalid("balance", "must lie in (0, 1)");
    }
    if (!in_open_unit(c.crossing_tol)) {
        invalid("crossing_tol", "must lie in (0, 1)");
    }
    if (c.nu < 1) {
        invalid("nu", "must be >= 1");
    }
    if (c.max_samples < 1) {
        invalid("max_samples", "must be >= 1");
    }
    try {
        (void)c.initial_state();
    } catch (const ValidationError &e) {
        invalid("initial", e.what());
    }
}

RunConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot read config file '" + path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return build_config(parse_settings(text.str(), path.string()));
}

std::string dump_config(const RunConfig &c) {
    std::ostringstream os;
    auto kv = [&os](const char *key, const std::string &value) {
        os << key << " = " << value << '\n';
    };
    os << "# nvrot run configuration; frequencies in GHz, times in ns\n";
    kv("d", format_exact(c.model.d_zfs));
    kv("g_e", format_exact(c.model.g_e));
    kv("mu_b", format_exact(c.model.mu_b));
    kv("b_mt", format_exact(c.model.b_field));
    kv("omega_field", format_exact(c.model.omega_field));
    kv("omega_rot", format_exact(c.model.omega_rot));
    kv("initial", format_state(c.initial));
    kv("frame", to_string(c.frame));
    kv("t_max", format_exact(c.t_max));
    kv("dt", format_exact(c.dt));
    kv("lo", format_exact(c.delta_grid.lo));
    kv("hi", format_exact(c.delta_grid.hi));
    kv("steps", std::to_string(c.delta_grid.steps));
    kv("t", format_exact(c.t_fixed));
    kv("fit_lo", format_exact(c.fit_lo));
    kv("fit_hi", format_exact(c.fit_hi));
    kv("a_values", format_list(c.a_values));
    kv("out", c.output);
    kv("format", to_string(c.format));
    kv("zero_pad", std::to_string(c.zero_pad));
    kv("window", to_string(c.window));
    kv("closeness", format_exact(c.closeness));
    kv("balance", format_exact(c.balance));
    kv("crossing_tol", format_exact(c.crossing_tol));
    kv("nu", std::to_string(c.nu));
    kv("max_samples", std::to_string(c.max_samples));
    return os.str();
}

} // namespace nvrot
