#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "nvrot/core_model.hpp"
#include "nvrot/errors.hpp"
#include "nvrot/grid.hpp"
#include "nvrot/metrology.hpp"
#include "nvrot/spectrum.hpp"

namespace nvrot {

/// Malformed input: unknown key or flag, duplicate key, unparsable value.
class UsageError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

enum class OutputFormat { csv, kv_json };

const char *to_string(OutputFormat format);

/// @p steps evenly spaced points over [lo, hi]; steps == 1 is just lo.
struct GridSpec {
    double lo = 0.0;
    double hi = 50.0;
    std::size_t steps = 501;

    [[nodiscard]] std::vector<double> values() const { return linspace(lo, hi, steps); }
    bool operator==(const GridSpec &) const = default;
};

struct RunConfig {
    ModelParams::Values model{};
    std::array<Complex, 3> initial{Complex{0.0}, Complex{1.0}, Complex{0.0}};
    Frame frame = kDefaultQfiFrame;
    double t_max = 30.0;
    double dt = 0.05;
    GridSpec delta_grid{};
    double t_fixed = 10.0;
    double fit_lo = 0.0;
    double fit_hi = 30.0;
    std::vector<double> a_values{5.0, 10.0, 15.0};
    std::string output = "-";
    OutputFormat format = OutputFormat::csv;
    int zero_pad = 8;
    Window window = Window::rectangular;
    double closeness = 0.15;
    double balance = 0.5;
    double crossing_tol = 0.03;
    long nu = 1;
    std::size_t max_samples = kDefaultMaxSamples;

    [[nodiscard]] ModelParams params() const { return ModelParams(model); }
    [[nodiscard]] StateVector initial_state() const;

    bool operator==(const RunConfig &) const = default;
};

/// One recognised setting: config-file key and the matching CLI flag.
struct SettingInfo {
    const char *key;
    const char *flag;
    const char *help;
};

/// Every key accepted by config files, in dump order.
const std::vector<SettingInfo> &setting_table();

/// Raw key -> value text with the origin of each entry, for diagnostics.
struct SettingValue {
    std::string text;
    std::string origin;
};
using Settings = std::map<std::string, SettingValue>;

/// Parses "key = value" lines; '#' starts a comment. Unknown or duplicate keys
/// throw UsageError naming @p source and the line.
Settings parse_settings(const std::string &text, const std::string &source);

/// Applies @p overrides on top of @p base. Setting 'a' replaces 'b_mt' (and
/// vice versa); 'delta' replaces 'omega_rot' (and vice versa).
Settings merge_settings(Settings base, const Settings &overrides);

/// Builds and validates a RunConfig. Unparsable values throw UsageError;
/// values that violate an invariant throw ValidationError naming the key.
RunConfig build_config(const Settings &settings);

RunConfig load_config(const std::filesystem::path &path);

/// Canonical "key = value" text that build_config(parse_settings(...))
/// turns back into an equal RunConfig.
std::string dump_config(const RunConfig &config);

/// Throws ValidationError naming the offending field.
void validate(const RunConfig &config);

} // namespace nvrot
