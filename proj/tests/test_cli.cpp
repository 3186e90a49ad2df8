#include "catch_amalgamated.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nvrot/cli.hpp"

using namespace nvrot;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string first_data_line(const std::string &text) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line[0] != '#') {
            return line;
        }
    }
    return {};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch_dir(const std::string &name) {
    const fs::path dir = fs::temp_directory_path() / ("nvrot_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("subcommand headers", "[cli]") {
    const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
        {{"simulate", "--a", "10", "--t-max", "1", "--dt", "0.1"}, "t_ns,p0"},
        {{"spectrum", "--a", "10", "--delta", "20"}, "delta,omega1,omega2,omega3,k0,k1,k2,k3"},
        {{"sweep-spectrum", "--a", "10", "--steps", "5"}, "delta,omega1,omega2,omega3,k0,k1,k2,k3"},
        {{"crossing", "--a", "10", "--lo", "0", "--hi", "50"}, "delta_star,indicator"},
        {{"classify", "--a", "10", "--delta", "40"}, "delta,regime,envelope_frequency,modulation_ratio"},
        {{"qfi", "--a", "10", "--delta", "20", "--t-max", "1", "--dt", "0.1"}, "t_ns,qfi"},
        {{"qfi-sweep", "--a", "10", "--steps", "5"}, "delta,qfi"},
        {{"fit-qfi", "--a", "10", "--delta", "20", "--fit-hi", "5", "--t-max", "5"},
         "coeff_a,coeff_b,coeff_c,rms_residual,window_lo,window_hi"},
        {{"scaling", "--delta", "20", "--fit-hi", "5", "--t-max", "5"}, "a_coupling,coeff_a,coeff_a_times_a2"},
    };
    for (const auto &[args, header] : cases) {
        CAPTURE(args.front());
        const Run r = run(args);
        REQUIRE(r.code == kExitOk);
        CHECK(r.err.empty());
        CHECK(first_data_line(r.out) == header);
    }
}

TEST_CASE("command results", "[cli]") {
    const Run crossing = run({"crossing", "--a", "10", "--lo", "0", "--hi", "50"});
    CHECK_THAT(crossing.out, ContainsSubstring("10.04565633"));

    CHECK_THAT(run({"classify", "--a", "10", "--delta", "10.8"}).out, ContainsSubstring(",crossed,"));
    CHECK_THAT(run({"classify", "--a", "10", "--delta", "40"}).out, ContainsSubstring(",beating,"));
    CHECK_THAT(run({"classify", "--a", "10", "--delta", "0"}).out, ContainsSubstring(",single_line,"));

    const Run fit = run({"fit-qfi", "--a", "10", "--delta", "20", "--fit-hi", "5", "--t-max", "5",
                         "--format", "kv-json"});
    REQUIRE(fit.code == kExitOk);
    CHECK_THAT(fit.out, StartsWith("{\n  \"coeff_a\":"));
    CHECK(fit.out.find("\"coeff_b\"") < fit.out.find("\"coeff_c\""));

    const Run qfi = run({"qfi", "--a", "10", "--delta", "20", "--t-max", "1", "--dt", "0.5"});
    CHECK_THAT(qfi.out, ContainsSubstring("Cramer-Rao"));
}

TEST_CASE("exit codes", "[cli]") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"teleport"}).code == kExitUsage);
    CHECK(run({"simulate", "--no-such-flag", "1"}).code == kExitUsage);
    CHECK(run({"simulate", "--dt", "soon"}).code == kExitUsage);
    CHECK(run({"simulate", "--a", "1", "--b-mt", "2"}).code == kExitUsage);
    CHECK(run({"reproduce", "fig9"}).code == kExitUsage);
    CHECK(run({"--config", "/nonexistent/nvrot.cfg", "simulate"}).code == kExitUsage);

    const Run bad_dt = run({"simulate", "--dt", "-1"});
    CHECK(bad_dt.code == kExitValidation);
    CHECK_THAT(bad_dt.err, ContainsSubstring("dt"));
    CHECK(run({"simulate", "--initial", "1,1,0"}).code == kExitValidation);
    CHECK(run({"crossing", "--a", "0", "--lo", "1", "--hi", "5"}).code == kExitValidation);
    CHECK(run({"simulate", "--dt", "1e-9", "--t-max", "10"}).code == kExitValidation);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("configuration files and dumps", "[cli]") {
    const fs::path dir = scratch_dir("config");
    const fs::path cfg = dir / "run.cfg";
    {
        std::ofstream f(cfg);
        f << "a = 10\ndelta = 20\nt_max = 1\ndt = 0.25\n";
    }
    const Run from_file = run({"--config", cfg.string(), "simulate"});
    REQUIRE(from_file.code == kExitOk);
    const Run from_flags = run({"simulate", "--a", "10", "--delta", "20", "--t-max", "1", "--dt", "0.25"});
    CHECK(from_file.out == from_flags.out);

    const fs::path dump = dir / "dump.cfg";
    REQUIRE(run({"--config", cfg.string(), "--dump-config", dump.string(), "--dt", "0.5", "simulate"}).code ==
            kExitOk);
    const Run replay = run({"--config", dump.string(), "simulate"});
    CHECK(replay.out == run({"simulate", "--a", "10", "--delta", "20", "--t-max", "1", "--dt", "0.5"}).out);

    const fs::path target = dir / "series.csv";
    const Run to_file = run({"simulate", "--t-max", "1", "--dt", "0.25", "--out", target.string()});
    CHECK(to_file.out.empty());
    CHECK(slurp(target) == run({"simulate", "--t-max", "1", "--dt", "0.25"}).out);

    const fs::path pg = dir / "pg.csv";
    REQUIRE(run({"spectrum", "--a", "10", "--delta", "20", "--t-max", "2", "--dt", "0.01",
                 "--periodogram-out", pg.string()})
                .code == kExitOk);
    CHECK(first_data_line(slurp(pg)) == "frequency,magnitude");
    fs::remove_all(dir);
}

TEST_CASE("output is deterministic", "[cli]") {
    const std::vector<std::string> args{"qfi-sweep", "--a", "10", "--steps", "51"};
    CHECK(run(args).out == run(args).out);
}

TEST_CASE("reproduce writes figure data", "[cli][reproduce]") {
    const fs::path dir = scratch_dir("reproduce");
    const Run r = run({"reproduce", "fig2", "--out-dir", dir.string()});
    REQUIRE(r.code == kExitOk);
    for (const char *name : {"fig2_delta_0.csv", "fig2_delta_10.8.csv", "fig2_delta_40.csv"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(dir / name));
        CHECK(first_data_line(slurp(dir / name)) == "t_ns,p0");
    }
    CHECK_THAT(slurp(dir / "fig2_delta_40.csv"), ContainsSubstring("beating"));
    fs::remove_all(dir);
}
