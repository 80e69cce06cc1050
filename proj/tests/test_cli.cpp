#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eitsim/constants.hpp"
#include "eitsim/csv.hpp"

namespace fs = std::filesystem;

namespace {

int run_cmd(const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("clitest_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

const std::string kBin = EITSIM_BIN_PATH;
const std::string kConfigDir = EITSIM_CONFIG_DIR;

} // namespace

TEST_CASE("every shipped config validates", "[cli]") {
    REQUIRE(fs::is_directory(kConfigDir));
    std::size_t n = 0;
    for (const auto& entry : fs::directory_iterator(kConfigDir)) {
        if (entry.path().extension() != ".json") continue;
        ++n;
        const std::string cmd = kBin + " validate " + entry.path().string() + " > /dev/null 2>&1";
        INFO(entry.path().string());
        CHECK(run_cmd(cmd) == 0);
    }
    CHECK(n >= 8); // the shipped scenario set
}

TEST_CASE("run executes a spectrum config end to end", "[cli]") {
    TempFile cfg("spectrum.json");
    TempFile csv("spectrum.csv");
    write_text(cfg.path, R"({
        "schema_version": 1, "kind": "spectrum", "output": ")" + csv.path + R"(",
        "drive": {"coupling_power_mw": 2.1, "delta_coupling_ghz": [0.0]},
        "scan": {"min_khz": -30.0, "max_khz": 30.0, "points": 11}})");
    CHECK(run_cmd(kBin + " run " + cfg.path + " > /dev/null") == 0);

    const eitsim::CsvTable t = eitsim::read_csv(csv.path);
    CHECK(t.header == std::vector<std::string>{"raman_detuning_hz", "transmission_dc_0ghz"});
    CHECK(t.rows.size() == 11);
}

TEST_CASE("run + fit pipeline via the CLI", "[cli]") {
    TempFile cfg("widths.json");
    TempFile widths("widths.csv");
    TempFile fitted("fitted.csv");
    write_text(cfg.path, R"({
        "schema_version": 1, "kind": "width-sweep", "output": ")" + widths.path + R"(",
        "medium": {"gamma_raman_khz": 2.8},
        "drive": {"intensities_w_m2": {"min": 2.0, "max": 50.0, "points": 13}}})");
    REQUIRE(run_cmd(kBin + " run " + cfg.path + " > /dev/null") == 0);
    REQUIRE(run_cmd(kBin + " fit " + widths.path + " --out " + fitted.path + " > /dev/null") == 0);

    const eitsim::CsvTable t = eitsim::read_csv(fitted.path);
    const double gamma = t.numeric_column(t.column("gamma_raman_per_s"))[0];
    CHECK(std::abs(gamma - eitsim::two_pi * 2.8e3) < 0.02 * eitsim::two_pi * 2.8e3);
}

TEST_CASE("failures exit nonzero with diagnostics", "[cli]") {
    CHECK(run_cmd(kBin + " run missing_config.json > /dev/null 2>&1") == 2);

    TempFile bad("bad.json");
    write_text(bad.path, "{ \"schema_version\": 1, \"kind\": \"nope\", \"output\": \"x\" }");
    TempFile err("stderr.txt");
    CHECK(run_cmd(kBin + " validate " + bad.path + " 2> " + err.path + " > /dev/null") == 2);
    std::ifstream in(err.path);
    std::ostringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("kind") != std::string::npos);

    // Empty grid in a sweep: validation error, nonzero exit.
    TempFile empty("empty_grid.json");
    write_text(empty.path, R"({
        "schema_version": 1, "kind": "width-sweep", "output": "x.csv",
        "drive": {"intensities_w_m2": []}})");
    CHECK(run_cmd(kBin + " validate " + empty.path + " > /dev/null 2>&1") == 2);

    CHECK(run_cmd(kBin + " > /dev/null 2>&1") != 0);
    CHECK(run_cmd(kBin + " fit nonexistent.csv --out x.csv > /dev/null 2>&1") == 1);
}
