// Exercises the installed radarlab binary end to end: exit codes, file
// outputs, config validation, and CSV round-trips. The binary path comes in
// via RADARLAB_CLI_PATH from the build.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "radarlab/csv.hpp"

namespace fs = std::filesystem;
using namespace radarlab;

namespace {

const char* kMinimalConfig = R"({
  "schema_version": 1,
  "radar": { "carrier_freq": 60e9 },
  "motion": { "type": "sinusoid", "amplitude": 45e-6, "freq": 2.0 },
  "duration": 1.0
})";

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "radarlab_cli_tests";
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string(RADARLAB_CLI_PATH) + " " + args +
                            " >" + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::size_t count_lines(const fs::path& path) {
    std::ifstream in(path);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) ++n;
    return n;
}

}  // namespace

TEST_CASE("synth writes the expected row counts") {
    const fs::path dir = scratch_dir();
    write_file(dir / "minimal.json", kMinimalConfig);

    const int rc = run_cli("synth --config " + (dir / "minimal.json").string() +
                               " --out " + (dir / "out").string(),
                           dir / "log.txt");
    REQUIRE(rc == 0);
    CHECK(count_lines(dir / "out" / "iq.csv") == 101);  // header + 100 rows
    CHECK(fs::exists(dir / "out" / "truth.csv"));
    CHECK(fs::exists(dir / "out" / "summary.json"));
    CHECK(fs::exists(dir / "out" / "manifest.json"));

    const auto manifest =
        nlohmann::json::parse(read_file(dir / "out" / "manifest.json"));
    CHECK(manifest["seed"] == 0);
    bool lists_iq = false;
    for (const auto& f : manifest["emitted_files"])
        lists_iq = lists_iq || f["path"] == "iq.csv";
    CHECK(lists_iq);
}

TEST_CASE("the bundled reproduction config synthesizes 12000 rows") {
    const fs::path dir = scratch_dir();
    const fs::path config =
        fs::path(RADARLAB_CONFIG_DIR) / "pendulum-repro.json";
    REQUIRE(fs::exists(config));

    const int rc = run_cli("synth --config " + config.string() + " --out " +
                               (dir / "out").string(),
                           dir / "log.txt");
    REQUIRE(rc == 0);
    CHECK(count_lines(dir / "out" / "iq.csv") == 12001);
}

TEST_CASE("missing required fields exit with code 2 and name the field") {
    const fs::path dir = scratch_dir();
    write_file(dir / "broken.json", R"({
      "schema_version": 1,
      "radar": { "theta0": 0.0 },
      "motion": { "type": "sinusoid", "amplitude": 1e-6, "freq": 2.0 }
    })");

    const int rc = run_cli("synth --config " + (dir / "broken.json").string() +
                               " --out " + (dir / "out").string(),
                           dir / "log.txt");
    CHECK(rc == 2);
    const std::string log = read_file(dir / "log.txt");
    CHECK(log.find("carrier_freq") != std::string::npos);
}

TEST_CASE("unknown config fields are rejected (fail closed)") {
    const fs::path dir = scratch_dir();
    write_file(dir / "unknown.json", R"({
      "schema_version": 1,
      "radar": { "carrier_freq": 60e9, "carier_freq_typo": 1.0 },
      "motion": { "type": "sinusoid", "amplitude": 1e-6, "freq": 2.0 }
    })");

    const int rc = run_cli("synth --config " +
                               (dir / "unknown.json").string() + " --out " +
                               (dir / "out").string(),
                           dir / "log.txt");
    CHECK(rc == 2);
    const std::string log = read_file(dir / "log.txt");
    CHECK(log.find("carier_freq_typo") != std::string::npos);
}

TEST_CASE("fitdc then demod --method both emits two traces and their RMS gap") {
    const fs::path dir = scratch_dir();
    write_file(dir / "cfg.json", R"({
      "schema_version": 1,
      "radar": { "carrier_freq": 60e9, "theta0": 0.4, "dc_i": 0.3, "dc_q": -0.2 },
      "motion": { "type": "sinusoid", "amplitude": 150e-6, "freq": 2.0 },
      "duration": 10.0
    })");
    const std::string cfg = (dir / "cfg.json").string();

    REQUIRE(run_cli("synth --config " + cfg + " --out " +
                        (dir / "synth").string(),
                    dir / "log1.txt") == 0);
    REQUIRE(run_cli("fitdc --config " + cfg + " --out " +
                        (dir / "fit").string() + " --in " +
                        (dir / "synth" / "iq.csv").string(),
                    dir / "log2.txt") == 0);
    REQUIRE(run_cli("demod --config " + cfg + " --out " +
                        (dir / "demod").string() + " --in " +
                        (dir / "fit" / "iq_centered.csv").string() +
                        " --method both",
                    dir / "log3.txt") == 0);

    CHECK(fs::exists(dir / "demod" / "displacement_dacm.csv"));
    CHECK(fs::exists(dir / "demod" / "displacement_arctangent.csv"));
    const auto summary =
        nlohmann::json::parse(read_file(dir / "demod" / "summary.json"));
    REQUIRE(summary.contains("rms_difference_m"));
    CHECK(summary["rms_difference_m"].get<double>() < 1e-6);

    const auto fit_summary =
        nlohmann::json::parse(read_file(dir / "fit" / "summary.json"));
    CHECK(std::abs(fit_summary["fit"]["center_i"].get<double>() - 0.3) < 0.01);
    CHECK(std::abs(fit_summary["fit"]["center_q"].get<double>() + 0.2) < 0.01);
}

TEST_CASE("analyze on an empty CSV exits 1 with an empty-record diagnostic") {
    const fs::path dir = scratch_dir();
    write_file(dir / "cfg.json", kMinimalConfig);
    write_file(dir / "empty.csv", "t,x_m\n");

    const int rc = run_cli("analyze --config " + (dir / "cfg.json").string() +
                               " --out " + (dir / "out").string() + " --in " +
                               (dir / "empty.csv").string(),
                           dir / "log.txt");
    CHECK(rc == 1);
    const std::string log = read_file(dir / "log.txt");
    CHECK(log.find("empty record") != std::string::npos);
}

TEST_CASE("CSV tables round-trip byte-identically") {
    const fs::path dir = scratch_dir();
    CsvTable table;
    table.columns = {"t", "i", "q"};
    table.data = {{0.0, 0.01, 0.02, 1.0 / 3.0},
                  {1.0, -0.3333333333333333, 2e-300, 4.5e17},
                  {0.5, 1e-17, -7.25, 0.1}};
    write_csv(dir / "a.csv", table);
    const CsvTable readback = read_csv(dir / "a.csv");
    write_csv(dir / "b.csv", readback);
    CHECK(read_file(dir / "a.csv") == read_file(dir / "b.csv"));
}

TEST_CASE("reruns with the same config and seed are byte-identical") {
    const fs::path dir = scratch_dir();
    write_file(dir / "cfg.json", R"({
      "schema_version": 1,
      "seed": 42,
      "radar": { "carrier_freq": 60e9, "noise_std": 0.1 },
      "motion": { "type": "sinusoid", "amplitude": 45e-6, "freq": 2.0 },
      "duration": 5.0
    })");
    const std::string cfg = (dir / "cfg.json").string();

    REQUIRE(run_cli("synth --config " + cfg + " --out " +
                        (dir / "out").string(),
                    dir / "log1.txt") == 0);
    const std::string first = read_file(dir / "out" / "iq.csv");
    fs::remove_all(dir / "out");
    REQUIRE(run_cli("synth --config " + cfg + " --out " +
                        (dir / "out").string(),
                    dir / "log2.txt") == 0);
    CHECK(read_file(dir / "out" / "iq.csv") == first);

    // A different seed must change the noisy data.
    REQUIRE(run_cli("synth --config " + cfg + " --out " +
                        (dir / "out2").string() + " --seed 43",
                    dir / "log3.txt") == 0);
    CHECK(read_file(dir / "out2" / "iq.csv") != first);
}
