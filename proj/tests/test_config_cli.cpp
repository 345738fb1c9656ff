#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cqed/cli.hpp"
#include "cqed/config.hpp"
#include "cqed/constants.hpp"
#include "cqed/table.hpp"

using namespace cqed;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("cqed_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& body) {
    const fs::path p = dir / name;
    std::ofstream out(p);
    out << body;
    return p;
}

}  // namespace

TEST_CASE("empty config yields the documented defaults") {
    std::istringstream empty("");
    const ExperimentConfig cfg = parse_config(empty, "<empty>");
    CHECK(cfg.cavity.omega == doctest::Approx(kTwoPi * 51.1e9));
    CHECK(cfg.cavity.g0 == doctest::Approx(kTwoPi * 47e3));
    CHECK(cfg.cavity.kappa == doctest::Approx(1.0 / 0.13));
    CHECK(cfg.cavity.delta() == 0.0);
    CHECK(cfg.n_max == 15);
    CHECK(cfg.bath.p1 == doctest::Approx(0.05));
    CHECK(cfg.probe.epsilon_per_photon == doctest::Approx(0.5 * kPi));
    CHECK(cfg.probe.r2_phase == doctest::Approx(0.5 * kPi));  // auto-calibrated
    CHECK(cfg.seed == 1);
    CHECK(cfg.cavity.strongly_coupled());
}

TEST_CASE("config parsing: comments, units, errors with line numbers") {
    std::istringstream good(
        "# run parameters\n"
        "g0 = 2.9530970943744053e5   # rad/s\n"
        "seed = 77\n"
        "trajectories = 250\n");
    const ExperimentConfig cfg = parse_config(good, "<good>");
    CHECK(cfg.cavity.g0 == doctest::Approx(2.9530970943744053e5));
    CHECK(cfg.seed == 77);
    CHECK(cfg.trajectories == 250);

    std::istringstream negative_q("q_factor = -1\n");
    CHECK_THROWS_AS(parse_config(negative_q, "<bad>"), ConfigError);

    std::istringstream unknown("coupling = 5\n");
    CHECK_THROWS_WITH_AS(parse_config(unknown, "<bad>"),
                         doctest::Contains("unknown key 'coupling'"), ConfigError);

    std::istringstream with_units("t2 = 30 us\n");
    try {
        parse_config(with_units, "<units>");
        FAIL("expected ConfigError");
    } catch (const ConfigError& err) {
        CHECK(std::string(err.what()).find("line 1") != std::string::npos);
    }

    std::istringstream duplicate("seed = 1\nseed = 2\n");
    CHECK_THROWS_AS(parse_config(duplicate, "<dup>"), ConfigError);

    std::istringstream no_equals("just words\n");
    CHECK_THROWS_AS(parse_config(no_equals, "<bad>"), ConfigError);
}

TEST_CASE("kappa falls out of q_factor when omitted, and they must agree") {
    std::istringstream derived(
        "omega = 3.2106124519290625e11\n"
        "q_factor = 4.1737961875077812e10\n");
    const ExperimentConfig cfg = parse_config(derived, "<derived>");
    CHECK(cfg.cavity.kappa == doctest::Approx(cfg.cavity.omega / cfg.cavity.quality));
    CHECK(cfg.cavity.kappa == doctest::Approx(1.0 / 0.13).epsilon(1e-9));

    std::istringstream explicit_kappa("kappa = 5.0\n");
    CHECK(parse_config(explicit_kappa, "<k>").cavity.kappa == doctest::Approx(5.0));

    std::istringstream clash(
        "kappa = 5.0\n"
        "q_factor = 1e9\n");
    CHECK_THROWS_AS(parse_config(clash, "<clash>"), ConfigError);
}

TEST_CASE("config echo round-trips through the parser") {
    ExperimentConfig cfg = default_config();
    cfg.seed = 987654321;
    cfg.trajectories = 17;
    std::ostringstream text;
    for (const auto& [key, value] : config_echo(cfg)) {
        if (key == "ideal") continue;  // CLI flag, not a file key
        text << key << " = " << value << "\n";
    }
    std::istringstream in(text.str());
    const ExperimentConfig back = parse_config(in, "<echo>");
    CHECK(back.cavity.omega == cfg.cavity.omega);
    CHECK(back.cavity.g0 == cfg.cavity.g0);
    CHECK(back.probe.r2_phase == cfg.probe.r2_phase);
    CHECK(back.seed == cfg.seed);
    CHECK(back.trajectories == cfg.trajectories);
    CHECK(config_documentation().find("omega") != std::string::npos);
}

TEST_CASE("CSV writing is bit-exact under re-parsing") {
    ResultTable table;
    table.add_column("x", {0.0, 1.0 / 3.0, 2.2250738585072014e-308, 6.02214076e23, -0.1});
    table.add_column("y", {1.0, -1.0 / 7.0, 3.141592653589793, 1e-300, 0.1});
    table.add_text_column("label", {"a", "b,with comma", "c\"quote", "d", "e"});
    table.set_meta("experiment", "unit-test");
    table.set_meta("seed", std::uint64_t{12345});

    const std::string text = to_csv(table);
    const ResultTable back = read_csv_string(text);
    REQUIRE(back.columns.size() == 3);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(back.column("x").numbers[k] == table.column("x").numbers[k]);
        CHECK(back.column("y").numbers[k] == table.column("y").numbers[k]);
        CHECK(back.column("label").labels[k] == table.column("label").labels[k]);
    }
    CHECK(back.meta("experiment") == "unit-test");
    CHECK(back.meta("seed") == "12345");

    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") != fnv1a64("b"));
}

TEST_CASE("cli: cnot --ideal prints the truth table and succeeds") {
    TempDir tmp;
    CHECK(cli_main({"cnot", "--ideal", "--out", (tmp.path / "run").string()}) == 0);
    CHECK(fs::exists(tmp.path / "run" / "cnot.csv"));
    CHECK(fs::exists(tmp.path / "run" / "manifest.json"));
}

TEST_CASE("cli: missing config file names the path and exits 1") {
    CHECK(cli_main({"rabi", "--config", "missing.cfg"}) == 1);
    CHECK(cli_main({"no-such-command"}) == 1);
    CHECK(cli_main({}) == 1);
    CHECK(cli_main({"--help"}) == 0);
}

TEST_CASE("cli: same command and seed give byte-identical CSV checksums") {
    TempDir tmp;
    const fs::path dir_a = tmp.path / "a";
    const fs::path dir_b = tmp.path / "b";
    CHECK(cli_main({"qnd", "--seed", "5150", "--trajectories", "40", "--out", dir_a.string()}) == 0);
    CHECK(cli_main({"qnd", "--seed", "5150", "--trajectories", "40", "--out", dir_b.string()}) == 0);

    auto checksums = [](const fs::path& dir) {
        std::ifstream in(dir / "manifest.json");
        nlohmann::json manifest;
        in >> manifest;
        std::map<std::string, std::string> out;
        for (const auto& entry : manifest["outputs"]) {
            out[entry["path"].get<std::string>()] = entry["checksum"].get<std::string>();
        }
        return out;
    };
    const auto sums_a = checksums(dir_a);
    const auto sums_b = checksums(dir_b);
    REQUIRE(!sums_a.empty());
    CHECK(sums_a == sums_b);
    CHECK(sums_a.count("qnd.csv") == 1);
    CHECK(sums_a.count("qnd_events.csv") == 1);

    // a different seed must change the trajectory data
    const fs::path dir_c = tmp.path / "c";
    CHECK(cli_main({"qnd", "--seed", "5151", "--trajectories", "40", "--out", dir_c.string()}) == 0);
    CHECK(checksums(dir_c).at("qnd_events.csv") != sums_a.at("qnd_events.csv"));
}

TEST_CASE("cli: config file feeds the run and bad values exit 1") {
    TempDir tmp;
    const fs::path cfg = write_file(tmp.path, "run.cfg",
                                    "seed = 99\n"
                                    "trajectories = 10\n"
                                    "scan_points = 51\n");
    CHECK(cli_main({"ramsey", "--config", cfg.string(), "--out", (tmp.path / "out").string()}) == 0);
    const ResultTable table = read_csv((tmp.path / "out" / "ramsey.csv").string());
    CHECK(table.rows() == 51);
    CHECK(table.meta("config.seed") == "99");

    const fs::path bad = write_file(tmp.path, "bad.cfg", "q_factor = -1\n");
    CHECK(cli_main({"ramsey", "--config", bad.string(), "--out", (tmp.path / "out2").string()}) == 1);
}

TEST_CASE("cli: validate subcommand runs the invariant suite") {
    CHECK(cli_main({"validate", "--seed", "2"}) == 0);
}
