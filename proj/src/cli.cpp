#include "cqed/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "cqed/config.hpp"
#include "cqed/experiments.hpp"
#include "cqed/table.hpp"
#include "cqed/validate.hpp"
#include "cqed/version.hpp"

namespace cqed {

namespace {

namespace fs = std::filesystem;

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

struct Run {
    std::string subcommand;
    ExperimentConfig cfg;
    fs::path out_dir;
    std::string started_at;
    std::vector<fs::path> outputs;

    void write_table(const ResultTable& table, const std::string& filename) {
        fs::create_directories(out_dir);
        const fs::path path = out_dir / filename;
        write_csv(table, path.string());
        outputs.push_back(path);
        std::cout << "wrote " << path.string() << "\n";
    }

    // The manifest lands only after every output did, via rename.
    void write_manifest() {
        nlohmann::json manifest;
        manifest["artifact_version"] = kVersion;
        manifest["rng_algorithm"] = RngStream::kAlgorithm;
        manifest["subcommand"] = subcommand;
        manifest["seed"] = cfg.seed;
        manifest["started_at"] = started_at;
        manifest["finished_at"] = iso_timestamp();
        nlohmann::json config_json = nlohmann::json::object();
        for (const auto& [key, value] : config_echo(cfg)) config_json[key] = value;
        manifest["config"] = config_json;
        nlohmann::json output_list = nlohmann::json::array();
        for (const fs::path& path : outputs) {
            nlohmann::json entry;
            entry["path"] = path.filename().string();
            entry["bytes"] = static_cast<std::uint64_t>(fs::file_size(path));
            char checksum[32];
            std::snprintf(checksum, sizeof(checksum), "fnv1a64:%016llx",
                          static_cast<unsigned long long>(fnv1a64_file(path.string())));
            entry["checksum"] = checksum;
            output_list.push_back(entry);
        }
        manifest["outputs"] = output_list;

        const fs::path final_path = out_dir / "manifest.json";
        const fs::path tmp_path = out_dir / "manifest.json.tmp";
        {
            std::ofstream file(tmp_path);
            if (!file) throw Error("cannot write " + tmp_path.string());
            file << manifest.dump(2) << "\n";
        }
        fs::rename(tmp_path, final_path);
        std::cout << "wrote " << final_path.string() << "\n";
    }
};

void print_cnot_table(const ResultTable& table) {
    std::printf("control_in  target_in  control_out  target_out\n");
    const auto& c_in = table.column("control_in").numbers;
    const auto& t_in = table.column("target_in").labels;
    const auto& c_out = table.column("control_out").numbers;
    const auto& t_out = table.column("target_out").labels;
    for (std::size_t r = 0; r < c_in.size(); ++r) {
        std::printf("|%d>         %-9s  |%d>          %s\n", static_cast<int>(c_in[r]),
                    t_in[r].c_str(), static_cast<int>(c_out[r]), t_out[r].c_str());
    }
}

int run_validate(std::uint64_t seed) {
    const std::vector<CheckResult> results = run_validation(seed);
    int failures = 0;
    for (const CheckResult& check : results) {
        std::printf("[%s] %s\n", check.passed ? "PASS" : "FAIL", check.name.c_str());
        if (!check.passed) {
            std::printf("       %s\n", check.detail.c_str());
            ++failures;
        }
    }
    std::printf("%zu checks, %d failed\n", results.size(), failures);
    return failures == 0 ? 0 : 2;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"Strong-coupling cavity QED simulator"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed_flag;
    std::optional<int> trajectories_flag;
    bool ideal = false;
    app.add_option("--config", config_path, "configuration file (key = value lines)");
    app.add_option("--seed", seed_flag, "master seed (overrides the config)");
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--trajectories", trajectories_flag, "ensemble size (overrides the config)");
    app.add_flag("--ideal", ideal, "suppress detector imperfections and sampling layers");

    const struct {
        const char* name;
        const char* help;
    } kSubcommands[] = {
        {"rabi", "vacuum Rabi oscillation scan"},
        {"splitting", "transmission spectra with and without the atom"},
        {"ramsey", "two-zone Ramsey fringes"},
        {"phase-gate", "conditional phase gate fringes for 0 and 1 photons"},
        {"field-phase", "conditional field interference versus injection phase"},
        {"cnot", "controlled-NOT truth table"},
        {"qnd", "quantum-jump trajectories with QND probes"},
        {"validate", "run the built-in invariant suite"},
    };
    for (const auto& sub : kSubcommands) app.add_subcommand(sub.name, sub.help);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 1;
    }

    try {
        ExperimentConfig cfg = config_path.empty() ? default_config() : load_config(config_path);
        if (seed_flag) cfg.seed = *seed_flag;
        if (trajectories_flag) cfg.trajectories = *trajectories_flag;
        if (ideal) cfg.ideal = true;
        cfg.validate();

        const std::string sub = app.get_subcommands().front()->get_name();
        if (sub == "validate") return run_validate(cfg.seed);

        if (!cfg.cavity.strongly_coupled()) {
            std::cerr << "warning: g0 does not dominate kappa and gamma by 10x;"
                      << " this is outside the strong-coupling regime\n";
        }

        Run run{sub, cfg, fs::path(out_dir), iso_timestamp(), {}};
        if (sub == "rabi") {
            run.write_table(run_rabi_scan(cfg), "rabi.csv");
        } else if (sub == "splitting") {
            run.write_table(run_mode_splitting(cfg), "splitting.csv");
        } else if (sub == "ramsey") {
            run.write_table(run_ramsey_fringes(cfg), "ramsey.csv");
        } else if (sub == "phase-gate") {
            run.write_table(run_phase_gate_fringes(cfg), "phase_gate.csv");
        } else if (sub == "field-phase") {
            run.write_table(run_field_phase_experiment(cfg), "field_phase.csv");
        } else if (sub == "cnot") {
            const ResultTable table = run_cnot_table(cfg);
            print_cnot_table(table);
            run.write_table(table, "cnot.csv");
        } else if (sub == "qnd") {
            run.write_table(run_qnd(cfg), "qnd.csv");
            ProbeConfig probe = cfg.probe;
            if (cfg.ideal) {
                probe.dark_count_prob = 0.0;
                probe.detection_efficiency = 1.0;
            }
            std::vector<TrajectoryRecord> kept;
            qnd_ensemble_stats(cfg.bath, probe, cfg.duration,
                               std::min(cfg.trajectories, kQndRecordCap), cfg.seed, &kept,
                               std::min(cfg.trajectories, kQndRecordCap));
            ResultTable events = trajectory_events_table(kept);
            events.set_meta("experiment", "qnd-events");
            events.set_meta("artifact_version", kVersion);
            events.set_meta("seed", cfg.seed);
            run.write_table(events, "qnd_events.csv");
        }
        run.write_manifest();
        return 0;
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 1;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
}

}  // namespace cqed
