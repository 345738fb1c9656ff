#include "cqed/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "cqed/constants.hpp"
#include "cqed/table.hpp"

namespace cqed {

namespace {

struct KeyDoc {
    const char* key;
    const char* unit;
    const char* meaning;
};

// Documented key set; order is the echo order.
const KeyDoc kKeyDocs[] = {
    {"omega", "rad/s", "cavity mode angular frequency"},
    {"omega_eg", "rad/s", "e-g transition angular frequency (defaults to omega: resonant)"},
    {"g0", "rad/s", "atom-cavity coupling"},
    {"q_factor", "1", "cavity quality factor; kappa = omega/q_factor when kappa is not given"},
    {"kappa", "rad/s", "photon decay rate (overrides q_factor when both are present and consistent)"},
    {"gamma", "rad/s", "non-resonant atomic decay rate"},
    {"waist", "m", "Gaussian mode waist"},
    {"velocity", "m/s", "atomic beam velocity"},
    {"dipole", "C*m", "e-g dipole matrix element"},
    {"mode_volume", "m^3", "cavity mode volume"},
    {"n_max", "1", "Fock-space truncation"},
    {"t2", "s", "transverse relaxation time of the damped Rabi model"},
    {"p1", "1", "steady-state single-photon probability of the thermal bath"},
    {"probe_interval", "s", "time between QND probe atoms"},
    {"dark_count_prob", "1", "P(record e | no photon) per probe"},
    {"detection_efficiency", "1", "P(record e | photon present) per probe"},
    {"epsilon_per_photon", "rad", "dispersive phase shift per photon used by the probe"},
    {"r2_phase", "rad", "second Ramsey zone phase; 'auto' calibrates P(g|vacuum) = 1"},
    {"duration", "s", "trajectory duration"},
    {"field_alpha", "1", "injected coherent amplitude of the field-phase run"},
    {"scan_start", "scan units", "scan lower bound; 'auto' uses the experiment default"},
    {"scan_stop", "scan units", "scan upper bound; 'auto' uses the experiment default"},
    {"scan_points", "1", "scan grid size; 'auto' uses the experiment default"},
    {"seed", "1", "master seed; all randomness derives from it"},
    {"trajectories", "1", "ensemble size for stochastic runs"},
};

double parse_number(const std::string& text, const std::string& key, int line) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        std::ostringstream msg;
        msg << "line " << line << ": value '" << text << "' for key '" << key
            << "' is not a plain number (units are fixed per key, see the documentation)";
        throw ConfigError(msg.str());
    }
    return value;
}

std::uint64_t parse_u64(const std::string& text, const std::string& key, int line) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const unsigned long long value = std::strtoull(begin, &end, 10);
    if (end == begin || *end != '\0') {
        std::ostringstream msg;
        msg << "line " << line << ": value '" << text << "' for key '" << key
            << "' is not an unsigned integer";
        throw ConfigError(msg.str());
    }
    return value;
}

int parse_int(const std::string& text, const std::string& key, int line) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const long value = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0') {
        std::ostringstream msg;
        msg << "line " << line << ": value '" << text << "' for key '" << key
            << "' is not an integer";
        throw ConfigError(msg.str());
    }
    return static_cast<int>(value);
}

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t");
    const auto end = text.find_last_not_of(" \t");
    return begin == std::string::npos ? std::string() : text.substr(begin, end - begin + 1);
}

}  // namespace

ExperimentConfig default_config() {
    ExperimentConfig cfg;
    cfg.cavity.omega = kTwoPi * 51.1e9;
    cfg.cavity.omega_eg = cfg.cavity.omega;
    cfg.cavity.g0 = kTwoPi * 47e3;
    cfg.cavity.quality = cfg.cavity.omega * 0.13;  // 130 ms photon lifetime
    cfg.cavity.kappa = cfg.cavity.omega / cfg.cavity.quality;
    cfg.cavity.gamma = 30.0;
    cfg.cavity.waist = 6e-3;
    cfg.cavity.velocity = 500.0;
    cfg.cavity.dipole = 1e-26;
    cfg.cavity.mode_volume = 7e-7;
    cfg.n_max = kDefaultNmax;
    cfg.t2 = 3e-5;
    cfg.bath = BathParams::from_p1(cfg.cavity.kappa, 0.05);
    cfg.probe.epsilon_per_photon = 0.5 * kPi;
    cfg.probe.probe_interval = 0.1;
    cfg.probe.dark_count_prob = 0.0;
    cfg.probe.detection_efficiency = 1.0;
    cfg.probe = calibrated(cfg.probe);
    cfg.duration = 2.0;
    cfg.field_alpha = 0.5;
    cfg.seed = 1;
    cfg.trajectories = 1000;
    cfg.ideal = false;
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(file, path);
}

namespace {

using Entries = std::map<std::string, std::pair<std::string, int>>;

ExperimentConfig resolve_entries(const Entries& entries) {
    ExperimentConfig cfg = default_config();
    auto take = [&](const char* key) -> const std::pair<std::string, int>* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };
    auto number = [&](const char* key, double& target) {
        if (const auto* entry = take(key)) target = parse_number(entry->first, key, entry->second);
    };

    number("omega", cfg.cavity.omega);
    if (const auto* entry = take("omega_eg")) {
        cfg.cavity.omega_eg = parse_number(entry->first, "omega_eg", entry->second);
    } else {
        cfg.cavity.omega_eg = cfg.cavity.omega;
    }
    number("g0", cfg.cavity.g0);
    const auto* q_entry = take("q_factor");
    const auto* kappa_entry = take("kappa");
    if (q_entry) cfg.cavity.quality = parse_number(q_entry->first, "q_factor", q_entry->second);
    if (kappa_entry) {
        cfg.cavity.kappa = parse_number(kappa_entry->first, "kappa", kappa_entry->second);
        if (q_entry) {
            const double implied = kappa_from_quality(cfg.cavity.omega, cfg.cavity.quality);
            if (std::abs(implied - cfg.cavity.kappa) > 1e-6 * std::abs(cfg.cavity.kappa)) {
                throw ConfigError("kappa and q_factor disagree; give one or make them consistent");
            }
        } else if (cfg.cavity.kappa > 0.0) {
            cfg.cavity.quality = cfg.cavity.omega / cfg.cavity.kappa;
        }
    } else {
        cfg.cavity.kappa = kappa_from_quality(cfg.cavity.omega, cfg.cavity.quality);
    }
    number("gamma", cfg.cavity.gamma);
    number("waist", cfg.cavity.waist);
    number("velocity", cfg.cavity.velocity);
    number("dipole", cfg.cavity.dipole);
    number("mode_volume", cfg.cavity.mode_volume);
    if (const auto* entry = take("n_max")) cfg.n_max = parse_int(entry->first, "n_max", entry->second);
    number("t2", cfg.t2);
    double p1 = cfg.bath.p1;
    number("p1", p1);
    number("probe_interval", cfg.probe.probe_interval);
    number("dark_count_prob", cfg.probe.dark_count_prob);
    number("detection_efficiency", cfg.probe.detection_efficiency);
    number("epsilon_per_photon", cfg.probe.epsilon_per_photon);
    bool auto_r2 = true;
    if (const auto* entry = take("r2_phase")) {
        if (entry->first != "auto") {
            cfg.probe.r2_phase = parse_number(entry->first, "r2_phase", entry->second);
            auto_r2 = false;
        }
    }
    number("duration", cfg.duration);
    number("field_alpha", cfg.field_alpha);
    if (const auto* entry = take("scan_start")) {
        if (entry->first != "auto") cfg.scan.start = parse_number(entry->first, "scan_start", entry->second);
    }
    if (const auto* entry = take("scan_stop")) {
        if (entry->first != "auto") cfg.scan.stop = parse_number(entry->first, "scan_stop", entry->second);
    }
    if (const auto* entry = take("scan_points")) {
        if (entry->first != "auto") cfg.scan.points = parse_int(entry->first, "scan_points", entry->second);
    }
    if (const auto* entry = take("seed")) cfg.seed = parse_u64(entry->first, "seed", entry->second);
    if (const auto* entry = take("trajectories")) {
        cfg.trajectories = parse_int(entry->first, "trajectories", entry->second);
    }

    cfg.bath = BathParams::from_p1(cfg.cavity.kappa, p1);
    if (auto_r2) cfg.probe = calibrated(cfg.probe);
    cfg.validate();
    return cfg;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, const std::string& origin) {
    Entries entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << origin << ": line " << line_no << ": expected 'key = value', got '" << body << "'";
            throw ConfigError(msg.str());
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        bool known = false;
        for (const KeyDoc& doc : kKeyDocs) known = known || key == doc.key;
        if (!known) {
            std::ostringstream msg;
            msg << origin << ": line " << line_no << ": unknown key '" << key << "'";
            throw ConfigError(msg.str());
        }
        if (entries.count(key)) {
            std::ostringstream msg;
            msg << origin << ": line " << line_no << ": duplicate key '" << key << "'";
            throw ConfigError(msg.str());
        }
        entries[key] = {value, line_no};
    }

    try {
        return resolve_entries(entries);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& err) {
        throw ConfigError(origin + ": " + err.what());
    }
}

std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> echo;
    auto put = [&](const std::string& key, const std::string& value) { echo.emplace_back(key, value); };
    put("omega", format_double(cfg.cavity.omega));
    put("omega_eg", format_double(cfg.cavity.omega_eg));
    put("g0", format_double(cfg.cavity.g0));
    put("q_factor", format_double(cfg.cavity.quality));
    put("kappa", format_double(cfg.cavity.kappa));
    put("gamma", format_double(cfg.cavity.gamma));
    put("waist", format_double(cfg.cavity.waist));
    put("velocity", format_double(cfg.cavity.velocity));
    put("dipole", format_double(cfg.cavity.dipole));
    put("mode_volume", format_double(cfg.cavity.mode_volume));
    put("n_max", std::to_string(cfg.n_max));
    put("t2", format_double(cfg.t2));
    put("p1", format_double(cfg.bath.p1));
    put("probe_interval", format_double(cfg.probe.probe_interval));
    put("dark_count_prob", format_double(cfg.probe.dark_count_prob));
    put("detection_efficiency", format_double(cfg.probe.detection_efficiency));
    put("epsilon_per_photon", format_double(cfg.probe.epsilon_per_photon));
    put("r2_phase", format_double(cfg.probe.r2_phase));
    put("duration", format_double(cfg.duration));
    put("field_alpha", format_double(cfg.field_alpha));
    put("scan_start", std::isfinite(cfg.scan.start) ? format_double(cfg.scan.start) : "auto");
    put("scan_stop", std::isfinite(cfg.scan.stop) ? format_double(cfg.scan.stop) : "auto");
    put("scan_points", cfg.scan.points != 0 ? std::to_string(cfg.scan.points) : "auto");
    put("seed", std::to_string(cfg.seed));
    put("trajectories", std::to_string(cfg.trajectories));
    put("ideal", cfg.ideal ? "true" : "false");
    return echo;
}

std::string config_documentation() {
    std::ostringstream out;
    const auto defaults = config_echo(default_config());
    for (const KeyDoc& doc : kKeyDocs) {
        std::string default_value = "-";
        for (const auto& [key, value] : defaults) {
            if (key == doc.key) default_value = value;
        }
        out << doc.key << " [" << doc.unit << "] (default " << default_value << "): " << doc.meaning
            << "\n";
    }
    return out.str();
}

}  // namespace cqed
