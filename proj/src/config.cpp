#include "ogdtrack/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ogdtrack {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string key) {
    std::replace(key.begin(), key.end(), '-', '_');
    return key;
}

double parse_double(const std::string& key, const std::string& text) {
    const std::string v = trim(text);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
        throw std::invalid_argument("config: '" + key + "' expects a number, got '" + text + "'");
    }
    return out;
}

int parse_int(const std::string& key, const std::string& text) {
    const std::string v = trim(text);
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
        throw std::invalid_argument("config: '" + key + "' expects an integer, got '" + text + "'");
    }
    return out;
}

}  // namespace

Scenario build_scenario(const ScenarioSpec& spec, int horizon) {
    FeasibleSet set = FeasibleSet::ball(Vector{0.0, 0.0}, spec.radius);
    if (spec.name == "switching") {
        return switching(spec.first, spec.second, spec.cond, spec.tau, horizon, std::move(set));
    }
    if (spec.name == "diminishing") {
        return diminishing(spec.a1, spec.b1, spec.drift_coeff, spec.cond, horizon, std::move(set));
    }
    RegimeSpec regime{parse_regime(spec.name), spec.alpha, spec.drift};
    return preset(regime, spec.base, spec.cond, horizon, std::move(set));
}

Vector parse_vector(const std::string& text) {
    std::string cleaned;
    for (char ch : text) {
        if (ch == '[' || ch == ']') continue;
        cleaned.push_back(ch == ';' || ch == ',' ? ' ' : ch);
    }
    std::istringstream in(cleaned);
    std::vector<double> coords;
    std::string token;
    while (in >> token) coords.push_back(parse_double("vector", token));
    if (coords.empty()) throw std::invalid_argument("config: empty vector '" + text + "'");
    return Vector(std::move(coords));
}

std::set<Artifact> parse_emit(const std::string& text) {
    std::set<Artifact> out;
    std::string cleaned = text;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::istringstream in(cleaned);
    std::string item;
    while (in >> item) {
        if (item == "none") continue;
        if (item == "trace") {
            out.insert(Artifact::trace);
        } else if (item == "bounds") {
            out.insert(Artifact::bounds);
        } else if (item == "summary") {
            out.insert(Artifact::summary);
        } else {
            throw std::invalid_argument("config: unknown artifact '" + item + "'");
        }
    }
    return out;
}

const char* to_string(Artifact a) {
    switch (a) {
        case Artifact::trace:
            return "trace";
        case Artifact::bounds:
            return "bounds";
        case Artifact::summary:
            return "summary";
    }
    return "unknown";
}

void apply_setting(RunConfig& config, const std::string& raw_key, const std::string& raw_value) {
    const std::string key = normalize_key(trim(raw_key));
    const std::string value = trim(raw_value);
    ScenarioSpec& s = config.scenario;

    if (key == "scenario") {
        if (value != "switching" && value != "diminishing") parse_regime(value);
        s.name = value;
    } else if (key == "horizon") {
        config.horizon = parse_int(key, value);
    } else if (key == "tau") {
        s.tau = parse_int(key, value);
    } else if (key == "cond") {
        s.cond = parse_double(key, value);
    } else if (key == "radius") {
        s.radius = parse_double(key, value);
    } else if (key == "gamma") {
        if (value == "auto") {
            config.gamma.reset();
        } else {
            config.gamma = parse_double(key, value);
        }
    } else if (key == "h") {
        config.h = parse_double(key, value);
    } else if (key == "x_init") {
        if (value == "optimum") {
            config.start_at_optimum = true;
            config.x_init.reset();
        } else {
            config.start_at_optimum = false;
            config.x_init = parse_vector(value);
        }
    } else if (key == "out") {
        config.output_dir = value;
    } else if (key == "emit") {
        config.emit = parse_emit(value);
    } else if (key == "a") {
        s.first.a = parse_double(key, value);
    } else if (key == "b") {
        s.first.b = parse_double(key, value);
    } else if (key == "c") {
        s.first.c = parse_double(key, value);
    } else if (key == "a2") {
        s.second.a = parse_double(key, value);
    } else if (key == "b2") {
        s.second.b = parse_double(key, value);
    } else if (key == "c2") {
        s.second.c = parse_double(key, value);
    } else if (key == "a1") {
        s.a1 = parse_double(key, value);
    } else if (key == "b1") {
        s.b1 = parse_double(key, value);
    } else if (key == "drift_coeff") {
        s.drift_coeff = parse_double(key, value);
    } else if (key == "base_a") {
        s.base.a = parse_double(key, value);
    } else if (key == "base_b") {
        s.base.b = parse_double(key, value);
    } else if (key == "base_c") {
        s.base.c = parse_double(key, value);
    } else if (key == "alpha") {
        s.alpha = parse_double(key, value);
    } else if (key == "drift") {
        s.drift = parse_double(key, value);
    } else {
        throw std::invalid_argument("config: unknown key '" + raw_key + "'");
    }
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        }
        out[normalize_key(trim(line.substr(0, eq)))] = trim(line.substr(eq + 1));
    }
    return out;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    RunConfig config;
    for (const auto& [key, value] : parse_key_values(buf.str())) apply_setting(config, key, value);
    return config;
}

}  // namespace ogdtrack
