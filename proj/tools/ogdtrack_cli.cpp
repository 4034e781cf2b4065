// ogdtrack: run the online gradient descent tracker against a scenario and
// emit trace / bound / summary artifacts.
//
//   ogdtrack run   [--config FILE] [--scenario ...] [--tau N] ...
//   ogdtrack sweep [--config FILE] --tau 4,8,16 ...
//
// Exit codes: 0 ok, 2 certificate violated with gamma >= L, 1 error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "ogdtrack/harness.hpp"

namespace {

using namespace ogdtrack;

struct Flags {
    std::string config_file;
    std::vector<std::pair<std::string, std::string>> overrides;
};

bool use_color() { return std::getenv("NO_COLOR") == nullptr && isatty(fileno(stdout)); }

std::string paint(const std::string& text, const char* code) {
    if (!use_color()) return text;
    return std::string("\033[") + code + "m" + text + "\033[0m";
}

// Registers the flags that map one-to-one onto config keys.
void add_run_flags(CLI::App* cmd, Flags& flags, bool tau_is_list, std::string& tau_list) {
    cmd->add_option("--config", flags.config_file, "key = value config file")->check(CLI::ExistingFile);
    auto add = [&](const std::string& name, const std::string& help) {
        cmd->add_option_function<std::string>(
            "--" + name, [&flags, name](const std::string& v) { flags.overrides.emplace_back(name, v); }, help);
    };
    add("scenario", "switching|diminishing|constant|log_path|power_path|constant_drift");
    add("horizon", "number of rounds T");
    if (tau_is_list) {
        cmd->add_option("--tau", tau_list, "comma-separated switching periods")->required();
    } else {
        add("tau", "switching period");
    }
    add("cond", "condition coefficient of the quadratic");
    add("gamma", "inverse stepsize, number or 'auto'");
    add("h", "averaging weight in (0, 1]");
    add("x-init", "initial action, e.g. 0,40 or 'optimum'");
    add("radius", "radius of the feasible ball");
    add("out", "output directory");
    add("emit", "comma list of trace,bounds,summary or 'none'");
    add("alpha", "power_path exponent");
    add("drift", "constant_drift step");
}

RunConfig resolve(const Flags& flags) {
    RunConfig config = flags.config_file.empty() ? RunConfig{} : load_config(flags.config_file);
    for (const auto& [key, value] : flags.overrides) apply_setting(config, key, value);
    return config;
}

void print_report(const RunReport& r, const std::string& out_dir) {
    const BoundCertificate& c = r.certificate;
    std::cout << "scenario         " << r.scenario << "  (T=" << r.horizon << ", gamma=" << format_double(r.gamma)
              << ", h=" << format_double(r.h) << ")\n"
              << "constants        mu=" << format_double(r.constants.mu) << " L=" << format_double(r.constants.lip)
              << " G=" << format_double(r.constants.grad_bound) << '\n'
              << "path length C_T  " << format_double(r.path_length) << '\n'
              << "V_T / D_T        " << format_double(r.functional_variation) << " / "
              << format_double(r.gradient_variation) << '\n'
              << "dynamic regret   " << format_double(r.dynamic_regret) << '\n'
              << "static regret    " << format_double(r.static_regret) << '\n'
              << "contraction      rho=" << format_double(c.rho) << ", " << c.contraction_violations << " of "
              << c.contraction_checks << " rounds violated\n"
              << "tracking bound   " << format_double(c.tracking_sum) << " <= " << format_double(c.tracking_bound) << '\n'
              << "regret bound     " << format_double(c.dyn_regret) << " <= " << format_double(c.regret_bound) << '\n';
    std::string status;
    if (!c.valid) {
        status = paint("not certified (gamma < L)", "33");
    } else if (c.holds()) {
        status = paint("certificate holds", "32");
    } else {
        status = paint("certificate VIOLATED", "31");
    }
    std::cout << "status           " << status << '\n';
    if (!out_dir.empty()) std::cout << "artifacts        " << out_dir << '\n';
}

int run_single(const Flags& flags) {
    const RunConfig config = resolve(flags);
    const RunReport report = run(config);
    print_report(report, config.emit.empty() ? std::string() : config.output_dir.string());
    return exit_code(report);
}

int run_sweep(const Flags& flags, const std::string& tau_list) {
    const RunConfig base = resolve(flags);
    std::vector<RunConfig> configs;
    std::string cleaned = tau_list;
    for (char& ch : cleaned) {
        if (ch == ',') ch = ' ';
    }
    std::istringstream in(cleaned);
    std::string token;
    while (in >> token) {
        RunConfig cfg = base;
        apply_setting(cfg, "tau", token);
        cfg.output_dir = base.output_dir / (cfg.scenario.name + "_tau" + token);
        configs.push_back(std::move(cfg));
    }
    const auto combined = base.emit.empty() ? std::nullopt
                                            : std::optional<std::filesystem::path>(base.output_dir / "sweep.csv");
    const std::vector<SweepEntry> entries = sweep(configs, combined);

    int code = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        std::cout << "== tau=" << configs[i].scenario.tau << '\n';
        if (entries[i].report) {
            print_report(*entries[i].report,
                         configs[i].emit.empty() ? std::string() : configs[i].output_dir.string());
            if (code != 1) code = std::max(code, exit_code(*entries[i].report));
        } else {
            std::cerr << paint("error: ", "31") << entries[i].error << '\n';
            code = 1;
        }
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online gradient descent tracker with dynamic-regret accounting"};
    app.require_subcommand(1);
    // -h would collide with the averaging weight flag.
    app.set_help_flag("--help", "Print this help message and exit");

    Flags run_flags;
    std::string unused;
    CLI::App* run_cmd = app.add_subcommand("run", "run one scenario");
    add_run_flags(run_cmd, run_flags, false, unused);

    Flags sweep_flags;
    std::string tau_list;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run one scenario over several switching periods");
    add_run_flags(sweep_cmd, sweep_flags, true, tau_list);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) return run_single(run_flags);
        return run_sweep(sweep_flags, tau_list);
    } catch (const std::exception& e) {
        std::cerr << paint("error: ", "31") << e.what() << '\n';
        return 1;
    }
}
