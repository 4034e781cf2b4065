#include "ogdtrack/harness.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ogdtrack/summation.hpp"

namespace ogdtrack {

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << body;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

nlohmann::json vector_json(const Vector& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (double c : v.coords()) arr.push_back(c);
    return arr;
}

template <typename Runner>
std::vector<SweepEntry> sweep_with(const std::vector<RunConfig>& configs,
                                   const std::optional<std::filesystem::path>& combined_csv,
                                   Runner&& runner) {
    if (configs.empty()) throw std::invalid_argument("sweep: no configurations");
    std::vector<SweepEntry> entries(configs.size());
    runner(entries);
    if (combined_csv) {
        if (combined_csv->has_parent_path()) std::filesystem::create_directories(combined_csv->parent_path());
        write_file(*combined_csv, sweep_csv(configs, entries));
    }
    return entries;
}

SweepEntry run_entry(const RunConfig& config) {
    SweepEntry entry;
    try {
        entry.report = run(config);
    } catch (const std::exception& e) {
        entry.error = e.what();
    }
    return entry;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

RunReport run(const RunConfig& config) {
    const auto started = std::chrono::steady_clock::now();
    const int horizon = config.resolved_horizon();
    const Scenario scenario = build_scenario(config.scenario, horizon);
    const FeasibleSet& set = scenario.set();
    const std::vector<QuadraticLoss> losses = scenario.losses();
    const LossConstants constants = family_constants(losses, set);

    const OGDConfig cfg{config.gamma.value_or(constants.lip), config.h};
    cfg.validate();

    Vector x1 = config.x_init.value_or(Vector{0.0, 40.0});
    if (config.start_at_optimum) x1 = minimizer(losses.front(), set);
    if (!contains(set, x1)) {
        throw std::invalid_argument("run: initial action " + to_string(x1) + " is outside " + to_string(set));
    }

    // The adversary side of the loop. The tracker only ever receives g.
    std::vector<StepRecord> records;
    records.reserve(static_cast<std::size_t>(horizon));
    const GradientFeed feed = [&](int t, const Vector& x) {
        const QuadraticLoss& loss = losses[static_cast<std::size_t>(t - 1)];
        Vector x_star = minimizer(loss, set);
        Vector g = grad(loss, x);
        const double f_star = eval(loss, x_star);
        const double gn = g.norm();
        records.push_back(StepRecord{t, x, std::move(x_star), eval(loss, x), f_star, g, gn, std::nullopt});
        return g;
    };
    const Trajectory path = track(set, cfg, x1, horizon, feed);

    RunReport report(Trace{std::move(records), set, constants, cfg, path.final_action});
    report.scenario = scenario.name();
    report.horizon = horizon;
    report.gamma = cfg.gamma;
    report.h = cfg.h;
    report.constants = constants;
    Trace& trace = report.trace;
    predict_with_previous_gradient(trace);

    CompensatedSum c_t, reg_t;
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
        const StepRecord& r = trace.records[i];
        if (i > 0) c_t.add(distance(r.x_star, trace.records[i - 1].x_star));
        reg_t.add(r.f_x - r.f_star);
        report.cumulative_path.push_back(c_t.value());
        report.cumulative_regret.push_back(reg_t.value());
    }
    if (set.dimension() == 2) {
        for (const QuadraticLoss& loss : losses) report.centers.emplace_back(loss.center()[0], loss.center()[1]);
    }

    report.final_x = trace.records.back().x;
    report.final_x_star = trace.records.back().x_star;
    report.path_length = path_length(trace);
    report.functional_variation = functional_variation(losses, set);
    report.gradient_variation = gradient_variation(trace);
    report.dynamic_regret = dynamic_regret(trace);
    report.static_regret = static_regret(trace, losses);
    try {
        report.certificate = certify(trace);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("run: certificate computation failed: ") + e.what());
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    if (!config.emit.empty()) write_artifacts(report, config);
    return report;
}

int exit_code(const RunReport& report) {
    return report.certificate.valid && !report.certificate.holds() ? 2 : 0;
}

std::string trace_csv(const RunReport& report) {
    const auto& recs = report.trace.records;
    const std::size_t n = recs.front().x.size();
    std::ostringstream out;
    out << 't';
    for (std::size_t i = 1; i <= n; ++i) out << ",x" << i;
    for (std::size_t i = 1; i <= n; ++i) out << ",xstar" << i;
    out << ",f_x,f_star,inst_error,grad_norm,C_t,Reg_t\n";
    for (std::size_t k = 0; k < recs.size(); ++k) {
        const StepRecord& r = recs[k];
        out << r.t;
        for (double v : r.x.coords()) out << ',' << format_double(v);
        for (double v : r.x_star.coords()) out << ',' << format_double(v);
        out << ',' << format_double(r.f_x) << ',' << format_double(r.f_star) << ','
            << format_double(r.f_x - r.f_star) << ',' << format_double(r.grad_norm) << ','
            << format_double(report.cumulative_path[k]) << ',' << format_double(report.cumulative_regret[k])
            << '\n';
    }
    return out.str();
}

std::string bounds_csv(const RunReport& report) {
    const Trace& trace = report.trace;
    const double rho = report.certificate.rho;
    std::ostringstream out;
    out << "t,dist_to_opt,contraction_rhs,violated\n";
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
        const StepRecord& r = trace.records[i];
        const Vector& next = i + 1 < trace.records.size() ? trace.records[i + 1].x
                                                         : trace.final_action.value_or(r.x);
        const double reach = distance(next, r.x_star);
        const double dist = distance(r.x, r.x_star);
        const double rhs = rho * dist;
        const bool violated = reach > rhs + 1e-9 * (1.0 + dist);
        out << r.t << ',' << format_double(reach) << ',' << format_double(rhs) << ',' << (violated ? 1 : 0)
            << '\n';
    }
    return out.str();
}

std::string path_csv(const RunReport& report) {
    std::ostringstream out;
    out << "t,a_t,b_t,xstar1,xstar2\n";
    for (std::size_t i = 0; i < report.centers.size(); ++i) {
        const StepRecord& r = report.trace.records[i];
        out << r.t << ',' << format_double(report.centers[i].first) << ','
            << format_double(report.centers[i].second) << ',' << format_double(r.x_star[0]) << ','
            << format_double(r.x_star[1]) << '\n';
    }
    return out.str();
}

std::string summary_json(const RunReport& report) {
    const BoundCertificate& c = report.certificate;
    nlohmann::ordered_json j;
    j["scenario"] = report.scenario;
    j["horizon"] = report.horizon;
    j["gamma"] = report.gamma;
    j["h"] = report.h;
    j["mu"] = report.constants.mu;
    j["lip"] = report.constants.lip;
    j["grad_bound"] = report.constants.grad_bound;
    j["final_x"] = vector_json(report.final_x);
    j["final_x_star"] = vector_json(report.final_x_star);
    j["path_length"] = report.path_length;
    j["functional_variation"] = report.functional_variation;
    j["gradient_variation"] = report.gradient_variation;
    j["dynamic_regret"] = report.dynamic_regret;
    j["static_regret"] = report.static_regret;
    j["certificate"] = {
        {"rho", c.rho},
        {"K1", c.K1},
        {"K2", c.K2},
        {"path_length", c.path_length},
        {"tracking_sum", c.tracking_sum},
        {"tracking_bound", c.tracking_bound},
        {"telescoped_bound", c.telescoped_bound},
        {"dyn_regret", c.dyn_regret},
        {"regret_bound", c.regret_bound},
        {"contraction_checks", c.contraction_checks},
        {"contraction_violations", c.contraction_violations},
        {"tracking_holds", c.tracking_holds},
        {"regret_holds", c.regret_holds},
        {"valid", c.valid},
        {"holds", c.holds()},
    };
    j["wall_seconds"] = report.wall_seconds;
    return j.dump(2) + "\n";
}

void write_artifacts(const RunReport& report, const RunConfig& config) {
    if (config.emit.empty()) return;
    std::filesystem::create_directories(config.output_dir);
    if (config.emit.contains(Artifact::trace)) {
        write_file(config.output_dir / "trace.csv", trace_csv(report));
        if (!report.centers.empty()) write_file(config.output_dir / "path.csv", path_csv(report));
    }
    if (config.emit.contains(Artifact::bounds)) write_file(config.output_dir / "bounds.csv", bounds_csv(report));
    if (config.emit.contains(Artifact::summary)) {
        write_file(config.output_dir / "summary.json", summary_json(report));
    }
}

std::vector<SweepEntry> sweep(const std::vector<RunConfig>& configs,
                              const std::optional<std::filesystem::path>& combined_csv) {
    return sweep_with(configs, combined_csv, [&](std::vector<SweepEntry>& entries) {
        const auto count = static_cast<long>(configs.size());
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < count; ++i) {
            entries[static_cast<std::size_t>(i)] = run_entry(configs[static_cast<std::size_t>(i)]);
        }
    });
}

std::vector<SweepEntry> sweep_serial(const std::vector<RunConfig>& configs,
                                     const std::optional<std::filesystem::path>& combined_csv) {
    return sweep_with(configs, combined_csv, [&](std::vector<SweepEntry>& entries) {
        for (std::size_t i = 0; i < configs.size(); ++i) entries[i] = run_entry(configs[i]);
    });
}

std::string sweep_csv(const std::vector<RunConfig>& configs, const std::vector<SweepEntry>& entries) {
    std::ostringstream out;
    out << "run,scenario,tau,horizon,gamma,h,C_T,V_T,D_T,dyn_regret,static_regret,rho,K1,K2,"
           "tracking_sum,tracking_bound,regret_bound,contraction_violations,certificate_holds,error\n";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const RunConfig& cfg = configs[i];
        out << i << ',' << cfg.scenario.name << ',' << cfg.scenario.tau << ',' << cfg.resolved_horizon() << ',';
        if (const auto& r = entries[i].report) {
            const BoundCertificate& c = r->certificate;
            out << format_double(r->gamma) << ',' << format_double(r->h) << ',' << format_double(r->path_length)
                << ',' << format_double(r->functional_variation) << ',' << format_double(r->gradient_variation)
                << ',' << format_double(r->dynamic_regret) << ',' << format_double(r->static_regret) << ','
                << format_double(c.rho) << ',' << format_double(c.K1) << ',' << format_double(c.K2) << ','
                << format_double(c.tracking_sum) << ',' << format_double(c.tracking_bound) << ','
                << format_double(c.regret_bound) << ',' << c.contraction_violations << ',' << (c.holds() ? 1 : 0)
                << ",\n";
        } else {
            std::string msg = entries[i].error;
            for (char& ch : msg) {
                if (ch == ',' || ch == '\n') ch = ' ';
            }
            out << ",,,,,,,,,,,,,,," << msg << '\n';
        }
    }
    return out.str();
}

}  // namespace ogdtrack
