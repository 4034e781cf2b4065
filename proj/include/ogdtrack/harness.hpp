// Experiment runner: plays the tracker against a scenario, records the
// trace, computes every regret measure and bound certificate, and writes
// the CSV / summary artifacts.
//
// Artifacts (one directory per run):
//   trace.csv    t,x1..xn,xstar1..xstarn,f_x,f_star,inst_error,grad_norm,C_t,Reg_t
//   bounds.csv   t,dist_to_opt,contraction_rhs,violated
//                dist_to_opt = ||x_{t+1} - x_t*||, contraction_rhs = rho ||x_t - x_t*||
//   path.csv     t,a_t,b_t,xstar1,xstar2   (planar scenarios, with trace)
//   summary.json every RunReport field
// Numbers are written as shortest round-trip decimals.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ogdtrack/config.hpp"
#include "ogdtrack/regret.hpp"

namespace ogdtrack {

struct RunReport {
    explicit RunReport(Trace t) : trace(std::move(t)) {}

    std::string scenario;
    int horizon = 0;
    double gamma = 0.0;
    double h = 0.0;
    LossConstants constants{};
    Vector final_x{0.0};
    Vector final_x_star{0.0};
    double path_length = 0.0;           ///< C_T
    double functional_variation = 0.0;  ///< V_T
    double gradient_variation = 0.0;    ///< D_T, previous-gradient predictor
    double dynamic_regret = 0.0;
    double static_regret = 0.0;
    BoundCertificate certificate{};
    double wall_seconds = 0.0;

    Trace trace;
    std::vector<double> cumulative_path;    ///< C_t, t = 1..T
    std::vector<double> cumulative_regret;  ///< Reg_t, t = 1..T
    std::vector<std::pair<double, double>> centers;  ///< unconstrained minimizers (planar only)
};

/// Executes one run and writes the requested artifacts to config.output_dir.
RunReport run(const RunConfig& config);

/// 0: certificate holds (or gamma < L, where nothing is asserted);
/// 2: gamma >= L but a certified inequality failed.
int exit_code(const RunReport& report);

void write_artifacts(const RunReport& report, const RunConfig& config);

std::string trace_csv(const RunReport& report);
std::string bounds_csv(const RunReport& report);
std::string path_csv(const RunReport& report);
std::string summary_json(const RunReport& report);

struct SweepEntry {
    std::optional<RunReport> report;
    std::string error;  ///< empty on success
};

/// Runs every config in parallel (runs share no state). A failing run is
/// recorded in its entry and the sweep continues. When `combined_csv` is
/// set, a one-row-per-run comparison table is written there.
std::vector<SweepEntry> sweep(const std::vector<RunConfig>& configs,
                              const std::optional<std::filesystem::path>& combined_csv = std::nullopt);

/// Serial reference for `sweep`.
std::vector<SweepEntry> sweep_serial(const std::vector<RunConfig>& configs,
                                     const std::optional<std::filesystem::path>& combined_csv = std::nullopt);

std::string sweep_csv(const std::vector<RunConfig>& configs, const std::vector<SweepEntry>& entries);

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

}  // namespace ogdtrack
