// Regret and variation accounting over a recorded trace, and runtime
// certificates for the tracker's contraction and path-length bounds.
//
// The per-round minimizers x_t* are recorded by whoever knows the losses;
// everything here is a pure fold over those records.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ogdtrack/core.hpp"
#include "ogdtrack/losses.hpp"
#include "ogdtrack/ogd.hpp"

namespace ogdtrack {

struct StepRecord {
    int t;
    Vector x;
    Vector x_star;
    double f_x;
    double f_star;
    Vector grad;       ///< gradient revealed at x
    double grad_norm;
    std::optional<Vector> predicted_grad;  ///< causal prediction M_t of grad
};

struct Trace {
    std::vector<StepRecord> records;
    FeasibleSet set;
    LossConstants constants;
    OGDConfig config;
    /// x_{T+1}, when known, so the contraction can be checked on round T too.
    std::optional<Vector> final_action;

    int horizon() const noexcept { return static_cast<int>(records.size()); }
    /// Throws if the trace is empty or the rounds are not 1..T in order.
    void validate() const;
};

struct BoundCertificate {
    double rho;
    double K1;
    double K2;
    double path_length;
    double tracking_sum;         ///< sum_t ||x_t - x_t*||
    double tracking_bound;         ///< K1 * C_T + K2
    double telescoped_bound;   ///< K1 + K2 * C_T
    double dyn_regret;
    double regret_bound;         ///< G * (K1 * C_T + K2)
    int contraction_checks;
    int contraction_violations;
    bool tracking_holds;
    bool regret_holds;
    bool valid;              ///< gamma >= L, so the bounds are guaranteed

    bool holds() const noexcept { return contraction_violations == 0 && tracking_holds && regret_holds; }
};

/// sum_{t <= upto} f_t(x_t) - f_t(x_t*)
double dynamic_regret(const Trace& trace, int upto);
double dynamic_regret(const Trace& trace);

/// sum_t f_t(x_t) - min over x in X of sum_t f_t(x)
double static_regret(const Trace& trace, std::span<const QuadraticLoss> losses);

/// C_upto = sum_{t=2..upto} ||x_t* - x_{t-1}*||
double path_length(const Trace& trace, int upto);
double path_length(const Trace& trace);

/// Round-t prediction map applied to x_{t-1}*.
using Dynamics = std::function<Vector(int t, const Vector& previous)>;

/// sum_{t=2..T} ||x_t* - dynamics(t, x_{t-1}*)||. An empty `dynamics`
/// means identity.
double predicted_path_length(const Trace& trace, const Dynamics& dynamics = {});

/// sum_{t=2..T} sup over x in X of |f_t(x) - f_{t-1}(x)|
double functional_variation(std::span<const QuadraticLoss> losses, const FeasibleSet& set);

/// Fills every record's predicted_grad with the previously revealed
/// gradient; round 1 gets `first` (zero when omitted).
void predict_with_previous_gradient(Trace& trace, const std::optional<Vector>& first = std::nullopt);

/// sum_t ||grad_t - M_t||^2. Throws if any prediction is missing.
double gradient_variation(const Trace& trace);

/// Slack used for every certified inequality: rel * |rhs| + abs.
struct CertificateTolerance {
    double relative = 1e-9;
    double absolute = 1e-6;
};

BoundCertificate certify(const Trace& trace, CertificateTolerance tol = {});

}  // namespace ogdtrack
