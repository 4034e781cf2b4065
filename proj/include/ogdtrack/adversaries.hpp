// Oblivious adversaries: loss sequences fixed before the learner plays.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ogdtrack/core.hpp"
#include "ogdtrack/losses.hpp"

namespace ogdtrack {

/// Parameters of a planar loss cond * (x1 - a)^2 + (x2 - b)^2 + c.
struct LossParams {
    double a;
    double b;
    double c;
};

class Scenario {
public:
    using LossAt = std::function<QuadraticLoss(int t)>;

    Scenario(std::string name, int horizon, FeasibleSet set, LossAt loss_at, std::string description);

    const std::string& name() const noexcept { return name_; }
    int horizon() const noexcept { return horizon_; }
    const FeasibleSet& set() const noexcept { return set_; }
    const std::string& description() const noexcept { return description_; }

    /// Loss of round t, 1 <= t <= horizon().
    QuadraticLoss loss_at(int t) const;
    std::vector<QuadraticLoss> losses() const;

private:
    std::string name_;
    int horizon_;
    FeasibleSet set_;
    LossAt loss_at_;
    std::string description_;
};

/// Rounds 1..tau play `first`, tau+1..2tau play `second`, and so on. The
/// k-th switch lands on round k*tau + 1.
Scenario switching(LossParams first, LossParams second, double cond, int tau, int horizon,
                   FeasibleSet set);

/// b_t = b1, a_{t+1} = a_t + drift_coeff * sqrt(1/t), zero offsets.
Scenario diminishing(double a1, double b1, double drift_coeff, double cond, int horizon,
                     FeasibleSet set);

/// Round-t center of the diminishing scenario, t >= 1.
std::vector<double> diminishing_schedule(double a1, double drift_coeff, int horizon);

enum class Regime {
    constant,        ///< no drift
    log_path,        ///< step 1/t, C_T = Theta(log T)
    power_path,      ///< step 1/t^alpha, C_T = Theta(T^(1 - alpha))
    constant_drift,  ///< step C, C_T = Theta(T)
};

struct RegimeSpec {
    Regime regime = Regime::constant;
    double alpha = 0.5;  ///< power_path exponent, in (0, 1)
    double drift = 1.0;  ///< constant_drift step, > 0
};

struct PresetOptions {
    /// Drift direction; normalized internally.
    Vector direction{1.0, 0.0};
    /// Reverse the drift whenever the next center would leave the set, so
    /// every minimizer equals its (interior) center. When false the center
    /// drifts freely.
    bool keep_interior = true;
};

/// Step length applied between round t-1 and round t.
double regime_step(const RegimeSpec& spec, int t);

Scenario preset(const RegimeSpec& spec, LossParams base, double cond, int horizon, FeasibleSet set,
                const PresetOptions& options = {});

const char* to_string(Regime regime);
Regime parse_regime(const std::string& name);

}  // namespace ogdtrack
