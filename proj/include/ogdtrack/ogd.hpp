// Online gradient descent with a constant stepsize.
//
// Each round the learner plays x_t, is shown only the gradient g_t of the
// adversary's loss at x_t, and updates
//
//     xhat_t  = P_X(x_t - g_t / gamma)
//     x_{t+1} = x_t + h (xhat_t - x_t)
//
// The learner never sees a loss object: every entry point here takes
// gradients, not losses.

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ogdtrack/core.hpp"

namespace ogdtrack {

struct OGDConfig {
    double gamma;  ///< inverse stepsize, > 0
    double h;      ///< averaging weight in (0, 1]

    /// Throws std::invalid_argument unless gamma > 0 and 0 < h <= 1.
    void validate() const;
};

struct OGDState {
    Vector x;
    int t = 1;
};

/// Projected gradient step: P_X(x - g / gamma).
Vector aux_step(const Vector& x, const Vector& g, const FeasibleSet& set, const OGDConfig& cfg);

/// argmin over v in X of g'(v - x) + (gamma/2) ||v - x||^2, solved through
/// the multiplier of the constraint rather than by projection. Agrees with
/// aux_step for every input; kept separate so the two can be cross-checked.
Vector prox_step(const Vector& x, const Vector& g, const FeasibleSet& set, const OGDConfig& cfg);

/// Advances one round. Returns the next state and the auxiliary iterate.
std::pair<OGDState, Vector> step(const OGDState& state, const Vector& g, const FeasibleSet& set,
                                 const OGDConfig& cfg);

/// sqrt(1 - h * mu / gamma). Throws if h * mu / gamma lies outside (0, 1].
double contraction_factor(const OGDConfig& cfg, double mu);

/// Gradient feedback for round t at the played action.
using GradientFeed = std::function<Vector(int t, const Vector& x)>;

struct Trajectory {
    std::vector<Vector> actions;    ///< x_1 .. x_T
    std::vector<Vector> auxiliary;  ///< xhat_1 .. xhat_T
    Vector final_action;            ///< x_{T+1}
};

/// Plays `rounds` rounds from x1, querying `feed` exactly once per round.
Trajectory track(const FeasibleSet& set, const OGDConfig& cfg, const Vector& x1, int rounds,
                 const GradientFeed& feed);

}  // namespace ogdtrack
