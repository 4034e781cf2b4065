#include "ogdtrack/ogd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ogdtrack {

void OGDConfig::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("OGDConfig: gamma must be positive and finite");
    }
    if (!(h > 0.0 && h <= 1.0)) throw std::invalid_argument("OGDConfig: h must lie in (0, 1]");
}

Vector aux_step(const Vector& x, const Vector& g, const FeasibleSet& set, const OGDConfig& cfg) {
    require_same_dimension(x, g, "aux_step");
    return project(set, x - g / cfg.gamma);
}

Vector prox_step(const Vector& x, const Vector& g, const FeasibleSet& set, const OGDConfig& cfg) {
    require_same_dimension(x, g, "prox_step");
    const std::size_t n = x.size();
    if (set.dimension() != n) throw DimensionError("prox_step: dimension mismatch with set");

    if (const Ball* ball = set.as_ball()) {
        // Stationarity: g + gamma (v - x) + 2 lambda (v - b) = 0 with
        // lambda >= 0 and lambda (||v - b|| - r) = 0. The objective is
        // isotropic, so v - b is parallel to (gamma (x - b) - g).
        std::vector<double> pull(n);
        double pull_norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            pull[i] = cfg.gamma * (x[i] - ball->center[i]) - g[i];
            pull_norm2 += pull[i] * pull[i];
        }
        const double pull_norm = std::sqrt(pull_norm2);
        const double lambda = std::max(0.0, 0.5 * (pull_norm / ball->radius - cfg.gamma));
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = ball->center[i] + pull[i] / (cfg.gamma + 2.0 * lambda);
        }
        return Vector(std::move(v));
    }

    // Per coordinate: minimize g_i s + (gamma/2) s^2 over s in [l_i - x_i, u_i - x_i].
    const Box& box = *set.as_box();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = -g[i] / cfg.gamma;
        const double s_lo = box.lower[i] - x[i];
        const double s_hi = box.upper[i] - x[i];
        if (s <= s_lo) {
            v[i] = box.lower[i];
        } else if (s >= s_hi) {
            v[i] = box.upper[i];
        } else {
            v[i] = x[i] + s;
        }
    }
    return Vector(std::move(v));
}

std::pair<OGDState, Vector> step(const OGDState& state, const Vector& g, const FeasibleSet& set,
                                 const OGDConfig& cfg) {
    Vector xhat = aux_step(state.x, g, set, cfg);
    if (cfg.h == 1.0) return {OGDState{xhat, state.t + 1}, xhat};
    Vector next = state.x + (xhat - state.x) * cfg.h;
    return {OGDState{std::move(next), state.t + 1}, std::move(xhat)};
}

double contraction_factor(const OGDConfig& cfg, double mu) {
    const double ratio = cfg.h * mu / cfg.gamma;
    if (!(ratio > 0.0 && ratio <= 1.0)) {
        std::ostringstream msg;
        msg << "contraction_factor: h*mu/gamma = " << ratio << " must lie in (0, 1]";
        throw std::invalid_argument(msg.str());
    }
    return std::sqrt(1.0 - ratio);
}

Trajectory track(const FeasibleSet& set, const OGDConfig& cfg, const Vector& x1, int rounds,
                 const GradientFeed& feed) {
    cfg.validate();
    if (rounds < 1) throw std::invalid_argument("track: need at least one round");
    if (!contains(set, x1)) {
        throw std::invalid_argument("track: initial action " + to_string(x1) + " is outside " +
                                    to_string(set));
    }
    Trajectory out{{}, {}, x1};
    out.actions.reserve(static_cast<std::size_t>(rounds));
    out.auxiliary.reserve(static_cast<std::size_t>(rounds));
    OGDState state{x1, 1};
    for (int t = 1; t <= rounds; ++t) {
        out.actions.push_back(state.x);
        const Vector g = feed(t, state.x);
        auto [next, xhat] = step(state, g, set, cfg);
        out.auxiliary.push_back(std::move(xhat));
        state = std::move(next);
    }
    out.final_action = state.x;
    return out;
}

}  // namespace ogdtrack
