#include "ogdtrack/adversaries.hpp"

#include <cmath>
#include <memory>
#include <sstream>

namespace ogdtrack {

namespace {

void require_planar(const FeasibleSet& set, const char* what) {
    if (set.dimension() != 2) {
        throw DimensionError(std::string(what) + ": planar losses need a 2-D feasible set");
    }
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive");
}

}  // namespace

Scenario::Scenario(std::string name, int horizon, FeasibleSet set, LossAt loss_at, std::string description)
    : name_(std::move(name)),
      horizon_(horizon),
      set_(std::move(set)),
      loss_at_(std::move(loss_at)),
      description_(std::move(description)) {
    if (horizon_ < 1) throw std::invalid_argument("Scenario: horizon must be at least 1");
    if (!loss_at_) throw std::invalid_argument("Scenario: missing loss schedule");
}

QuadraticLoss Scenario::loss_at(int t) const {
    if (t < 1 || t > horizon_) {
        throw std::out_of_range("Scenario " + name_ + ": round " + std::to_string(t) + " outside horizon");
    }
    return loss_at_(t);
}

std::vector<QuadraticLoss> Scenario::losses() const {
    std::vector<QuadraticLoss> out;
    out.reserve(static_cast<std::size_t>(horizon_));
    for (int t = 1; t <= horizon_; ++t) out.push_back(loss_at(t));
    return out;
}

Scenario switching(LossParams first, LossParams second, double cond, int tau, int horizon,
                   FeasibleSet set) {
    require_planar(set, "switching");
    require_positive(cond, "switching: cond");
    if (tau < 1) throw std::invalid_argument("switching: tau must be at least 1");
    const QuadraticLoss f1 = QuadraticLoss::planar(cond, first.a, first.b, first.c);
    const QuadraticLoss f2 = QuadraticLoss::planar(cond, second.a, second.b, second.c);
    std::ostringstream desc;
    desc << "alternates two quadratics every " << tau << " rounds";
    return Scenario("switching", horizon, std::move(set),
                    [f1, f2, tau](int t) { return ((t - 1) / tau) % 2 == 0 ? f1 : f2; }, desc.str());
}

std::vector<double> diminishing_schedule(double a1, double drift_coeff, int horizon) {
    std::vector<double> a(static_cast<std::size_t>(std::max(horizon, 1)));
    a[0] = a1;
    for (std::size_t i = 1; i < a.size(); ++i) {
        // a_{t+1} = a_t + k sqrt(1/t) with t = i
        a[i] = a[i - 1] + drift_coeff * std::sqrt(1.0 / static_cast<double>(i));
    }
    return a;
}

Scenario diminishing(double a1, double b1, double drift_coeff, double cond, int horizon,
                     FeasibleSet set) {
    require_planar(set, "diminishing");
    require_positive(cond, "diminishing: cond");
    if (horizon < 1) throw std::invalid_argument("diminishing: horizon must be at least 1");
    auto a = std::make_shared<const std::vector<double>>(diminishing_schedule(a1, drift_coeff, horizon));
    return Scenario("diminishing", horizon, std::move(set),
                    [a, b1, cond](int t) {
                        return QuadraticLoss::planar(cond, (*a)[static_cast<std::size_t>(t - 1)], b1, 0.0);
                    },
                    "first center coordinate drifts by a shrinking sqrt(1/t) step");
}

double regime_step(const RegimeSpec& spec, int t) {
    switch (spec.regime) {
        case Regime::constant:
            return 0.0;
        case Regime::log_path:
            return 1.0 / static_cast<double>(t);
        case Regime::power_path:
            return 1.0 / std::pow(static_cast<double>(t), spec.alpha);
        case Regime::constant_drift:
            return spec.drift;
    }
    return 0.0;
}

Scenario preset(const RegimeSpec& spec, LossParams base, double cond, int horizon, FeasibleSet set,
                const PresetOptions& options) {
    require_planar(set, "preset");
    require_positive(cond, "preset: cond");
    if (horizon < 1) throw std::invalid_argument("preset: horizon must be at least 1");
    if (spec.regime == Regime::power_path && !(spec.alpha > 0.0 && spec.alpha < 1.0)) {
        throw std::invalid_argument("preset: power_path needs alpha in (0, 1)");
    }
    if (spec.regime == Regime::constant_drift && !(spec.drift > 0.0)) {
        throw std::invalid_argument("preset: constant_drift needs a positive drift");
    }
    require_same_dimension(options.direction, Vector{0.0, 0.0}, "preset direction");
    const double dir_norm = options.direction.norm();
    if (!(dir_norm > 0.0)) throw std::invalid_argument("preset: drift direction must be nonzero");
    const Vector unit = options.direction / dir_norm;

    Vector center{base.a, base.b};
    if (options.keep_interior && !contains(set, center, 0.0)) {
        throw std::invalid_argument("preset: base center " + to_string(center) + " is not inside " +
                                    to_string(set));
    }

    auto centers = std::make_shared<std::vector<Vector>>();
    centers->reserve(static_cast<std::size_t>(horizon));
    centers->push_back(center);
    double sign = 1.0;
    for (int t = 2; t <= horizon; ++t) {
        const double len = regime_step(spec, t);
        Vector next = center + unit * (sign * len);
        if (options.keep_interior && !contains(set, next, 0.0)) {
            sign = -sign;
            next = center + unit * (sign * len);
            if (!contains(set, next, 0.0)) {
                throw std::invalid_argument("preset: drift step does not fit inside the feasible set");
            }
        }
        center = next;
        centers->push_back(center);
    }

    const double c = base.c;
    return Scenario(to_string(spec.regime), horizon, std::move(set),
                    [centers, cond, c](int t) {
                        const Vector& p = (*centers)[static_cast<std::size_t>(t - 1)];
                        return QuadraticLoss::planar(cond, p[0], p[1], c);
                    },
                    std::string("center drift regime ") + to_string(spec.regime));
}

const char* to_string(Regime regime) {
    switch (regime) {
        case Regime::constant:
            return "constant";
        case Regime::log_path:
            return "log_path";
        case Regime::power_path:
            return "power_path";
        case Regime::constant_drift:
            return "constant_drift";
    }
    return "unknown";
}

Regime parse_regime(const std::string& name) {
    if (name == "constant") return Regime::constant;
    if (name == "log_path") return Regime::log_path;
    if (name == "power_path") return Regime::power_path;
    if (name == "constant_drift") return Regime::constant_drift;
    throw std::invalid_argument("unknown regime '" + name + "'");
}

}  // namespace ogdtrack
