#include "ogdtrack/regret.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ogdtrack/summation.hpp"

namespace ogdtrack {

namespace {

void require_round(const Trace& trace, int upto, const char* what) {
    if (trace.records.empty()) throw std::invalid_argument(std::string(what) + ": empty trace");
    if (upto < 1 || upto > trace.horizon()) {
        std::ostringstream msg;
        msg << what << ": round " << upto << " outside [1, " << trace.horizon() << "]";
        throw std::out_of_range(msg.str());
    }
}

bool within(double lhs, double rhs, const CertificateTolerance& tol) {
    return lhs <= rhs + tol.relative * std::abs(rhs) + tol.absolute;
}

}  // namespace

void Trace::validate() const {
    if (records.empty()) throw std::invalid_argument("Trace: no records");
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].t != static_cast<int>(i) + 1) {
            throw std::invalid_argument("Trace: rounds must run 1..T without gaps");
        }
    }
}

double dynamic_regret(const Trace& trace, int upto) {
    require_round(trace, upto, "dynamic_regret");
    CompensatedSum sum;
    for (int t = 0; t < upto; ++t) {
        const StepRecord& r = trace.records[static_cast<std::size_t>(t)];
        sum.add(r.f_x - r.f_star);
    }
    return sum.value();
}

double dynamic_regret(const Trace& trace) {
    return dynamic_regret(trace, std::max(1, trace.horizon()));
}

double static_regret(const Trace& trace, std::span<const QuadraticLoss> losses) {
    if (trace.records.empty()) throw std::invalid_argument("static_regret: empty trace");
    if (losses.size() != trace.records.size()) {
        throw std::invalid_argument("static_regret: one loss per round is required");
    }
    const Vector comparator = minimizer(aggregate(losses), trace.set);
    CompensatedSum sum;
    for (std::size_t t = 0; t < losses.size(); ++t) {
        sum.add(trace.records[t].f_x);
        sum.add(-eval(losses[t], comparator));
    }
    return sum.value();
}

double path_length(const Trace& trace, int upto) {
    require_round(trace, upto, "path_length");
    CompensatedSum sum;
    for (int t = 1; t < upto; ++t) {
        const auto i = static_cast<std::size_t>(t);
        sum.add(distance(trace.records[i].x_star, trace.records[i - 1].x_star));
    }
    return sum.value();
}

double path_length(const Trace& trace) { return path_length(trace, std::max(1, trace.horizon())); }

double predicted_path_length(const Trace& trace, const Dynamics& dynamics) {
    if (!dynamics) return trace.records.empty() ? 0.0 : path_length(trace);
    CompensatedSum sum;
    for (std::size_t i = 1; i < trace.records.size(); ++i) {
        const StepRecord& r = trace.records[i];
        sum.add(distance(r.x_star, dynamics(r.t, trace.records[i - 1].x_star)));
    }
    return sum.value();
}

double functional_variation(std::span<const QuadraticLoss> losses, const FeasibleSet& set) {
    CompensatedSum sum;
    for (std::size_t t = 1; t < losses.size(); ++t) {
        const QuadraticLoss& cur = losses[t];
        const QuadraticLoss& prev = losses[t - 1];
        require_same_dimension(cur.center(), prev.center(), "functional_variation");
        if (cur == prev) continue;

        DiagonalQuadratic diff;
        diff.constant = cur.offset() - prev.offset();
        bool affine = true;
        for (std::size_t i = 0; i < cur.dimension(); ++i) {
            const double wc = cur.weights()[i], cc = cur.center()[i];
            const double wp = prev.weights()[i], cp = prev.center()[i];
            diff.quad.push_back(wc - wp);
            diff.lin.push_back(-2.0 * (wc * cc - wp * cp));
            diff.constant += wc * cc * cc - wp * cp * cp;
            affine = affine && wc == wp;
        }

        if (affine && set.as_ball()) {
            // sup over the ball of |a'x + d| = |a'b + d| + r ||a||
            const Ball& ball = *set.as_ball();
            double at_center = diff.constant;
            double slope2 = 0.0;
            for (std::size_t i = 0; i < diff.lin.size(); ++i) {
                at_center += diff.lin[i] * ball.center[i];
                slope2 += diff.lin[i] * diff.lin[i];
            }
            sum.add(std::abs(at_center) + ball.radius * std::sqrt(slope2));
        } else {
            sum.add(std::max(maximum_over(diff, set), -minimum_over(diff, set)));
        }
    }
    return sum.value();
}

void predict_with_previous_gradient(Trace& trace, const std::optional<Vector>& first) {
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
        StepRecord& r = trace.records[i];
        if (i == 0) {
            r.predicted_grad = first ? *first : Vector::zeros(r.grad.size());
        } else {
            r.predicted_grad = trace.records[i - 1].grad;
        }
    }
}

double gradient_variation(const Trace& trace) {
    CompensatedSum sum;
    for (const StepRecord& r : trace.records) {
        if (!r.predicted_grad) {
            throw std::invalid_argument("gradient_variation: round " + std::to_string(r.t) +
                                        " has no gradient prediction");
        }
        sum.add((r.grad - *r.predicted_grad).squared_norm());
    }
    return sum.value();
}

BoundCertificate certify(const Trace& trace, CertificateTolerance tol) {
    trace.validate();
    BoundCertificate cert{};
    cert.rho = contraction_factor(trace.config, trace.constants.mu);
    cert.valid = trace.config.gamma >= trace.constants.lip;

    const auto& recs = trace.records;
    const std::size_t T = recs.size();
    std::vector<double> dist(T);
    CompensatedSum lhs;
    for (std::size_t i = 0; i < T; ++i) {
        dist[i] = distance(recs[i].x, recs[i].x_star);
        lhs.add(dist[i]);
    }

    // ||x_{t+1} - x_t*|| <= rho ||x_t - x_t*||
    auto check = [&](const Vector& next, std::size_t i) {
        const double reach = distance(next, recs[i].x_star);
        ++cert.contraction_checks;
        if (reach > cert.rho * dist[i] + tol.relative * (1.0 + dist[i])) ++cert.contraction_violations;
    };
    for (std::size_t i = 0; i + 1 < T; ++i) check(recs[i + 1].x, i);
    if (trace.final_action) check(*trace.final_action, T - 1);

    cert.K2 = 1.0 / (1.0 - cert.rho);
    cert.K1 = (dist.front() - cert.rho * dist.back()) / (1.0 - cert.rho);
    cert.path_length = path_length(trace);
    cert.tracking_sum = lhs.value();
    cert.tracking_bound = cert.K1 * cert.path_length + cert.K2;
    cert.telescoped_bound = cert.K1 + cert.K2 * cert.path_length;
    cert.dyn_regret = dynamic_regret(trace);
    cert.regret_bound = trace.constants.grad_bound * cert.tracking_bound;
    cert.tracking_holds = within(cert.tracking_sum, cert.tracking_bound, tol);
    cert.regret_holds = within(cert.dyn_regret, cert.regret_bound, tol);
    return cert;
}

}  // namespace ogdtrack
