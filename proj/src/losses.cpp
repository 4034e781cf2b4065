#include "ogdtrack/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ogdtrack {

namespace {

constexpr int kMaxIterations = 200;
constexpr int kMaxDoublings = 2000;

// ||x(lambda) - b|| for x_i(lambda) = b_i + w_i d_i / (w_i + lambda).
double shifted_norm(const Vector& w, const std::vector<double>& d, double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double v = w[i] * d[i] / (w[i] + lambda);
        s += v * v;
    }
    return std::sqrt(s);
}

// d/dlambda of shifted_norm.
double shifted_norm_slope(const Vector& w, const std::vector<double>& d, double lambda, double norm) {
    double s = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double denom = w[i] + lambda;
        s += w[i] * w[i] * d[i] * d[i] / (denom * denom * denom);
    }
    return -s / norm;
}

// min over ||z|| <= r of sum_i alpha_i z_i^2 + beta_i z_i.
double trust_region_minimum(const std::vector<double>& alpha, const std::vector<double>& beta,
                            double r) {
    const std::size_t n = alpha.size();
    auto objective = [&](const std::vector<double>& z) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += alpha[i] * z[i] * z[i] + beta[i] * z[i];
        return s;
    };
    auto point_at = [&](double nu) {
        std::vector<double> z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = -beta[i] / (2.0 * (alpha[i] + nu));
        return z;
    };
    auto norm_of = [](const std::vector<double>& z) {
        double s = 0.0;
        for (double v : z) s += v * v;
        return std::sqrt(s);
    };

    const double alpha_min = *std::min_element(alpha.begin(), alpha.end());
    if (alpha_min > 0.0) {
        std::vector<double> z = point_at(0.0);
        if (norm_of(z) <= r) return objective(z);
    }

    const double nu_lo = std::max(0.0, -alpha_min);

    // Hard case: every coordinate that goes singular at nu_lo has no linear
    // term, and the remaining coordinates leave room inside the ball.
    bool singular_has_linear = false;
    std::size_t singular_index = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i] + nu_lo == 0.0) {
            if (beta[i] != 0.0) singular_has_linear = true;
            if (singular_index == n) singular_index = i;
        }
    }
    if (!singular_has_linear && singular_index < n) {
        std::vector<double> z(n, 0.0);
        double rest = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (alpha[i] + nu_lo != 0.0) {
                z[i] = -beta[i] / (2.0 * (alpha[i] + nu_lo));
                rest += z[i] * z[i];
            }
        }
        if (rest <= r * r) {
            z[singular_index] = std::sqrt(r * r - rest);
            return objective(z);
        }
    }

    double lo = nu_lo;
    double hi = std::max(1.0, 2.0 * nu_lo);
    int doublings = 0;
    while (norm_of(point_at(hi)) >= r) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > kMaxDoublings) {
            throw SolverError("trust-region multiplier: failed to bracket the root");
        }
    }
    for (int it = 0; it < kMaxIterations && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi;
         ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (norm_of(point_at(mid)) > r) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    std::vector<double> z = point_at(hi);
    // Pin to the sphere so the reported value belongs to a feasible point.
    const double nz = norm_of(z);
    if (nz > 0.0) {
        for (double& v : z) v *= r / nz;
    }
    return objective(z);
}

double minimum_over_ball(const DiagonalQuadratic& q, const Ball& ball) {
    // Shift to z = x - b.
    const std::size_t n = q.quad.size();
    std::vector<double> beta(n);
    double constant = q.constant;
    for (std::size_t i = 0; i < n; ++i) {
        const double b = ball.center[i];
        beta[i] = 2.0 * q.quad[i] * b + q.lin[i];
        constant += q.quad[i] * b * b + q.lin[i] * b;
    }
    return trust_region_minimum(q.quad, beta, ball.radius) + constant;
}

double minimum_over_box(const DiagonalQuadratic& q, const Box& box) {
    double total = q.constant;
    for (std::size_t i = 0; i < q.quad.size(); ++i) {
        auto g = [&](double x) { return q.quad[i] * x * x + q.lin[i] * x; };
        double best = std::min(g(box.lower[i]), g(box.upper[i]));
        if (q.quad[i] > 0.0) {
            const double vertex = -q.lin[i] / (2.0 * q.quad[i]);
            if (vertex > box.lower[i] && vertex < box.upper[i]) best = std::min(best, g(vertex));
        }
        total += best;
    }
    return total;
}

void require_matching(const DiagonalQuadratic& q, const FeasibleSet& set) {
    if (q.quad.size() != q.lin.size() || q.quad.size() != set.dimension()) {
        throw DimensionError("DiagonalQuadratic: dimension mismatch with feasible set");
    }
}

}  // namespace

QuadraticLoss::QuadraticLoss(Vector weights, Vector center, double offset)
    : weights_(std::move(weights)), center_(std::move(center)), offset_(offset) {
    require_same_dimension(weights_, center_, "QuadraticLoss");
    for (double w : weights_.coords()) {
        if (!(w > 0.0)) throw std::invalid_argument("QuadraticLoss: weights must be positive");
    }
    if (!std::isfinite(offset_)) throw std::invalid_argument("QuadraticLoss: offset must be finite");
}

QuadraticLoss QuadraticLoss::planar(double cond, double a, double b, double c) {
    return QuadraticLoss(Vector{cond, 1.0}, Vector{a, b}, c);
}

double eval(const QuadraticLoss& loss, const Vector& x) {
    require_same_dimension(loss.center(), x, "eval");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - loss.center()[i];
        s += loss.weights()[i] * d * d;
    }
    return s + loss.offset();
}

Vector grad(const QuadraticLoss& loss, const Vector& x) {
    require_same_dimension(loss.center(), x, "grad");
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        g[i] = 2.0 * loss.weights()[i] * (x[i] - loss.center()[i]);
    }
    return Vector(std::move(g));
}

double max_gradient_norm(const QuadraticLoss& loss, const FeasibleSet& set) {
    if (loss.dimension() != set.dimension()) {
        throw DimensionError("max_gradient_norm: dimension mismatch");
    }
    // ||grad f(x)||^2 = sum_i 4 w_i^2 (x_i - c_i)^2
    DiagonalQuadratic sq;
    for (std::size_t i = 0; i < loss.dimension(); ++i) {
        const double w2 = 4.0 * loss.weights()[i] * loss.weights()[i];
        const double c = loss.center()[i];
        sq.quad.push_back(w2);
        sq.lin.push_back(-2.0 * w2 * c);
        sq.constant += w2 * c * c;
    }
    return std::sqrt(std::max(0.0, maximum_over(sq, set)));
}

LossConstants constants(const QuadraticLoss& loss, const FeasibleSet& set) {
    const auto w = loss.weights().coords();
    const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    return LossConstants{2.0 * *lo, 2.0 * *hi, max_gradient_norm(loss, set)};
}

LossConstants family_constants(std::span<const QuadraticLoss> losses, const FeasibleSet& set) {
    if (losses.empty()) throw std::invalid_argument("family_constants: no losses");
    LossConstants out = constants(losses.front(), set);
    for (const QuadraticLoss& loss : losses.subspan(1)) {
        const LossConstants c = constants(loss, set);
        out.mu = std::min(out.mu, c.mu);
        out.lip = std::max(out.lip, c.lip);
        out.grad_bound = std::max(out.grad_bound, c.grad_bound);
    }
    return out;
}

ConstrainedMinimum minimize(const QuadraticLoss& loss, const FeasibleSet& set) {
    if (loss.dimension() != set.dimension()) throw DimensionError("minimize: dimension mismatch");

    if (set.as_box()) {
        // Separable objective: clamping the center is exact.
        return ConstrainedMinimum{project(set, loss.center()), 0.0, 0};
    }

    const Ball& ball = *set.as_ball();
    const Vector& w = loss.weights();
    std::vector<double> d(loss.dimension());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = loss.center()[i] - ball.center[i];

    const double r = ball.radius;
    if (shifted_norm(w, d, 0.0) <= r) return ConstrainedMinimum{loss.center(), 0.0, 0};

    // ||x(lambda) - b|| decreases monotonically in lambda, so doubling from
    // max w brackets the root.
    double lo = 0.0;
    double hi = *std::max_element(w.coords().begin(), w.coords().end());
    int doublings = 0;
    while (shifted_norm(w, d, hi) >= r) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > kMaxDoublings) {
            std::ostringstream msg;
            msg << "minimize: could not bracket the ball multiplier for center "
                << to_string(loss.center()) << " in " << to_string(set);
            throw SolverError(msg.str());
        }
    }

    double lambda = 0.5 * (lo + hi);
    const double tol = 1e-12 * r;
    int it = 0;
    for (; it < kMaxIterations; ++it) {
        const double norm = shifted_norm(w, d, lambda);
        const double residual = norm - r;
        if (std::abs(residual) <= tol) break;
        if (residual > 0.0) {
            lo = lambda;
        } else {
            hi = lambda;
        }
        const double newton = lambda - residual / shifted_norm_slope(w, d, lambda, norm);
        lambda = (newton > lo && newton < hi) ? newton : 0.5 * (lo + hi);
        if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * hi) break;
    }
    if (it == kMaxIterations) {
        std::ostringstream msg;
        msg << "minimize: multiplier iteration did not converge for center " << to_string(loss.center())
            << " in " << to_string(set);
        throw SolverError(msg.str());
    }

    std::vector<double> x(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        x[i] = (w[i] * loss.center()[i] + lambda * ball.center[i]) / (w[i] + lambda);
    }
    return ConstrainedMinimum{Vector(std::move(x)), lambda, it + 1};
}

Vector minimizer(const QuadraticLoss& loss, const FeasibleSet& set) { return minimize(loss, set).point; }

QuadraticLoss aggregate(std::span<const QuadraticLoss> losses) {
    if (losses.empty()) throw std::invalid_argument("aggregate: no losses");
    const std::size_t n = losses.front().dimension();
    std::vector<double> weight(n, 0.0), moment(n, 0.0), second(n, 0.0);
    double offset = 0.0;
    for (const QuadraticLoss& loss : losses) {
        require_same_dimension(losses.front().center(), loss.center(), "aggregate");
        for (std::size_t i = 0; i < n; ++i) {
            const double w = loss.weights()[i];
            const double c = loss.center()[i];
            weight[i] += w;
            moment[i] += w * c;
            second[i] += w * c * c;
        }
        offset += loss.offset();
    }
    std::vector<double> center(n);
    for (std::size_t i = 0; i < n; ++i) {
        center[i] = moment[i] / weight[i];
        offset += second[i] - weight[i] * center[i] * center[i];
    }
    return QuadraticLoss(Vector(std::move(weight)), Vector(std::move(center)), offset);
}

double DiagonalQuadratic::operator()(const Vector& x) const {
    if (x.size() != quad.size() || x.size() != lin.size()) {
        throw DimensionError("DiagonalQuadratic: dimension mismatch");
    }
    double s = constant;
    for (std::size_t i = 0; i < x.size(); ++i) s += quad[i] * x[i] * x[i] + lin[i] * x[i];
    return s;
}

double minimum_over(const DiagonalQuadratic& q, const FeasibleSet& set) {
    require_matching(q, set);
    if (const Ball* ball = set.as_ball()) return minimum_over_ball(q, *ball);
    return minimum_over_box(q, *set.as_box());
}

double maximum_over(const DiagonalQuadratic& q, const FeasibleSet& set) {
    DiagonalQuadratic negated{q.quad, q.lin, -q.constant};
    for (double& v : negated.quad) v = -v;
    for (double& v : negated.lin) v = -v;
    return -minimum_over(negated, set);
}

}  // namespace ogdtrack
