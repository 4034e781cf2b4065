// Time-indexed strongly convex quadratic losses
//
//     f(x) = sum_i w_i (x_i - c_i)^2 + offset,   w_i > 0,
//
// their derivatives, curvature constants and exact constrained minimizers.
// The planar experiment family uses weights (cond, 1) where `cond` is the
// condition coefficient of the quadratic. It is unrelated to the tracker's
// contraction factor.

#pragma once

#include <span>
#include <vector>

#include "ogdtrack/core.hpp"

namespace ogdtrack {

class QuadraticLoss {
public:
    QuadraticLoss(Vector weights, Vector center, double offset);

    /// cond * (x1 - a)^2 + (x2 - b)^2 + c
    static QuadraticLoss planar(double cond, double a, double b, double c);

    const Vector& weights() const noexcept { return weights_; }
    const Vector& center() const noexcept { return center_; }
    double offset() const noexcept { return offset_; }
    std::size_t dimension() const noexcept { return center_.size(); }

    bool operator==(const QuadraticLoss&) const = default;

private:
    Vector weights_;
    Vector center_;
    double offset_;
};

/// Strong convexity modulus, gradient Lipschitz constant and a uniform
/// gradient-norm bound over a feasible set.
struct LossConstants {
    double mu;
    double lip;
    double grad_bound;
};

double eval(const QuadraticLoss& loss, const Vector& x);
Vector grad(const QuadraticLoss& loss, const Vector& x);

LossConstants constants(const QuadraticLoss& loss, const FeasibleSet& set);

/// Family-wide constants: smallest mu, largest lip and largest gradient
/// bound across `losses`.
LossConstants family_constants(std::span<const QuadraticLoss> losses, const FeasibleSet& set);

/// sup over x in `set` of ||grad f(x)||.
double max_gradient_norm(const QuadraticLoss& loss, const FeasibleSet& set);

struct ConstrainedMinimum {
    Vector point;
    /// Multiplier of the ball constraint ||x - b||^2 <= r^2 (scaled so that
    /// grad f(x) + 2 * multiplier * (x - b) = 0). Zero for interior
    /// solutions and for boxes.
    double multiplier;
    int iterations;
};

/// Unique minimizer of `loss` over `set`, with the certifying multiplier.
ConstrainedMinimum minimize(const QuadraticLoss& loss, const FeasibleSet& set);

Vector minimizer(const QuadraticLoss& loss, const FeasibleSet& set);

/// Sum of diagonal quadratics, itself a diagonal quadratic.
QuadraticLoss aggregate(std::span<const QuadraticLoss> losses);

/// q(x) = sum_i quad_i x_i^2 + lin_i x_i + constant with arbitrary-sign
/// curvature. Used to bound gradient norms and loss differences.
struct DiagonalQuadratic {
    std::vector<double> quad;
    std::vector<double> lin;
    double constant = 0.0;

    double operator()(const Vector& x) const;
};

/// Global min / max of q over the set. On a ball this solves the
/// trust-region subproblem by bisection on the scalar multiplier (hard case
/// included); on a box it is exact per coordinate.
double minimum_over(const DiagonalQuadratic& q, const FeasibleSet& set);
double maximum_over(const DiagonalQuadratic& q, const FeasibleSet& set);

}  // namespace ogdtrack
