// Decision-space primitives: vectors, convex feasible sets and exact
// Euclidean projection onto them.
//
// Every type here is an immutable value. All free functions are pure.

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ogdtrack {

/// Raised when two operands live in decision spaces of different dimension.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative solver cannot certify its answer.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A finite point (or gradient) of fixed dimension >= 1.
class Vector {
public:
    Vector(std::initializer_list<double> coords);
    explicit Vector(std::vector<double> coords);

    static Vector zeros(std::size_t dim);

    std::size_t size() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }

    double norm() const;
    double squared_norm() const;
    double dot(const Vector& other) const;

    Vector operator+(const Vector& rhs) const;
    Vector operator-(const Vector& rhs) const;
    Vector operator*(double s) const;
    Vector operator/(double s) const;

    bool operator==(const Vector& rhs) const = default;

private:
    struct Unchecked {};
    Vector(std::vector<double> coords, Unchecked) : coords_(std::move(coords)) {}

    std::vector<double> coords_;
};

inline Vector operator*(double s, const Vector& v) { return v * s; }

double distance(const Vector& a, const Vector& b);

/// Throws DimensionError unless `a` and `b` have the same dimension.
void require_same_dimension(const Vector& a, const Vector& b, const char* what);

std::string to_string(const Vector& v);

/// Closed Euclidean ball {x : ||x - center|| <= radius}.
struct Ball {
    Vector center;
    double radius;
};

/// Axis-aligned box {x : lower <= x <= upper}.
struct Box {
    Vector lower;
    Vector upper;
};

/// Nonempty closed convex region of the decision space.
class FeasibleSet {
public:
    static FeasibleSet ball(Vector center, double radius);
    static FeasibleSet box(Vector lower, Vector upper);

    std::size_t dimension() const;

    const Ball* as_ball() const noexcept { return std::get_if<Ball>(&shape_); }
    const Box* as_box() const noexcept { return std::get_if<Box>(&shape_); }

    /// Linear extent used to scale tolerances: the radius for a ball,
    /// the largest side length for a box.
    double scale() const;

    /// 1e-9 * max(1, scale()).
    double default_tolerance() const;

    template <typename Visitor>
    decltype(auto) visit(Visitor&& v) const {
        return std::visit(std::forward<Visitor>(v), shape_);
    }

private:
    explicit FeasibleSet(std::variant<Ball, Box> shape) : shape_(std::move(shape)) {}

    std::variant<Ball, Box> shape_;
};

std::string to_string(const FeasibleSet& set);

/// True iff x violates no constraint of `set` by more than `tol`.
bool contains(const FeasibleSet& set, const Vector& x, double tol);
bool contains(const FeasibleSet& set, const Vector& x);

/// argmin over x in `set` of ||x - y||, by closed form.
Vector project(const FeasibleSet& set, const Vector& y);

}  // namespace ogdtrack
