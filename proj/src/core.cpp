#include "ogdtrack/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ogdtrack {

namespace {

void require_valid_coords(const std::vector<double>& coords) {
    if (coords.empty()) {
        throw std::invalid_argument("Vector: dimension must be at least 1");
    }
    for (double c : coords) {
        if (!std::isfinite(c)) {
            throw std::invalid_argument("Vector: coordinates must be finite");
        }
    }
}

}  // namespace

Vector::Vector(std::initializer_list<double> coords) : coords_(coords) {
    require_valid_coords(coords_);
}

Vector::Vector(std::vector<double> coords) : coords_(std::move(coords)) {
    require_valid_coords(coords_);
}

Vector Vector::zeros(std::size_t dim) {
    if (dim == 0) {
        throw std::invalid_argument("Vector: dimension must be at least 1");
    }
    return Vector(std::vector<double>(dim, 0.0), Unchecked{});
}

double Vector::squared_norm() const {
    double s = 0.0;
    for (double c : coords_) s += c * c;
    return s;
}

double Vector::norm() const {
    // hypot-style scaling is unnecessary at the magnitudes we handle (<= 1e150).
    return std::sqrt(squared_norm());
}

double Vector::dot(const Vector& other) const {
    require_same_dimension(*this, other, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < coords_.size(); ++i) s += coords_[i] * other.coords_[i];
    return s;
}

Vector Vector::operator+(const Vector& rhs) const {
    require_same_dimension(*this, rhs, "operator+");
    std::vector<double> out(coords_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coords_[i] + rhs.coords_[i];
    return Vector(std::move(out), Unchecked{});
}

Vector Vector::operator-(const Vector& rhs) const {
    require_same_dimension(*this, rhs, "operator-");
    std::vector<double> out(coords_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = coords_[i] - rhs.coords_[i];
    return Vector(std::move(out), Unchecked{});
}

Vector Vector::operator*(double s) const {
    std::vector<double> out(coords_);
    for (double& c : out) c *= s;
    return Vector(std::move(out), Unchecked{});
}

Vector Vector::operator/(double s) const {
    std::vector<double> out(coords_);
    for (double& c : out) c /= s;
    return Vector(std::move(out), Unchecked{});
}

double distance(const Vector& a, const Vector& b) { return (a - b).norm(); }

void require_same_dimension(const Vector& a, const Vector& b, const char* what) {
    if (a.size() != b.size()) {
        std::ostringstream msg;
        msg << what << ": dimension mismatch (" << a.size() << " vs " << b.size() << ")";
        throw DimensionError(msg.str());
    }
}

std::string to_string(const Vector& v) {
    std::ostringstream out;
    out.precision(17);
    out << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << "; ";
        out << v[i];
    }
    out << ']';
    return out.str();
}

FeasibleSet FeasibleSet::ball(Vector center, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw std::invalid_argument("FeasibleSet::ball: radius must be positive and finite");
    }
    return FeasibleSet(Ball{std::move(center), radius});
}

FeasibleSet FeasibleSet::box(Vector lower, Vector upper) {
    require_same_dimension(lower, upper, "FeasibleSet::box");
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (lower[i] > upper[i]) {
            throw std::invalid_argument("FeasibleSet::box: lower must not exceed upper");
        }
    }
    return FeasibleSet(Box{std::move(lower), std::move(upper)});
}

std::size_t FeasibleSet::dimension() const {
    return visit([](const auto& s) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, Ball>) {
            return s.center.size();
        } else {
            return s.lower.size();
        }
    });
}

double FeasibleSet::scale() const {
    if (const Ball* b = as_ball()) return b->radius;
    const Box& box = *as_box();
    double extent = 0.0;
    for (std::size_t i = 0; i < box.lower.size(); ++i) {
        extent = std::max(extent, box.upper[i] - box.lower[i]);
    }
    return extent;
}

double FeasibleSet::default_tolerance() const { return 1e-9 * std::max(1.0, scale()); }

std::string to_string(const FeasibleSet& set) {
    if (const Ball* b = set.as_ball()) {
        std::ostringstream out;
        out.precision(17);
        out << "Ball(center=" << to_string(b->center) << ", radius=" << b->radius << ')';
        return out.str();
    }
    const Box& box = *set.as_box();
    return "Box(lower=" + to_string(box.lower) + ", upper=" + to_string(box.upper) + ')';
}

bool contains(const FeasibleSet& set, const Vector& x, double tol) {
    if (tol < 0.0) throw std::invalid_argument("contains: tolerance must be nonnegative");
    if (const Ball* b = set.as_ball()) {
        require_same_dimension(b->center, x, "contains");
        return distance(x, b->center) <= b->radius + tol;
    }
    const Box& box = *set.as_box();
    require_same_dimension(box.lower, x, "contains");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < box.lower[i] - tol || x[i] > box.upper[i] + tol) return false;
    }
    return true;
}

bool contains(const FeasibleSet& set, const Vector& x) {
    return contains(set, x, set.default_tolerance());
}

Vector project(const FeasibleSet& set, const Vector& y) {
    if (const Ball* b = set.as_ball()) {
        require_same_dimension(b->center, y, "project");
        const Vector offset = y - b->center;
        const double dist = offset.norm();
        if (dist <= b->radius) return y;
        return b->center + offset * (b->radius / dist);
    }
    const Box& box = *set.as_box();
    require_same_dimension(box.lower, y, "project");
    std::vector<double> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        out[i] = std::clamp(y[i], box.lower[i], box.upper[i]);
    }
    return Vector(std::move(out));
}

}  // namespace ogdtrack
