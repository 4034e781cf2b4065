#include "ogdtrack/summation.hpp"

#include <cmath>

namespace ogdtrack {

void CompensatedSum::add(double value) noexcept {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
        compensation_ += (sum_ - t) + value;
    } else {
        compensation_ += (value - t) + sum_;
    }
    sum_ = t;
}

double compensated_sum(std::span<const double> values) noexcept {
    CompensatedSum acc;
    for (double v : values) acc.add(v);
    return acc.value();
}

}  // namespace ogdtrack
