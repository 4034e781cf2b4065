#pragma once

#include <span>

namespace ogdtrack {

/// Neumaier-compensated running sum. Regret sums mix terms near 1e6 with
/// terms near 1e-6, so plain accumulation drops digits.
class CompensatedSum {
public:
    void add(double value) noexcept;
    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

double compensated_sum(std::span<const double> values) noexcept;

}  // namespace ogdtrack
