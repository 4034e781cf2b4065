#include "ogdtrack/kernels.hpp"

#include <algorithm>
#include <exception>
#include <optional>

namespace ogdtrack::kernels {

namespace {

// Runs body(i) for i in [0, n) across threads. The first exception thrown
// by any iteration is rethrown after the loop.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
    std::exception_ptr failure;
    const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(ogdtrack_kernel_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

double step_discrepancy(const StepCase& c) {
    const Vector a = aux_step(c.x, c.g, c.set, c.cfg);
    const Vector b = prox_step(c.x, c.g, c.set, c.cfg);
    return distance(a, b) / (1.0 + c.x.norm());
}

}  // namespace

std::vector<Vector> project_batch(const FeasibleSet& set, std::span<const Vector> points) {
    std::vector<std::optional<Vector>> slots(points.size());
    parallel_for(points.size(), [&](std::size_t i) { slots[i] = project(set, points[i]); });
    std::vector<Vector> out;
    out.reserve(points.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

std::vector<Vector> project_batch_serial(const FeasibleSet& set, std::span<const Vector> points) {
    std::vector<Vector> out;
    out.reserve(points.size());
    for (const Vector& p : points) out.push_back(project(set, p));
    return out;
}

double max_step_discrepancy(std::span<const StepCase> cases) {
    std::vector<double> gaps(cases.size(), 0.0);
    parallel_for(cases.size(), [&](std::size_t i) { gaps[i] = step_discrepancy(cases[i]); });
    return gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());
}

double max_step_discrepancy_serial(std::span<const StepCase> cases) {
    double worst = 0.0;
    for (const StepCase& c : cases) worst = std::max(worst, step_discrepancy(c));
    return worst;
}

std::vector<Vector> minimizer_batch(std::span<const QuadraticLoss> losses, const FeasibleSet& set) {
    std::vector<std::optional<Vector>> slots(losses.size());
    parallel_for(losses.size(), [&](std::size_t i) { slots[i] = minimizer(losses[i], set); });
    std::vector<Vector> out;
    out.reserve(losses.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

std::vector<Vector> minimizer_batch_serial(std::span<const QuadraticLoss> losses, const FeasibleSet& set) {
    std::vector<Vector> out;
    out.reserve(losses.size());
    for (const QuadraticLoss& loss : losses) out.push_back(minimizer(loss, set));
    return out;
}

}  // namespace ogdtrack::kernels
