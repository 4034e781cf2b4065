// Batch kernels over many independent inputs. Each has an OpenMP version
// and a serial reference with identical results; the references exist for
// testing and benchmarking.

#pragma once

#include <span>
#include <vector>

#include "ogdtrack/core.hpp"
#include "ogdtrack/losses.hpp"
#include "ogdtrack/ogd.hpp"

namespace ogdtrack::kernels {

std::vector<Vector> project_batch(const FeasibleSet& set, std::span<const Vector> points);
std::vector<Vector> project_batch_serial(const FeasibleSet& set, std::span<const Vector> points);

/// One input of the projected-step / proximal-step comparison.
struct StepCase {
    Vector x;
    Vector g;
    FeasibleSet set;
    OGDConfig cfg;
};

/// max over cases of ||aux_step - prox_step|| / (1 + ||x||).
double max_step_discrepancy(std::span<const StepCase> cases);
double max_step_discrepancy_serial(std::span<const StepCase> cases);

/// Minimizers of many losses over one set.
std::vector<Vector> minimizer_batch(std::span<const QuadraticLoss> losses, const FeasibleSet& set);
std::vector<Vector> minimizer_batch_serial(std::span<const QuadraticLoss> losses, const FeasibleSet& set);

}  // namespace ogdtrack::kernels
