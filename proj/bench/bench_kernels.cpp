// Serial vs OpenMP timings for the batch kernels and the sweep.
// Usage: bench_kernels [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ogdtrack/harness.hpp"
#include "ogdtrack/kernels.hpp"

using namespace ogdtrack;

namespace {

template <class F>
double best_of(int repeats, F&& f) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void line(const char* name, double serial, double parallel) {
    std::printf("%-22s serial %9.4f s   openmp %9.4f s   speedup %5.2fx\n", name, serial, parallel,
                serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> u(-80.0, 80.0);

    const FeasibleSet disk = FeasibleSet::ball(Vector{0.0, 0.0}, 50.0);
    std::vector<Vector> points;
    for (int i = 0; i < 400000; ++i) points.push_back(Vector{u(g), u(g)});
    line("project_batch", best_of(repeats, [&] { kernels::project_batch_serial(disk, points); }),
         best_of(repeats, [&] { kernels::project_batch(disk, points); }));

    std::vector<kernels::StepCase> cases;
    for (int i = 0; i < 200000; ++i) {
        cases.push_back({project(disk, Vector{u(g), u(g)}), Vector{100 * u(g), 100 * u(g)}, disk, OGDConfig{200.0, 1.0}});
    }
    line("step_discrepancy", best_of(repeats, [&] { kernels::max_step_discrepancy_serial(cases); }),
         best_of(repeats, [&] { kernels::max_step_discrepancy(cases); }));

    std::vector<QuadraticLoss> losses;
    for (int i = 0; i < 100000; ++i) losses.push_back(QuadraticLoss::planar(100.0, u(g), u(g), 0.0));
    line("minimizer_batch", best_of(repeats, [&] { kernels::minimizer_batch_serial(losses, disk); }),
         best_of(repeats, [&] { kernels::minimizer_batch(losses, disk); }));

    std::vector<RunConfig> configs;
    for (int tau = 1; tau <= 32; ++tau) {
        RunConfig c;
        c.scenario.tau = tau;
        c.horizon = 1000;
        c.emit.clear();
        configs.push_back(c);
    }
    line("sweep (32 runs)", best_of(repeats, [&] { sweep_serial(configs); }),
         best_of(repeats, [&] { sweep(configs); }));
}
