// Micro-benchmark: serial per-cell reference rasterizer vs the OpenMP
// scanline kernel, and serial vs parallel subarea optimization.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"

#include "covlab/coverage.hpp"
#include "covlab/deploy.hpp"
#include "covlab/ga.hpp"

using namespace covlab;

namespace {

template <typename F>
double best_ms(int repeat, F&& f) {
    double best = 1e300;
    for (int i = 0; i < repeat; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coverage kernel benchmarks"};
    int repeat = 3;
    double resolution = 0.25;
    app.add_option("--repeat", repeat, "repetitions, best time wins")->capture_default_str();
    app.add_option("--resolution", resolution, "grid cell size")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::printf("openmp max threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without openmp\n");
#endif

    const Field field = Field::centered(113.0, 113.0);
    for (int n : {100, 400}) {
        const Deployment dep = deploy_uniform(field, n, 5.0, Seed{7});
        CoverageGrid a = make_coverage_grid(field.rect(), resolution);
        CoverageGrid b = make_coverage_grid(field.rect(), resolution);
        const double ref_ms = best_ms(repeat, [&] {
            a.clear();
            reference::fill_union(a, dep.sensors);
        });
        const double scan_ms = best_ms(repeat, [&] {
            b.clear();
            fill_union(b, dep.sensors);
        });
        const bool match = a.covered == b.covered;
        std::printf("fill_union n=%-4d cells=%-8zu reference %8.2f ms  scanline %8.2f ms  "
                    "speedup %5.1fx  results %s\n",
                    n, a.cell_count(), ref_ms, scan_ms, ref_ms / scan_ms,
                    match ? "match" : "DIFFER");
    }

    GaParams params;
    params.max_generations = 10;
    const int n = 200;
    OptimizeResult serial, parallel;
    const double serial_ms =
        best_ms(1, [&] { serial = optimize_field(field, n, params, Seed{7}, 1); });
    const double parallel_ms =
        best_ms(1, [&] { parallel = optimize_field(field, n, params, Seed{7}, 0); });
    std::printf("optimize_field n=%d  serial %8.1f ms  parallel %8.1f ms  speedup %4.1fx  "
                "coverage %.6f vs %.6f (%s)\n",
                n, serial_ms, parallel_ms, serial_ms / parallel_ms,
                serial.report.union_fraction, parallel.report.union_fraction,
                serial.report.union_fraction == parallel.report.union_fraction ? "identical"
                                                                                : "DIFFER");
    return 0;
}
