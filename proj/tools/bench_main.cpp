// Throughput benchmark: the seeded entanglement-analysis sweep, serial
// reference vs the OpenMP path.  Checks that both produce identical numbers
// before timing.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "gpm/entanglement.hpp"
#include "gpm/random.hpp"
#include "gpm/sweep.hpp"

namespace {

double analysis_case(std::size_t index) {
    gpm::Rng rng(0x9e3779b97f4a7c15ull + index);
    const auto state = gpm::random_physical_state(5, rng, 1.0, 2.0);
    const auto j = gpm::complex_structure(state);
    const auto a = gpm::random_subspace(5, 1, rng);
    double acc = gpm::log_negativity(j, a);
    const auto ep = gpm::entanglement_partner(a, j);
    if (!ep.empty) acc += static_cast<double>(ep.partner.mode_count()) + ep.diagnostics;
    return acc;
}

double time_sweep(std::size_t count, bool parallel, double& checksum) {
    const auto start = std::chrono::steady_clock::now();
    const auto results = gpm::run_sweep(count, analysis_case, parallel);
    const auto stop = std::chrono::steady_clock::now();
    checksum = 0.0;
    for (double r : results) checksum += r;
    return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t count = 400;
    if (argc > 1) count = static_cast<std::size_t>(std::stoul(argv[1]));

    double serial_sum = 0.0, parallel_sum = 0.0;
    const double t_serial = time_sweep(count, false, serial_sum);
    const double t_parallel = time_sweep(count, true, parallel_sum);

    std::printf("cases               : %zu\n", count);
    std::printf("serial reference    : %8.3f s  (%.1f cases/s)\n", t_serial,
                count / t_serial);
    std::printf("openmp              : %8.3f s  (%.1f cases/s)\n", t_parallel,
                count / t_parallel);
    std::printf("speedup             : %8.2fx\n", t_serial / t_parallel);
    std::printf("checksum gap        : %.3e\n", std::abs(serial_sum - parallel_sum));
    return std::abs(serial_sum - parallel_sum) == 0.0 ? 0 : 1;
}
