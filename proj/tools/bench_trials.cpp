// Compares the serial reference path against the OpenMP worker pool on an
// identical sweep and checks that both produce the same bytes.

#include <chrono>
#include <cstdio>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gtgossip/harness.hpp"

using namespace gtgossip;

namespace {

double timed_run(const ExperimentConfig& config, bool use_openmp, std::string& csv) {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentCurves curves = run_experiment(config, use_openmp);
    auto t1 = std::chrono::steady_clock::now();
    std::ostringstream os;
    write_csv(curves, os);
    csv = os.str();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main() {
    ExperimentConfig config;
    config.scheme = Scheme::GP;
    config.graph.kind = GraphKind::Complete;
    config.sensors = 70;
    config.defectives = 1;
    config.clusters = 5;
    config.alpha = 1.0;
    config.p = 1.0;
    config.mode = MasterMode::Random;
    config.rounds = 40;
    config.realizations = 4;
    config.trials = 100;
    config.seed = 99;

#ifdef _OPENMP
    std::printf("threads available: %d\n", omp_get_max_threads());
#else
    std::printf("threads available: 1 (built without OpenMP)\n");
#endif

    std::string serial_csv, parallel_csv;
    double serial_s = timed_run(config, false, serial_csv);
    double parallel_s = timed_run(config, true, parallel_csv);

    std::printf("serial reference: %.3f s\n", serial_s);
    std::printf("openmp pool:      %.3f s\n", parallel_s);
    std::printf("speedup:          %.2fx\n", serial_s / parallel_s);
    std::printf("outputs identical: %s\n", serial_csv == parallel_csv ? "yes" : "NO");
    return serial_csv == parallel_csv ? 0 : 1;
}
