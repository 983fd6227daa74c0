// Times the Monte Carlo grid kernel: serial reference vs the OpenMP path,
// and verifies both serialize to identical bytes.

#include <chrono>
#include <iostream>

#include "vlpmono/scenario_io.hpp"
#include "vlpmono/simulation.hpp"

using namespace vlpmono;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    ScenarioConfig cfg = ScenarioConfig::default_scenario();
    cfg.scenario_id = "bench";
    cfg.grid_step_m = 0.1;  // 31x31 grid
    cfg.trials_per_point = argc > 1 ? std::atoi(argv[1]) : 50;
    cfg.noise = NoiseModel::gaussian(2.0);
    cfg.method = SolverMethod::least_squares;

    const int threads = resolve_thread_count(0);
    std::cout << "grid " << cfg.grid_points_per_axis() << "x" << cfg.grid_points_per_axis()
              << ", " << cfg.trials_per_point << " trials/point, " << threads << " threads\n";

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = run_scenario_serial(cfg);
    const double serial_s = seconds_since(t0);
    std::cout << "serial reference: " << serial_s << " s\n";

    t0 = std::chrono::steady_clock::now();
    const auto parallel = run_scenario(cfg, threads);
    const double parallel_s = seconds_since(t0);
    std::cout << "parallel kernel:  " << parallel_s << " s\n";

    const bool identical = serialize_run(cfg.scenario_id, serial) ==
                           serialize_run(cfg.scenario_id, parallel);
    std::cout << "outputs identical: " << (identical ? "yes" : "NO") << "\n";
    std::cout << "speedup: " << serial_s / parallel_s << "x\n";
    return identical ? 0 : 1;
}
