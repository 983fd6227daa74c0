#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vlpmono/geometry.hpp"
#include "vlpmono/localization.hpp"
#include "vlpmono/projection.hpp"

namespace vlpmono {

/// Full description of one Monte Carlo run: room, luminaire, camera,
/// receiver grid, noise, trial count, seed, and solver choice.
struct ScenarioConfig {
    std::string scenario_id = "scenario";
    RoomConfig room;
    TransmitterModel transmitter;
    CameraIntrinsics intrinsics;
    double receiver_height_m = 0.0;
    double grid_min_m = 0.0;
    double grid_max_m = 0.0;
    double grid_step_m = 0.0;
    NoiseModel noise;
    int trials_per_point = 1;
    std::uint64_t seed = 0;
    SolverMethod method = SolverMethod::trilaterate;

    void validate() const;  // throws InputError

    /// Bundled demo: 3x3x5 m room, 1x1 m rectangular luminaire centered on
    /// the ceiling, receivers on the z=2 plane, 7x7 grid.
    static ScenarioConfig default_scenario();

    std::size_t grid_points_per_axis() const;
    std::vector<double> grid_axis_values() const;
};

enum class TrialStatus { ok, not_visible, solver_failure };

const char* to_string(TrialStatus s);

struct TrialOutcome {
    TrialStatus status = TrialStatus::solver_failure;
    WorldPoint estimate;  // meaningful only when status == ok
};

struct PointMetrics {
    double offset_max_m = 0.0;  // max 3D error norm over trials
    double rmse_xy_m = 0.0;
    double rmse_yz_m = 0.0;
    double rmse_3d_m = 0.0;
};

/// Per-grid-point record: ground truth, one outcome per trial, and error
/// statistics over the successful trials. Statistics are NaN when every
/// trial failed.
struct PointResult {
    WorldPoint truth;
    std::vector<TrialOutcome> trials;
    PointMetrics metrics;
    int failures = 0;

    int successes() const { return static_cast<int>(trials.size()) - failures; }
    std::vector<WorldPoint> successful_estimates() const;
};

/// Empirical CDF: steps at each distinct sorted value, probability k/n after
/// the k-th smallest sample.
struct CdfStep {
    double error_m = 0.0;
    double cum_prob = 0.0;
};

struct CdfSeries {
    std::vector<CdfStep> steps;
};

/// Error statistics of a set of estimates against the ground truth.
/// Throws std::invalid_argument on an empty estimate list.
PointMetrics compute_metrics(const WorldPoint& truth, std::span<const WorldPoint> estimates);

/// Throws std::invalid_argument on empty input or negative/non-finite values.
CdfSeries build_cdf(std::span<const double> values);

/// Runs the scenario over the receiver grid, trials_per_point trials per
/// point. Trial t at grid index g draws from a generator derived from
/// (seed, g, t), so the output is byte-identical regardless of thread count.
/// Solver failures are counted per point, never fatal.
/// threads = 0 resolves via VLP_MONO_THREADS (0 or unset = all cores).
std::vector<PointResult> run_scenario(const ScenarioConfig& cfg, int threads = 0);

/// Plain-loop reference implementation of run_scenario, kept for testing
/// the parallel kernel against.
std::vector<PointResult> run_scenario_serial(const ScenarioConfig& cfg);

/// Thread-count policy: requested > 0 wins; otherwise VLP_MONO_THREADS
/// (0 or unparsable = auto); otherwise all hardware threads.
int resolve_thread_count(int requested);

/// Collects one statistic per grid point, skipping points with no successes.
std::vector<double> collect_metric(std::span<const PointResult> results,
                                   double PointMetrics::* field);

}  // namespace vlpmono
