#include "vlpmono/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vlpmono/errors.hpp"
#include "vlpmono/rng.hpp"

namespace vlpmono {

namespace {

constexpr double kGridSnap = 1e-9;

// Forward model + inversion for one Monte Carlo trial. Every random draw
// comes from the trial's own derived stream.
TrialOutcome simulate_trial(const ScenarioConfig& cfg,
                            const FeatureSet& features,
                            const WorldPoint& truth,
                            std::uint64_t grid_index,
                            std::uint64_t trial) {
    for (const auto& f : features.points) {
        if (!(f.point.z > truth.z)) {
            return {TrialStatus::not_visible, {}};
        }
    }

    TrialRng rng = TrialRng::derive(cfg.seed, grid_index, trial);
    std::vector<Observation> obs;
    obs.reserve(features.points.size());
    for (const auto& f : features.points) {
        const ImagePoint ideal = project(truth, cfg.intrinsics, f.point);
        obs.push_back({f.label, apply_noise(ideal, cfg.noise, rng)});
    }

    try {
        const LocalizationResult res =
            localize(obs, features, cfg.intrinsics, cfg.room.height_m, cfg.method);
        return {TrialStatus::ok, res.position};
    } catch (const std::exception&) {
        // Counted, never fatal; nothing may escape the parallel region.
        return {TrialStatus::solver_failure, {}};
    }
}

void finalize_point(PointResult& point) {
    const auto estimates = point.successful_estimates();
    point.failures = static_cast<int>(point.trials.size() - estimates.size());
    if (estimates.empty()) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        point.metrics = {nan, nan, nan, nan};
    } else {
        point.metrics = compute_metrics(point.truth, estimates);
    }
}

std::vector<PointResult> prepare_results(const ScenarioConfig& cfg,
                                         std::vector<WorldPoint>& truths) {
    cfg.validate();
    const auto axis = cfg.grid_axis_values();
    truths.clear();
    for (const double x : axis) {
        for (const double y : axis) {
            truths.push_back({x, y, cfg.receiver_height_m});
        }
    }
    std::vector<PointResult> results(truths.size());
    for (std::size_t g = 0; g < truths.size(); ++g) {
        results[g].truth = truths[g];
        results[g].trials.resize(static_cast<std::size_t>(cfg.trials_per_point));
    }
    return results;
}

}  // namespace

void ScenarioConfig::validate() const {
    room.validate();
    transmitter.validate_in_room(room);
    intrinsics.validate();
    noise.validate();
    if (!(grid_step_m > 0.0)) {
        throw InputError("grid_step must be positive");
    }
    if (!(grid_min_m < grid_max_m)) {
        throw InputError("grid_min must be less than grid_max");
    }
    if (trials_per_point < 1) {
        throw InputError("trials_per_point must be at least 1");
    }
    if (!(receiver_height_m > 0.0) || !(receiver_height_m < room.height_m)) {
        throw InputError("receiver_height must lie strictly between floor and ceiling");
    }
    if (scenario_id.empty() || scenario_id.find(',') != std::string::npos ||
        scenario_id.find('\n') != std::string::npos) {
        throw InputError("scenario_id must be nonempty and free of commas/newlines");
    }
}

ScenarioConfig ScenarioConfig::default_scenario() {
    ScenarioConfig cfg;
    cfg.scenario_id = "room3x3x5";
    cfg.room = {3.0, 3.0, 5.0};
    cfg.transmitter.id = "LED-1";
    cfg.transmitter.center = {1.5, 1.5, 5.0};
    cfg.transmitter.shape = TransmitterShape::rectangle(1.0, 1.0);
    cfg.intrinsics = CameraIntrinsics::defaults();
    cfg.receiver_height_m = 2.0;
    cfg.grid_min_m = 0.0;
    cfg.grid_max_m = 3.0;
    cfg.grid_step_m = 0.5;
    cfg.noise = NoiseModel::quantize(1.0);
    cfg.trials_per_point = 100;
    cfg.seed = 20240601;
    cfg.method = SolverMethod::trilaterate;
    return cfg;
}

std::size_t ScenarioConfig::grid_points_per_axis() const {
    return static_cast<std::size_t>(
               std::floor((grid_max_m - grid_min_m) / grid_step_m + kGridSnap)) +
           1;
}

std::vector<double> ScenarioConfig::grid_axis_values() const {
    std::vector<double> axis(grid_points_per_axis());
    for (std::size_t i = 0; i < axis.size(); ++i) {
        axis[i] = grid_min_m + static_cast<double>(i) * grid_step_m;
    }
    return axis;
}

const char* to_string(TrialStatus s) {
    switch (s) {
        case TrialStatus::ok: return "ok";
        case TrialStatus::not_visible: return "not_visible";
        case TrialStatus::solver_failure: return "solver_failure";
    }
    return "unknown";
}

std::vector<WorldPoint> PointResult::successful_estimates() const {
    std::vector<WorldPoint> out;
    out.reserve(trials.size());
    for (const auto& t : trials) {
        if (t.status == TrialStatus::ok) {
            out.push_back(t.estimate);
        }
    }
    return out;
}

PointMetrics compute_metrics(const WorldPoint& truth, std::span<const WorldPoint> estimates) {
    if (estimates.empty()) {
        throw std::invalid_argument("compute_metrics needs at least one estimate");
    }
    double max_sq = 0.0, sum_xy = 0.0, sum_yz = 0.0, sum_3d = 0.0;
    for (const auto& e : estimates) {
        const double dx = e.x - truth.x;
        const double dy = e.y - truth.y;
        const double dz = e.z - truth.z;
        const double sq = dx * dx + dy * dy + dz * dz;
        max_sq = std::max(max_sq, sq);
        sum_xy += dx * dx + dy * dy;
        sum_yz += dy * dy + dz * dz;
        sum_3d += sq;
    }
    const double n = static_cast<double>(estimates.size());
    return {std::sqrt(max_sq), std::sqrt(sum_xy / n), std::sqrt(sum_yz / n),
            std::sqrt(sum_3d / n)};
}

CdfSeries build_cdf(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("cdf needs at least one value");
    }
    std::vector<double> sorted(values.begin(), values.end());
    for (const double v : sorted) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("cdf values must be finite and nonnegative");
        }
    }
    std::sort(sorted.begin(), sorted.end());

    CdfSeries cdf;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double prob = static_cast<double>(i + 1) / n;
        if (!cdf.steps.empty() && cdf.steps.back().error_m == sorted[i]) {
            cdf.steps.back().cum_prob = prob;  // duplicate values merge
        } else {
            cdf.steps.push_back({sorted[i], prob});
        }
    }
    return cdf;
}

int resolve_thread_count(int requested) {
    if (requested > 0) {
        return requested;
    }
    int max_threads = static_cast<int>(std::thread::hardware_concurrency());
#ifdef _OPENMP
    max_threads = omp_get_max_threads();
#endif
    if (max_threads < 1) {
        max_threads = 1;
    }
    if (const char* env = std::getenv("VLP_MONO_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && parsed > 0) {
            return static_cast<int>(parsed);
        }
    }
    return max_threads;
}

std::vector<PointResult> run_scenario(const ScenarioConfig& cfg, int threads) {
    std::vector<WorldPoint> truths;
    std::vector<PointResult> results = prepare_results(cfg, truths);
    const FeatureSet features = default_features(cfg.transmitter);

    const int grid_count = static_cast<int>(results.size());
    const int trial_count = cfg.trials_per_point;
    const int num_threads = resolve_thread_count(threads);
    (void)num_threads;

#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(static) num_threads(num_threads)
#endif
    for (int g = 0; g < grid_count; ++g) {
        for (int t = 0; t < trial_count; ++t) {
            results[g].trials[t] = simulate_trial(cfg, features, truths[g],
                                                  static_cast<std::uint64_t>(g),
                                                  static_cast<std::uint64_t>(t));
        }
    }

    for (auto& point : results) {
        finalize_point(point);
    }
    return results;
}

std::vector<PointResult> run_scenario_serial(const ScenarioConfig& cfg) {
    std::vector<WorldPoint> truths;
    std::vector<PointResult> results = prepare_results(cfg, truths);
    const FeatureSet features = default_features(cfg.transmitter);

    for (std::size_t g = 0; g < results.size(); ++g) {
        for (int t = 0; t < cfg.trials_per_point; ++t) {
            results[g].trials[t] = simulate_trial(cfg, features, truths[g], g,
                                                  static_cast<std::uint64_t>(t));
        }
        finalize_point(results[g]);
    }
    return results;
}

std::vector<double> collect_metric(std::span<const PointResult> results,
                                   double PointMetrics::* field) {
    std::vector<double> values;
    values.reserve(results.size());
    for (const auto& r : results) {
        if (r.successes() > 0) {
            values.push_back(r.metrics.*field);
        }
    }
    return values;
}

}  // namespace vlpmono
