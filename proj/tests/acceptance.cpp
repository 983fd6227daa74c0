// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vlpmono/errors.hpp"
#include "vlpmono/localization.hpp"
#include "vlpmono/rng.hpp"
#include "vlpmono/scenario_io.hpp"
#include "vlpmono/simulation.hpp"

using namespace vlpmono;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& message) {
        if (!condition && ok) {
            ok = false;
            detail = message;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<Observation> forward_observations(const WorldPoint& camera,
                                              const FeatureSet& features,
                                              const CameraIntrinsics& k) {
    std::vector<Observation> obs;
    for (const auto& f : features.points) {
        obs.push_back({f.label, project(camera, k, f.point)});
    }
    return obs;
}

// 1. Noiseless round-trip over the 7x7 receiver grid: max 3D error <= 1e-6 m,
//    single-threaded runtime under 1 s.
Check criterion_noiseless_round_trip() {
    Check c;
    ScenarioConfig cfg = ScenarioConfig::default_scenario();
    cfg.noise = NoiseModel::none();
    cfg.trials_per_point = 1;

    const auto t0 = std::chrono::steady_clock::now();
    const auto results = run_scenario(cfg, 1);
    const double elapsed = seconds_since(t0);

    c.require(results.size() == 49, "expected 49 grid points");
    double worst = 0.0;
    for (const auto& point : results) {
        c.require(point.failures == 0, "solver failure on a noiseless trial");
        worst = std::max(worst, point.metrics.rmse_3d_m);
    }
    c.require(worst <= 1e-6, "max 3D error " + format_g9(worst) + " m exceeds 1e-6 m");
    c.require(elapsed < 1.0, "runtime " + format_g9(elapsed) + " s exceeds 1 s");
    if (c.ok) {
        c.detail = "max error " + format_g9(worst) + " m, " + format_g9(elapsed) + " s";
    }
    return c;
}

// 2. Under 1 um quantization: per-point offsets <= 0.05 m, per-point RMSE over
//    100 trials <= 0.06 m, and the emitted CDF is monotone and ends at 1.
Check criterion_quantize_bounds() {
    Check c;
    ScenarioConfig cfg = ScenarioConfig::default_scenario();
    cfg.noise = NoiseModel::quantize(1.0);
    cfg.trials_per_point = 100;

    const auto results = run_scenario(cfg);
    double worst_offset = 0.0;
    double worst_rmse = 0.0;
    for (const auto& point : results) {
        c.require(point.successes() > 0, "a grid point lost every trial");
        worst_offset = std::max(worst_offset, point.metrics.offset_max_m);
        worst_rmse = std::max(worst_rmse,
                              std::max(point.metrics.rmse_xy_m, point.metrics.rmse_yz_m));
    }
    c.require(worst_offset <= 0.05,
              "max offset " + format_g9(worst_offset) + " m exceeds 0.05 m");
    c.require(worst_rmse <= 0.06, "max RMSE " + format_g9(worst_rmse) + " m exceeds 0.06 m");

    // Emit and re-read the CDF the way the CLI does before checking it.
    std::ostringstream text;
    write_cdf_csv(text, scenario_cdfs(results));
    std::istringstream in(text.str());
    std::string line;
    std::getline(in, line);
    std::string series;
    double prev_error = -1.0, prev_prob = 0.0, last_prob = 0.0;
    int rows = 0;
    while (std::getline(in, line)) {
        const auto p1 = line.find(',');
        const auto p2 = line.rfind(',');
        const std::string name = line.substr(0, p1);
        const double error = std::stod(line.substr(p1 + 1, p2 - p1 - 1));
        const double prob = std::stod(line.substr(p2 + 1));
        if (name != series) {
            c.require(series.empty() || last_prob == 1.0, "series did not reach 1.0");
            series = name;
            prev_error = -1.0;
            prev_prob = 0.0;
        }
        // Distinct doubles may round to the same 9-digit string, so the
        // emitted file is checked for the nondecreasing invariant.
        c.require(error >= prev_error, "CDF errors not nondecreasing");
        c.require(prob >= prev_prob, "CDF probabilities not monotone");
        prev_error = error;
        prev_prob = prob;
        last_prob = prob;
        ++rows;
    }
    c.require(rows > 0, "emitted CDF is empty");
    c.require(last_prob == 1.0, "final CDF probability is not 1.0");
    if (c.ok) {
        c.detail = "max offset " + format_g9(worst_offset) + " m, max RMSE " +
                   format_g9(worst_rmse) + " m";
    }
    return c;
}

// 3. Trilateration agrees with the staged 0.1 mm grid-search oracle within
//    2 mm on 20 random consistent systems; least squares agrees with the
//    closed form within 1e-9 m on the same three-sphere inputs.
Check criterion_oracle_equivalence() {
    Check c;
    TrialRng rng(2024);
    const double room_height = 5.0;
    double worst_grid = 0.0, worst_lsq = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const WorldPoint truth{0.2 + rng.uniform() * 2.6, 0.2 + rng.uniform() * 2.6,
                               0.5 + rng.uniform() * 3.5};
        std::vector<WorldPoint> centers;
        while (centers.size() < 3) {
            centers.clear();
            for (int i = 0; i < 3; ++i) {
                centers.push_back(
                    {rng.uniform() * 3.0, rng.uniform() * 3.0, room_height});
            }
            const double det = (centers[1].x - centers[0].x) * (centers[2].y - centers[0].y) -
                               (centers[1].y - centers[0].y) * (centers[2].x - centers[0].x);
            if (std::abs(det) < 0.05) {
                centers.clear();  // resample nearly collinear triples
            }
        }
        std::vector<SphereConstraint> spheres;
        for (const auto& center : centers) {
            spheres.push_back({center, distance(truth, center)});
        }
        const double depth = room_height - truth.z;

        const auto closed =
            trilaterate_planar(spheres[0], spheres[1], spheres[2], room_height, depth);
        const auto brute =
            oracles::grid_search_position(spheres, room_height, depth, 0.0, 3.0);
        worst_grid = std::max(worst_grid, std::hypot(closed.x - brute.x, closed.y - brute.y));

        const auto iterated = least_squares_multilaterate(spheres, room_height, depth);
        worst_lsq = std::max(worst_lsq, distance(closed, iterated));
    }
    c.require(worst_grid <= 2e-3,
              "grid-search disagreement " + format_g9(worst_grid) + " m exceeds 2 mm");
    c.require(worst_lsq <= 1e-9,
              "least-squares disagreement " + format_g9(worst_lsq) + " m exceeds 1e-9 m");
    if (c.ok) {
        c.detail = "grid gap " + format_g9(worst_grid) + " m, lsq gap " +
                   format_g9(worst_lsq) + " m";
    }
    return c;
}

// 4. Invariant bundle: scale homogeneity, mirror symmetry, the image
//    distance floor, RMSE
//    decomposition, CDF monotonicity, and byte-identical reruns.
Check criterion_invariants() {
    Check c;
    const auto k = CameraIntrinsics::defaults();
    TransmitterModel tx;
    tx.id = "LED-1";
    tx.center = {1.5, 1.5, 5.0};
    tx.shape = TransmitterShape::rectangle(1.0, 1.0);
    const FeatureSet features = default_features(tx);
    TrialRng rng(31415);

    for (int rep = 0; rep < 25; ++rep) {
        const double s = 0.25 + rng.uniform() * 4.0;

        // image_distance homogeneity and floor
        const ImagePoint a{(rng.uniform() - 0.5) * 4000.0, (rng.uniform() - 0.5) * 4000.0};
        CameraIntrinsics ks = k;
        ks.fx_um *= s;
        ks.fy_um *= s;
        const double base = image_distance(a, k);
        const double scaled = image_distance({a.u_um * s, a.v_um * s}, ks);
        c.require(std::abs(scaled - s * base) <= 1e-9 * std::max(1.0, scaled),
                  "image distance homogeneity drift");
        c.require(base >= k.mean_focal_um(), "image distance fell below the focal length");

        // localize homogeneity
        const WorldPoint camera{0.1 + rng.uniform() * 2.8, 0.1 + rng.uniform() * 2.8,
                                0.3 + rng.uniform() * 4.0};
        const auto obs = forward_observations(camera, features, k);
        std::vector<Observation> scaled_obs;
        for (const auto& o : obs) {
            scaled_obs.push_back({o.label, {o.point.u_um * s, o.point.v_um * s}});
        }
        const auto p0 = localize(obs, features, k, 5.0, SolverMethod::least_squares);
        const auto p1 = localize(scaled_obs, features, ks, 5.0, SolverMethod::least_squares);
        c.require(distance(p0.position, p1.position) <= 1e-9, "localize homogeneity drift");

        // mirror symmetry
        FeatureSet mirrored = features;
        for (auto& f : mirrored.points) {
            f.point.x = 3.0 - f.point.x;
        }
        const WorldPoint camera_m{3.0 - camera.x, camera.y, camera.z};
        const auto pm = localize(forward_observations(camera_m, mirrored, k), mirrored, k,
                                 5.0, SolverMethod::trilaterate);
        const auto pt = localize(obs, features, k, 5.0, SolverMethod::trilaterate);
        c.require(std::abs(pm.position.x - (3.0 - pt.position.x)) <= 1e-9 &&
                      std::abs(pm.position.y - pt.position.y) <= 1e-9,
                  "mirror symmetry drift");
    }

    // RMSE decomposition identity on a noisy run.
    ScenarioConfig cfg = ScenarioConfig::default_scenario();
    cfg.noise = NoiseModel::gaussian(2.0);
    cfg.trials_per_point = 30;
    cfg.grid_step_m = 1.0;
    const auto results = run_scenario(cfg);
    for (const auto& point : results) {
        double sum_z_sq = 0.0;
        for (const auto& e : point.successful_estimates()) {
            sum_z_sq += (e.z - point.truth.z) * (e.z - point.truth.z);
        }
        const double mean_z_sq = sum_z_sq / std::max(1, point.successes());
        const double lhs = point.metrics.rmse_3d_m * point.metrics.rmse_3d_m;
        const double rhs = point.metrics.rmse_xy_m * point.metrics.rmse_xy_m + mean_z_sq;
        c.require(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)),
                  "RMSE decomposition identity violated");
    }

    // CDF monotonicity on the run's emitted series.
    for (const auto& [name, cdf] : scenario_cdfs(results)) {
        for (std::size_t i = 1; i < cdf.steps.size(); ++i) {
            c.require(cdf.steps[i].error_m > cdf.steps[i - 1].error_m &&
                          cdf.steps[i].cum_prob >= cdf.steps[i - 1].cum_prob,
                      "CDF monotonicity violated");
        }
        c.require(!cdf.steps.empty() && cdf.steps.back().cum_prob == 1.0,
                  "CDF does not reach 1.0");
    }

    // Seed determinism: byte-identical serialized reruns.
    const std::string once = serialize_run(cfg.scenario_id, results);
    const std::string again = serialize_run(cfg.scenario_id, run_scenario(cfg));
    c.require(once == again, "rerun with the same config is not byte-identical");
    return c;
}

// 5. Degenerate inputs raise their declared errors instead of crashing or
//    answering silently.
Check criterion_degenerate_inputs() {
    Check c;
    const auto k = CameraIntrinsics::defaults();
    TransmitterModel tx;
    tx.id = "LED-1";
    tx.center = {1.5, 1.5, 5.0};
    tx.shape = TransmitterShape::rectangle(1.0, 1.0);
    const FeatureSet features = default_features(tx);

    const auto expect = [&c](const char* what, const std::function<void()>& fn) {
        try {
            fn();
            c.require(false, std::string("no error raised for ") + what);
        } catch (const SolverError&) {
        } catch (const InputError&) {
        } catch (const std::invalid_argument&) {
        } catch (...) {
            c.require(false, std::string("unexpected error type for ") + what);
        }
    };

    expect("collinear sphere centers", [&] {
        trilaterate_planar({{1, 1, 5}, 3.0}, {{2, 2, 5}, 3.0}, {{3, 3, 5}, 3.0}, 5.0, 3.0);
    });
    expect("duplicate image points", [&] {
        const std::vector<Observation> obs{{"A", {10, 10}}, {"B", {10, 10}}, {"C", {0, 0}}};
        estimate_depth_scale(obs, features, k);
    });
    expect("fewer than 3 anchors", [&] {
        const std::vector<Observation> obs{{"A", {0, 0}}, {"B", {100, 0}}};
        localize(obs, features, k, 5.0, SolverMethod::trilaterate);
    });
    expect("target behind the camera", [&] {
        project({1.5, 1.5, 2.0}, k, {1.5, 1.5, 1.0});
    });
    expect("depth scale below range", [&] {
        trilaterate_planar({{1, 1, 5}, 3.0}, {{2, 1, 5}, 3.0}, {{1, 2, 5}, 3.0}, 5.0, -1.0);
    });
    expect("depth scale above range", [&] {
        trilaterate_planar({{1, 1, 5}, 3.0}, {{2, 1, 5}, 3.0}, {{1, 2, 5}, 3.0}, 5.0, 15.0);
    });
    expect("collinear anchor set", [&] {
        FeatureSet bad;
        bad.points = {{"A", {0, 0, 5}}, {"B", {1, 0, 5}}, {"C", {2, 0, 5}}};
        bad.validate();
    });
    return c;
}

// 6. Doubling gaussian noise never shrinks the median per-point 3D RMSE, and
//    the two 49x100-trial runs finish inside 10 s.
Check criterion_statistical_sanity() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();

    ScenarioConfig cfg = ScenarioConfig::default_scenario();
    cfg.trials_per_point = 100;
    cfg.noise = NoiseModel::gaussian(1.0);
    const auto narrow = run_scenario(cfg);
    cfg.noise = NoiseModel::gaussian(2.0);
    const auto wide = run_scenario(cfg);

    const double elapsed = seconds_since(t0);

    const auto narrow_rmse = collect_metric(narrow, &PointMetrics::rmse_3d_m);
    const auto wide_rmse = collect_metric(wide, &PointMetrics::rmse_3d_m);
    c.require(!narrow_rmse.empty() && !wide_rmse.empty(), "missing per-point statistics");
    const double m1 = median(narrow_rmse);
    const double m2 = median(wide_rmse);
    c.require(m2 >= m1, "median RMSE fell when sigma doubled: " + format_g9(m1) + " -> " +
                            format_g9(m2));
    c.require(elapsed < 10.0, "runtime " + format_g9(elapsed) + " s exceeds 10 s");
    if (c.ok) {
        c.detail = "median RMSE " + format_g9(m1) + " -> " + format_g9(m2) + " m in " +
                   format_g9(elapsed) + " s";
    }
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"noiseless round-trip over the receiver grid", criterion_noiseless_round_trip},
        {"error bounds under 1 um quantization", criterion_quantize_bounds},
        {"solver equivalence against brute-force oracles", criterion_oracle_equivalence},
        {"invariant suite", criterion_invariants},
        {"degenerate-input handling", criterion_degenerate_inputs},
        {"statistical sanity under noise scaling", criterion_statistical_sanity},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check result;
        try {
            result = criteria[i].second();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("unexpected exception: ") + e.what();
        }
        std::printf("[%s] criterion %zu: %s%s%s\n", result.ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), result.detail.empty() ? "" : " - ",
                    result.detail.c_str());
        failures += result.ok ? 0 : 1;
    }
    return failures;
}
