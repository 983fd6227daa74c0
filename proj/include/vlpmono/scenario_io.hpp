#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "vlpmono/localization.hpp"
#include "vlpmono/simulation.hpp"

namespace vlpmono {

/// Formats a double with 9 significant digits; the canonical float encoding
/// for every file this project writes.
std::string format_g9(double value);

/// `key = value` file with '#' comments. Throws IoError if unreadable.
std::map<std::string, std::string> read_key_value_file(const std::string& path);

/// Intrinsics file: keys fx_um, fy_um, cx_um, cy_um, pixel_pitch_um.
/// Missing keys fall back to the bundled defaults; unknown keys are
/// rejected (InputError).
CameraIntrinsics load_intrinsics(const std::string& path);

/// Scenario config file; see the bundled configs/ for the key set.
ScenarioConfig load_scenario(const std::string& path);

/// Transmitter description JSON: id, center {x_m,y_m,z_m}, shape
/// {type, width_x_m/length_y_m or diameter_m}. center.z_m is the luminaire
/// plane height used for localization.
TransmitterModel load_transmitter_json(const std::string& path);

/// Observation CSV rows: label,u_um,v_um in raw sensor micrometers.
/// The principal point is subtracted on load. Header row optional.
std::vector<Observation> load_observations_csv(const std::string& path,
                                               const CameraIntrinsics& k);

// --- results serialization -------------------------------------------------

/// Per-trial table: scenario_id,gx,gy,gz,trial,est_x,est_y,est_z,err_3d,status.
void write_results_csv(std::ostream& out, const std::string& scenario_id,
                       std::span<const PointResult> results);

/// Per-grid-point statistics table.
void write_summary_csv(std::ostream& out, const std::string& scenario_id,
                       std::span<const PointResult> results);

/// Stacked CDF table: series,error_m,cum_prob.
void write_cdf_csv(std::ostream& out,
                   const std::vector<std::pair<std::string, CdfSeries>>& series);

/// Builds the canonical CDF pair (per-point rmse_xy and rmse_yz) for a run.
std::vector<std::pair<std::string, CdfSeries>> scenario_cdfs(
    std::span<const PointResult> results);

/// Serializes a whole run (results + summary + CDF) to one string; the
/// byte-level determinism contract is defined over this encoding.
std::string serialize_run(const std::string& scenario_id,
                          std::span<const PointResult> results);

// --- readers for downstream plotting ----------------------------------------

struct ResultRow {
    std::string scenario_id;
    WorldPoint truth;
    int trial = 0;
    WorldPoint estimate;
    double err_3d_m = 0.0;
    bool ok = false;
};

std::vector<ResultRow> read_results_csv(const std::string& path);

std::vector<std::pair<std::string, CdfSeries>> read_cdf_csv(const std::string& path);

}  // namespace vlpmono
