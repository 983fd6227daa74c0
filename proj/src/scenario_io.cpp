#include "vlpmono/scenario_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vlpmono/errors.hpp"

namespace vlpmono {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
        --end;
    }
    return s.substr(begin, end - begin);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t consumed = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &consumed);
    } catch (const std::exception&) {
        throw InputError("key '" + key + "': cannot parse '" + value + "' as a number");
    }
    if (consumed != value.size()) {
        throw InputError("key '" + key + "': trailing characters in '" + value + "'");
    }
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        if (!value.empty() && value[0] == '-') {
            throw std::invalid_argument("negative");
        }
        std::size_t consumed = 0;
        const std::uint64_t out = std::stoull(value, &consumed);
        if (consumed != value.size()) {
            throw std::invalid_argument("trailing");
        }
        return out;
    } catch (const std::exception&) {
        throw InputError("key '" + key + "': cannot parse '" + value +
                         "' as a nonnegative integer");
    }
}

SolverMethod parse_method(const std::string& value) {
    if (value == "tri" || value == "trilaterate") {
        return SolverMethod::trilaterate;
    }
    if (value == "lsq" || value == "least_squares") {
        return SolverMethod::least_squares;
    }
    throw InputError("method must be 'tri' or 'lsq', got '" + value + "'");
}

/// Key-value bag that tracks consumption so unknown keys can be rejected.
class KeyBag {
public:
    explicit KeyBag(std::map<std::string, std::string> values) : values_(std::move(values)) {}

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& fallback) {
        used_.insert(key);
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback) {
        used_.insert(key);
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : parse_double(key, it->second);
    }

    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) {
        used_.insert(key);
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : parse_u64(key, it->second);
    }

    void mark_known(const std::string& key) { used_.insert(key); }

    void reject_unknown(const std::string& context) const {
        for (const auto& [key, value] : values_) {
            if (used_.count(key) == 0) {
                throw InputError(context + ": unknown key '" + key + "'");
            }
        }
    }

private:
    std::map<std::string, std::string> values_;
    std::set<std::string> used_;
};

CameraIntrinsics intrinsics_from_bag(KeyBag& bag) {
    CameraIntrinsics k = CameraIntrinsics::defaults();
    k.fx_um = bag.get_double("fx_um", k.fx_um);
    k.fy_um = bag.get_double("fy_um", k.fy_um);
    k.cx_um = bag.get_double("cx_um", k.cx_um);
    k.cy_um = bag.get_double("cy_um", k.cy_um);
    k.pixel_pitch_um = bag.get_double("pixel_pitch_um", k.pixel_pitch_um);
    k.validate();
    return k;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        fields.push_back(trim(field));
    }
    return fields;
}

}  // namespace

std::string format_g9(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw IoError("cannot open file: " + path);
    }
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(file, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto pos = line.find('=');
        if (pos == std::string::npos) {
            throw InputError(path + ": expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, pos));
        if (key.empty()) {
            throw InputError(path + ": empty key");
        }
        out[key] = trim(line.substr(pos + 1));
    }
    return out;
}

CameraIntrinsics load_intrinsics(const std::string& path) {
    KeyBag bag(read_key_value_file(path));
    CameraIntrinsics k = intrinsics_from_bag(bag);
    bag.reject_unknown(path);
    return k;
}

ScenarioConfig load_scenario(const std::string& path) {
    KeyBag bag(read_key_value_file(path));
    ScenarioConfig cfg = ScenarioConfig::default_scenario();

    cfg.scenario_id = bag.get_string("scenario_id", cfg.scenario_id);
    cfg.room.width_x_m = bag.get_double("room_width_x_m", cfg.room.width_x_m);
    cfg.room.length_y_m = bag.get_double("room_length_y_m", cfg.room.length_y_m);
    cfg.room.height_m = bag.get_double("room_height_m", cfg.room.height_m);

    cfg.transmitter.id = bag.get_string("tx_id", cfg.transmitter.id);
    cfg.transmitter.center.x = bag.get_double("tx_center_x_m", cfg.transmitter.center.x);
    cfg.transmitter.center.y = bag.get_double("tx_center_y_m", cfg.transmitter.center.y);
    cfg.transmitter.center.z = cfg.room.height_m;  // luminaire sits on the ceiling

    const std::string shape = bag.get_string("tx_shape", "rectangle");
    if (shape == "rectangle") {
        cfg.transmitter.shape = TransmitterShape::rectangle(
            bag.get_double("tx_width_x_m", 1.0), bag.get_double("tx_length_y_m", 1.0));
        bag.mark_known("tx_diameter_m");
        if (bag.has("tx_diameter_m")) {
            throw InputError(path + ": tx_diameter_m is only valid for circle transmitters");
        }
    } else if (shape == "circle") {
        cfg.transmitter.shape = TransmitterShape::circle(bag.get_double("tx_diameter_m", 1.0));
        if (bag.has("tx_width_x_m") || bag.has("tx_length_y_m")) {
            throw InputError(path + ": rectangle dimensions are invalid for circle transmitters");
        }
    } else {
        throw InputError(path + ": tx_shape must be 'rectangle' or 'circle'");
    }

    cfg.intrinsics = intrinsics_from_bag(bag);

    cfg.receiver_height_m = bag.get_double("receiver_height_m", cfg.receiver_height_m);
    cfg.grid_min_m = bag.get_double("grid_min_m", cfg.grid_min_m);
    cfg.grid_max_m = bag.get_double("grid_max_m", cfg.grid_max_m);
    cfg.grid_step_m = bag.get_double("grid_step_m", cfg.grid_step_m);

    const std::string noise = bag.get_string("noise", "quantize");
    if (noise == "none") {
        cfg.noise = NoiseModel::none();
    } else if (noise == "gaussian") {
        cfg.noise = NoiseModel::gaussian(bag.get_double("noise_sigma_um", 1.0));
    } else if (noise == "quantize") {
        cfg.noise = NoiseModel::quantize(
            bag.get_double("noise_pitch_um", cfg.intrinsics.pixel_pitch_um));
    } else {
        throw InputError(path + ": noise must be 'none', 'gaussian', or 'quantize'");
    }

    const std::uint64_t trials =
        bag.get_u64("trials_per_point", static_cast<std::uint64_t>(cfg.trials_per_point));
    if (trials > 1000000000ULL) {
        throw InputError(path + ": trials_per_point too large");
    }
    cfg.trials_per_point = static_cast<int>(trials);
    cfg.seed = bag.get_u64("seed", cfg.seed);
    cfg.method = parse_method(bag.get_string("method", "tri"));

    bag.reject_unknown(path);
    cfg.validate();
    return cfg;
}

TransmitterModel load_transmitter_json(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw IoError("cannot open file: " + path);
    }
    nlohmann::json doc;
    try {
        file >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": invalid JSON: " + e.what());
    }

    try {
        TransmitterModel t;
        t.id = doc.at("id").get<std::string>();
        const auto& center = doc.at("center");
        t.center = {center.at("x_m").get<double>(), center.at("y_m").get<double>(),
                    center.at("z_m").get<double>()};
        const auto& shape = doc.at("shape");
        const std::string type = shape.at("type").get<std::string>();
        if (type == "rectangle") {
            t.shape = TransmitterShape::rectangle(shape.at("width_x_m").get<double>(),
                                                  shape.at("length_y_m").get<double>());
        } else if (type == "circle") {
            t.shape = TransmitterShape::circle(shape.at("diameter_m").get<double>());
        } else {
            throw InputError(path + ": shape.type must be 'rectangle' or 'circle'");
        }
        t.validate();
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::vector<Observation> load_observations_csv(const std::string& path,
                                               const CameraIntrinsics& k) {
    std::ifstream file(path);
    if (!file) {
        throw IoError("cannot open file: " + path);
    }
    k.validate();

    std::vector<Observation> out;
    std::string line;
    bool first = true;
    while (std::getline(file, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (first && fields.size() >= 3 && fields[0] == "label") {
            first = false;
            continue;  // header row
        }
        first = false;
        if (fields.size() != 3 || fields[0].empty()) {
            throw InputError(path + ": expected 'label,u_um,v_um', got '" + line + "'");
        }
        // Raw sensor coordinates; recenter on the principal point.
        const double u_raw = parse_double("u_um", fields[1]);
        const double v_raw = parse_double("v_um", fields[2]);
        if (!std::isfinite(u_raw) || !std::isfinite(v_raw)) {
            throw InputError(path + ": non-finite coordinates in '" + line + "'");
        }
        out.push_back({fields[0], {u_raw - k.cx_um, v_raw - k.cy_um}});
    }
    if (out.empty()) {
        throw InputError(path + ": no observation rows");
    }
    return out;
}

void write_results_csv(std::ostream& out, const std::string& scenario_id,
                       std::span<const PointResult> results) {
    out << "scenario_id,gx,gy,gz,trial,est_x,est_y,est_z,err_3d,status\n";
    for (const auto& point : results) {
        for (std::size_t t = 0; t < point.trials.size(); ++t) {
            const auto& trial = point.trials[t];
            const bool ok = trial.status == TrialStatus::ok;
            const double nan = std::numeric_limits<double>::quiet_NaN();
            const WorldPoint est = ok ? trial.estimate : WorldPoint{nan, nan, nan};
            const double err = ok ? distance(point.truth, trial.estimate) : nan;
            out << scenario_id << ',' << format_g9(point.truth.x) << ','
                << format_g9(point.truth.y) << ',' << format_g9(point.truth.z) << ',' << t
                << ',' << format_g9(est.x) << ',' << format_g9(est.y) << ','
                << format_g9(est.z) << ',' << format_g9(err) << ',' << to_string(trial.status)
                << '\n';
        }
    }
}

void write_summary_csv(std::ostream& out, const std::string& scenario_id,
                       std::span<const PointResult> results) {
    out << "scenario_id,gx,gy,gz,trials,successes,failures,"
           "offset_max_m,rmse_xy_m,rmse_yz_m,rmse_3d_m\n";
    for (const auto& point : results) {
        out << scenario_id << ',' << format_g9(point.truth.x) << ',' << format_g9(point.truth.y)
            << ',' << format_g9(point.truth.z) << ',' << point.trials.size() << ','
            << point.successes() << ',' << point.failures << ','
            << format_g9(point.metrics.offset_max_m) << ',' << format_g9(point.metrics.rmse_xy_m)
            << ',' << format_g9(point.metrics.rmse_yz_m) << ','
            << format_g9(point.metrics.rmse_3d_m) << '\n';
    }
}

void write_cdf_csv(std::ostream& out,
                   const std::vector<std::pair<std::string, CdfSeries>>& series) {
    out << "series,error_m,cum_prob\n";
    for (const auto& [name, cdf] : series) {
        for (const auto& step : cdf.steps) {
            out << name << ',' << format_g9(step.error_m) << ',' << format_g9(step.cum_prob)
                << '\n';
        }
    }
}

std::vector<std::pair<std::string, CdfSeries>> scenario_cdfs(
    std::span<const PointResult> results) {
    std::vector<std::pair<std::string, CdfSeries>> out;
    const auto xy = collect_metric(results, &PointMetrics::rmse_xy_m);
    const auto yz = collect_metric(results, &PointMetrics::rmse_yz_m);
    if (!xy.empty()) {
        out.emplace_back("rmse_xy", build_cdf(xy));
    }
    if (!yz.empty()) {
        out.emplace_back("rmse_yz", build_cdf(yz));
    }
    return out;
}

std::string serialize_run(const std::string& scenario_id,
                          std::span<const PointResult> results) {
    std::ostringstream out;
    write_results_csv(out, scenario_id, results);
    write_summary_csv(out, scenario_id, results);
    write_cdf_csv(out, scenario_cdfs(results));
    return out.str();
}

std::vector<ResultRow> read_results_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw IoError("cannot open file: " + path);
    }
    std::string line;
    if (!std::getline(file, line) ||
        trim(line) != "scenario_id,gx,gy,gz,trial,est_x,est_y,est_z,err_3d,status") {
        throw IoError(path + ": missing or unexpected results header");
    }
    std::vector<ResultRow> rows;
    while (std::getline(file, line)) {
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 10) {
            throw IoError(path + ": malformed results row '" + line + "'");
        }
        ResultRow row;
        row.scenario_id = fields[0];
        row.truth = {parse_double("gx", fields[1]), parse_double("gy", fields[2]),
                     parse_double("gz", fields[3])};
        row.trial = static_cast<int>(parse_u64("trial", fields[4]));
        row.ok = fields[9] == "ok";
        if (row.ok) {
            row.estimate = {parse_double("est_x", fields[5]), parse_double("est_y", fields[6]),
                            parse_double("est_z", fields[7])};
            row.err_3d_m = parse_double("err_3d", fields[8]);
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::pair<std::string, CdfSeries>> read_cdf_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw IoError("cannot open file: " + path);
    }
    std::string line;
    if (!std::getline(file, line) || trim(line) != "series,error_m,cum_prob") {
        throw IoError(path + ": missing or unexpected cdf header");
    }
    std::vector<std::pair<std::string, CdfSeries>> out;
    while (std::getline(file, line)) {
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            throw IoError(path + ": malformed cdf row '" + line + "'");
        }
        if (out.empty() || out.back().first != fields[0]) {
            out.emplace_back(fields[0], CdfSeries{});
        }
        out.back().second.steps.push_back(
            {parse_double("error_m", fields[1]), parse_double("cum_prob", fields[2])});
    }
    return out;
}

}  // namespace vlpmono
