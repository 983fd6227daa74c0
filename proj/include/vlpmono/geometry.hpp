#pragma once

#include <string>
#include <vector>

namespace vlpmono {

/// 3D position in the room frame: origin at a floor corner, z up, meters.
struct WorldPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

bool is_finite(const WorldPoint& p);
double distance(const WorldPoint& a, const WorldPoint& b);
double distance_xy(const WorldPoint& a, const WorldPoint& b);

/// Rectangular room; the luminaire plane is the ceiling z = height.
struct RoomConfig {
    double width_x_m = 0.0;
    double length_y_m = 0.0;
    double height_m = 0.0;

    void validate() const;  // throws InputError
};

struct TransmitterShape {
    enum class Kind { rectangle, circle };

    Kind kind = Kind::rectangle;
    double width_x_m = 0.0;   // rectangle
    double length_y_m = 0.0;  // rectangle
    double diameter_m = 0.0;  // circle

    static TransmitterShape rectangle(double width_x_m, double length_y_m);
    static TransmitterShape circle(double diameter_m);

    double half_extent_x() const;
    double half_extent_y() const;
};

/// A shaped ceiling luminaire with a known center and physical size.
struct TransmitterModel {
    std::string id;
    WorldPoint center;  // center.z is the luminaire plane height
    TransmitterShape shape;

    void validate() const;                             // shape/center sanity
    void validate_in_room(const RoomConfig& room) const;  // ceiling placement
};

struct Feature {
    std::string label;
    WorldPoint point;
};

/// Ordered list of labeled luminaire points used as range anchors.
/// Invariants: at least 3 entries, pairwise distinct, first three
/// non-collinear (triangle area > 1e-12 m^2), common plane height.
struct FeatureSet {
    std::vector<Feature> points;

    void validate() const;  // throws InputError on any violation
    double plane_height() const { return points.front().point.z; }
};

/// Discretizes the luminaire footprint into an nx-by-ny grid of world
/// points, boundary inclusive and symmetric about the center. Circles are
/// gridded over the bounding square and filtered to the disk.
std::vector<WorldPoint> virtual_point_grid(const TransmitterModel& t, int nx, int ny);

/// Canonical anchor selection: three rectangle corners (min-x/min-y,
/// max-x/min-y, min-x/max-y) labeled A, B, C plus the center E; for circles,
/// rim points at 90/210/330 degrees plus E.
FeatureSet default_features(const TransmitterModel& t);

}  // namespace vlpmono
