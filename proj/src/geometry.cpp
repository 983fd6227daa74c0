#include "vlpmono/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vlpmono/errors.hpp"

namespace vlpmono {

namespace {

constexpr double kFeatureAreaFloor = 1e-12;  // m^2
constexpr double kPlaneTolerance = 1e-9;     // m

// Twice the signed area of triangle (a, b, c) in the xy-plane.
double cross_xy(const WorldPoint& a, const WorldPoint& b, const WorldPoint& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

}  // namespace

bool is_finite(const WorldPoint& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

double distance(const WorldPoint& a, const WorldPoint& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double distance_xy(const WorldPoint& a, const WorldPoint& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

void RoomConfig::validate() const {
    if (!(width_x_m > 0.0) || !(length_y_m > 0.0) || !(height_m > 0.0)) {
        throw InputError("room dimensions must all be positive");
    }
}

TransmitterShape TransmitterShape::rectangle(double width_x_m, double length_y_m) {
    TransmitterShape s;
    s.kind = Kind::rectangle;
    s.width_x_m = width_x_m;
    s.length_y_m = length_y_m;
    return s;
}

TransmitterShape TransmitterShape::circle(double diameter_m) {
    TransmitterShape s;
    s.kind = Kind::circle;
    s.diameter_m = diameter_m;
    return s;
}

double TransmitterShape::half_extent_x() const {
    return kind == Kind::rectangle ? width_x_m / 2.0 : diameter_m / 2.0;
}

double TransmitterShape::half_extent_y() const {
    return kind == Kind::rectangle ? length_y_m / 2.0 : diameter_m / 2.0;
}

void TransmitterModel::validate() const {
    if (!is_finite(center)) {
        throw InputError("transmitter center must be finite");
    }
    if (shape.kind == TransmitterShape::Kind::rectangle) {
        if (!(shape.width_x_m > 0.0) || !(shape.length_y_m > 0.0)) {
            throw InputError("transmitter rectangle dimensions must be positive");
        }
    } else {
        if (!(shape.diameter_m > 0.0)) {
            throw InputError("transmitter diameter must be positive");
        }
    }
}

void TransmitterModel::validate_in_room(const RoomConfig& room) const {
    validate();
    room.validate();
    if (std::abs(center.z - room.height_m) > kPlaneTolerance) {
        throw InputError("transmitter must sit on the ceiling plane z = room height");
    }
    const double hx = shape.half_extent_x();
    const double hy = shape.half_extent_y();
    if (center.x - hx < -kPlaneTolerance || center.x + hx > room.width_x_m + kPlaneTolerance ||
        center.y - hy < -kPlaneTolerance || center.y + hy > room.length_y_m + kPlaneTolerance) {
        throw InputError("transmitter footprint extends past the ceiling rectangle");
    }
}

void FeatureSet::validate() const {
    if (points.size() < 3) {
        throw InputError("feature set needs at least 3 points");
    }
    for (const auto& f : points) {
        if (!is_finite(f.point)) {
            throw InputError("feature point must be finite");
        }
    }
    const double h = points.front().point.z;
    for (const auto& f : points) {
        if (std::abs(f.point.z - h) > kPlaneTolerance) {
            throw InputError("feature points must share the luminaire plane height");
        }
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (!(distance(points[i].point, points[j].point) > 0.0)) {
                throw InputError("feature points must be pairwise distinct");
            }
        }
    }
    const double area =
        std::abs(cross_xy(points[0].point, points[1].point, points[2].point)) / 2.0;
    if (!(area > kFeatureAreaFloor)) {
        throw InputError("first three feature points are collinear");
    }
}

std::vector<WorldPoint> virtual_point_grid(const TransmitterModel& t, int nx, int ny) {
    t.validate();
    if (nx < 2 || ny < 2) {
        throw std::invalid_argument("virtual point grid needs nx >= 2 and ny >= 2");
    }

    const double sx = 2.0 * t.shape.half_extent_x();
    const double sy = 2.0 * t.shape.half_extent_y();

    // Offsets depend only on the footprint, so translating the center
    // translates every grid point exactly.
    std::vector<WorldPoint> out;
    out.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
    for (int ix = 0; ix < nx; ++ix) {
        const double ox = sx * ix / (nx - 1) - sx / 2.0;
        for (int iy = 0; iy < ny; ++iy) {
            const double oy = sy * iy / (ny - 1) - sy / 2.0;
            if (t.shape.kind == TransmitterShape::Kind::circle) {
                const double r = t.shape.diameter_m / 2.0;
                if (ox * ox + oy * oy > r * r * (1.0 + 1e-12)) {
                    continue;
                }
            }
            out.push_back({t.center.x + ox, t.center.y + oy, t.center.z});
        }
    }
    return out;
}

FeatureSet default_features(const TransmitterModel& t) {
    t.validate();

    FeatureSet fs;
    if (t.shape.kind == TransmitterShape::Kind::rectangle) {
        const double hx = t.shape.width_x_m / 2.0;
        const double hy = t.shape.length_y_m / 2.0;
        fs.points = {
            {"A", {t.center.x - hx, t.center.y - hy, t.center.z}},
            {"B", {t.center.x + hx, t.center.y - hy, t.center.z}},
            {"C", {t.center.x - hx, t.center.y + hy, t.center.z}},
            {"E", t.center},
        };
    } else {
        const double r = t.shape.diameter_m / 2.0;
        constexpr double deg = std::numbers::pi / 180.0;
        for (const auto& [label, angle_deg] :
             {std::pair{"A", 90.0}, std::pair{"B", 210.0}, std::pair{"C", 330.0}}) {
            fs.points.push_back({label,
                                 {t.center.x + r * std::cos(angle_deg * deg),
                                  t.center.y + r * std::sin(angle_deg * deg),
                                  t.center.z}});
        }
        fs.points.push_back({"E", t.center});
    }
    fs.validate();
    return fs;
}

}  // namespace vlpmono
