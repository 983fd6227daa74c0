#pragma once

#include <span>
#include <string>
#include <vector>

#include "vlpmono/geometry.hpp"
#include "vlpmono/projection.hpp"

namespace vlpmono {

/// One measured image point, tagged with the anchor label it belongs to.
struct Observation {
    std::string label;
    ImagePoint point;
};

/// Range constraint: the camera lies on a sphere of the given radius around
/// the given luminaire point.
struct SphereConstraint {
    WorldPoint center;
    double radius_m = 0.0;
};

struct LocalizationResult {
    WorldPoint position;
    double depth_scale_m = 0.0;   // perpendicular distance camera -> luminaire plane
    double residual_rms_m = 0.0;  // RMS range-equation residual over the anchors used
};

enum class SolverMethod { trilaterate, least_squares };

/// Recovers the depth scale (camera-to-plane distance) from the known
/// physical separations of the anchors and their measured image separations:
/// focal length times the mean world/image separation ratio over all matched
/// pairs. Under noiseless projection this is exact. Needs >= 2 matched
/// labels; throws SolverError on unmatched labels or coincident image points.
double estimate_depth_scale(std::span<const Observation> obs,
                            const FeatureSet& features,
                            const CameraIntrinsics& k);

/// Similar-triangle range recovery: the camera-to-anchor range is the image
/// distance scaled by depth_scale / focal length. Throws SolverError if
/// depth_scale_m <= 0.
double feature_distance(double image_distance_um, double depth_scale_m,
                        const CameraIntrinsics& k);

/// Closed-form position from three range constraints with centers on the
/// luminaire plane: fixes the height at room height minus depth scale and
/// solves the 2x2 linear system obtained by subtracting the sphere equations
/// pairwise. Throws SolverError on collinear centers (|det| < 1e-12 m^2),
/// centers off the plane (tolerance 1e-9 m), nonpositive radii, or a depth
/// scale outside (0, room height + 10).
WorldPoint trilaterate_planar(const SphereConstraint& sphere_a,
                              const SphereConstraint& sphere_b,
                              const SphereConstraint& sphere_c,
                              double room_height_m,
                              double depth_scale_m);

/// Overdetermined variant: with the height fixed the same way, minimizes
/// sum_i (|p - center_i| - radius_i)^2 over the horizontal position by
/// Gauss-Newton iteration seeded from the linearized subtracted-pairs
/// solution. Converges when the step drops below 1e-10 m; throws SolverError
/// after 100 iterations.
WorldPoint least_squares_multilaterate(std::span<const SphereConstraint> spheres,
                                       double room_height_m,
                                       double depth_scale_m);

/// End-to-end pipeline: depth scale -> per-anchor ranges -> chosen solver.
/// Requires observations covering at least 3 anchor labels; every
/// observation label must match an anchor. Throws SolverError otherwise.
LocalizationResult localize(std::span<const Observation> obs,
                            const FeatureSet& features,
                            const CameraIntrinsics& k,
                            double room_height_m,
                            SolverMethod method);

}  // namespace vlpmono
