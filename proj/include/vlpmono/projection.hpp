#pragma once

#include "vlpmono/geometry.hpp"
#include "vlpmono/rng.hpp"

namespace vlpmono {

/// Pinhole intrinsics on the physical image plane, micrometers.
struct CameraIntrinsics {
    double fx_um = 0.0;
    double fy_um = 0.0;
    double cx_um = 0.0;  // principal point, raw sensor coordinates
    double cy_um = 0.0;
    double pixel_pitch_um = 1.0;

    /// Geometric-mean focal length, used wherever a single f is required.
    double mean_focal_um() const;

    void validate() const;  // throws InputError

    /// Bundled defaults for the demo camera.
    static CameraIntrinsics defaults();
};

/// Image-plane point in micrometers, relative to the principal point.
struct ImagePoint {
    double u_um = 0.0;
    double v_um = 0.0;
};

struct NoiseModel {
    enum class Kind { none, gaussian, quantize };

    Kind kind = Kind::none;
    double sigma_um = 0.0;  // gaussian
    double pitch_um = 0.0;  // quantize

    static NoiseModel none();
    static NoiseModel gaussian(double sigma_um);
    static NoiseModel quantize(double pitch_um);

    void validate() const;
};

/// Projects a world point through an upward-facing, axis-aligned pinhole
/// camera at camera_pos: u = fx (p.x - c.x)/(p.z - c.z), v likewise with fy.
/// Throws std::invalid_argument if p is not strictly in front of the camera
/// (p.z <= camera_pos.z).
ImagePoint project(const WorldPoint& camera_pos, const CameraIntrinsics& k, const WorldPoint& p);

/// 3D distance from the optical center to image point a:
/// sqrt(u^2 + v^2 + f^2) with f the geometric-mean focal length. Always >= f.
double image_distance(const ImagePoint& a, const CameraIntrinsics& k);

/// none: identity. gaussian: adds independent zero-mean normals (std sigma)
/// to u and v. quantize: rounds u and v to the nearest multiple of pitch.
/// Deterministic given rng.
ImagePoint apply_noise(const ImagePoint& a, const NoiseModel& n, TrialRng& rng);

}  // namespace vlpmono
