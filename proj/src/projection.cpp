#include "vlpmono/projection.hpp"

#include <cmath>
#include <stdexcept>

#include "vlpmono/errors.hpp"

namespace vlpmono {

double CameraIntrinsics::mean_focal_um() const {
    return std::sqrt(fx_um * fy_um);
}

void CameraIntrinsics::validate() const {
    if (!(fx_um > 0.0) || !(fy_um > 0.0)) {
        throw InputError("focal lengths must be positive");
    }
    if (!std::isfinite(cx_um) || !std::isfinite(cy_um)) {
        throw InputError("principal point must be finite");
    }
    if (!(pixel_pitch_um > 0.0)) {
        throw InputError("pixel pitch must be positive");
    }
}

CameraIntrinsics CameraIntrinsics::defaults() {
    CameraIntrinsics k;
    k.fx_um = 4.0001e3;
    k.fy_um = 4.0102e3;
    k.cx_um = 2.6348e3;
    k.cy_um = 1.5286e3;
    k.pixel_pitch_um = 1.0;
    return k;
}

NoiseModel NoiseModel::none() {
    return NoiseModel{};
}

NoiseModel NoiseModel::gaussian(double sigma_um) {
    NoiseModel n;
    n.kind = Kind::gaussian;
    n.sigma_um = sigma_um;
    return n;
}

NoiseModel NoiseModel::quantize(double pitch_um) {
    NoiseModel n;
    n.kind = Kind::quantize;
    n.pitch_um = pitch_um;
    return n;
}

void NoiseModel::validate() const {
    if (kind == Kind::gaussian && !(sigma_um > 0.0)) {
        throw InputError("gaussian noise needs sigma > 0");
    }
    if (kind == Kind::quantize && !(pitch_um > 0.0)) {
        throw InputError("quantize noise needs pitch > 0");
    }
}

ImagePoint project(const WorldPoint& camera_pos, const CameraIntrinsics& k, const WorldPoint& p) {
    const double depth = p.z - camera_pos.z;
    if (!(depth > 0.0)) {
        throw std::invalid_argument("target point is not in front of the camera");
    }
    return {k.fx_um * (p.x - camera_pos.x) / depth, k.fy_um * (p.y - camera_pos.y) / depth};
}

double image_distance(const ImagePoint& a, const CameraIntrinsics& k) {
    const double f = k.mean_focal_um();
    return std::sqrt(a.u_um * a.u_um + a.v_um * a.v_um + f * f);
}

ImagePoint apply_noise(const ImagePoint& a, const NoiseModel& n, TrialRng& rng) {
    n.validate();
    switch (n.kind) {
        case NoiseModel::Kind::none:
            return a;
        case NoiseModel::Kind::gaussian: {
            const auto [z0, z1] = rng.gaussian_pair();
            return {a.u_um + n.sigma_um * z0, a.v_um + n.sigma_um * z1};
        }
        case NoiseModel::Kind::quantize:
            return {std::round(a.u_um / n.pitch_um) * n.pitch_um,
                    std::round(a.v_um / n.pitch_um) * n.pitch_um};
    }
    return a;
}

}  // namespace vlpmono
