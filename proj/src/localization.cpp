#include "vlpmono/localization.hpp"

#include <cmath>
#include <vector>

#include "vlpmono/errors.hpp"

namespace vlpmono {

namespace {

constexpr double kCollinearDetFloor = 1e-12;    // m^2
constexpr double kPlaneTolerance = 1e-9;        // m
constexpr double kCoincidentPointFloor = 1e-9;  // um
constexpr double kStepTolerance = 1e-10;        // m
constexpr int kMaxIterations = 100;

// Observed points carried into the single-f formulas. The anisotropic axes
// are rescaled into the geometric-mean focal frame first, which is what
// makes the similar-triangle relations hold exactly when fx != fy.
ImagePoint isotropize(const ImagePoint& a, const CameraIntrinsics& k) {
    const double f = k.mean_focal_um();
    return {a.u_um * f / k.fx_um, a.v_um * f / k.fy_um};
}

struct MatchedAnchor {
    const Feature* feature = nullptr;
    ImagePoint point;  // isotropized
};

// Pairs observations with anchors, preserving anchor order.
std::vector<MatchedAnchor> match_anchors(std::span<const Observation> obs,
                                         const FeatureSet& features,
                                         const CameraIntrinsics& k) {
    features.validate();
    k.validate();
    for (std::size_t i = 0; i < obs.size(); ++i) {
        for (std::size_t j = i + 1; j < obs.size(); ++j) {
            if (obs[i].label == obs[j].label) {
                throw SolverError("duplicate observation label '" + obs[i].label + "'");
            }
        }
    }
    for (const auto& o : obs) {
        if (!std::isfinite(o.point.u_um) || !std::isfinite(o.point.v_um)) {
            throw SolverError("observation '" + o.label + "' has non-finite coordinates");
        }
        bool known = false;
        for (const auto& f : features.points) {
            known = known || f.label == o.label;
        }
        if (!known) {
            throw SolverError("observation label '" + o.label + "' matches no anchor");
        }
    }

    std::vector<MatchedAnchor> matched;
    for (const auto& f : features.points) {
        for (const auto& o : obs) {
            if (o.label == f.label) {
                matched.push_back({&f, isotropize(o.point, k)});
                break;
            }
        }
    }
    return matched;
}

double validated_depth_scale(double depth_scale_m, double room_height_m) {
    if (!(depth_scale_m > 0.0) || depth_scale_m >= room_height_m + 10.0) {
        throw SolverError("depth scale outside the plausible range (0, H + 10)");
    }
    return depth_scale_m;
}

void check_sphere(const SphereConstraint& s, double room_height_m) {
    if (!(s.radius_m > 0.0) || !std::isfinite(s.radius_m) || !is_finite(s.center)) {
        throw SolverError("sphere constraint must be finite with a positive radius");
    }
    if (std::abs(s.center.z - room_height_m) > kPlaneTolerance) {
        throw SolverError("sphere center is off the luminaire plane");
    }
}

// One subtracted-pair row: linear in (X, Y) once the z terms cancel.
void pair_row(const SphereConstraint& a, const SphereConstraint& b,
              double& m0, double& m1, double& rhs) {
    m0 = b.center.x - a.center.x;
    m1 = b.center.y - a.center.y;
    rhs = (a.radius_m * a.radius_m - b.radius_m * b.radius_m +
           (b.center.x * b.center.x + b.center.y * b.center.y) -
           (a.center.x * a.center.x + a.center.y * a.center.y)) /
          2.0;
}

double objective(std::span<const SphereConstraint> spheres, const WorldPoint& p) {
    double sum = 0.0;
    for (const auto& s : spheres) {
        const double r = distance(p, s.center) - s.radius_m;
        sum += r * r;
    }
    return sum;
}

// Linearized seed: normal equations over all subtracted pairs.
WorldPoint linearized_seed(std::span<const SphereConstraint> spheres, double z) {
    double a00 = 0.0, a01 = 0.0, a11 = 0.0, b0 = 0.0, b1 = 0.0;
    for (std::size_t i = 0; i < spheres.size(); ++i) {
        for (std::size_t j = i + 1; j < spheres.size(); ++j) {
            double m0, m1, rhs;
            pair_row(spheres[i], spheres[j], m0, m1, rhs);
            a00 += m0 * m0;
            a01 += m0 * m1;
            a11 += m1 * m1;
            b0 += m0 * rhs;
            b1 += m1 * rhs;
        }
    }
    const double det = a00 * a11 - a01 * a01;
    if (!(std::abs(det) > kCollinearDetFloor * kCollinearDetFloor)) {
        throw SolverError("sphere centers are collinear");
    }
    return {(a11 * b0 - a01 * b1) / det, (a00 * b1 - a01 * b0) / det, z};
}

}  // namespace

double estimate_depth_scale(std::span<const Observation> obs,
                            const FeatureSet& features,
                            const CameraIntrinsics& k) {
    const auto matched = match_anchors(obs, features, k);
    if (matched.size() < 2) {
        throw SolverError("depth scale recovery needs at least 2 matched anchors");
    }

    double ratio_sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < matched.size(); ++i) {
        for (std::size_t j = i + 1; j < matched.size(); ++j) {
            const double du = matched[i].point.u_um - matched[j].point.u_um;
            const double dv = matched[i].point.v_um - matched[j].point.v_um;
            const double image_sep = std::hypot(du, dv);
            if (image_sep < kCoincidentPointFloor) {
                throw SolverError("coincident image points for anchors '" +
                                  matched[i].feature->label + "' and '" +
                                  matched[j].feature->label + "'");
            }
            const double world_sep =
                distance_xy(matched[i].feature->point, matched[j].feature->point);
            if (!(world_sep > 0.0)) {
                throw SolverError("matched anchors share a world position");
            }
            ratio_sum += world_sep / image_sep;
            ++pairs;
        }
    }
    return k.mean_focal_um() * ratio_sum / static_cast<double>(pairs);
}

double feature_distance(double image_distance_um, double depth_scale_m,
                        const CameraIntrinsics& k) {
    if (!(depth_scale_m > 0.0)) {
        throw SolverError("depth scale must be positive");
    }
    return image_distance_um * depth_scale_m / k.mean_focal_um();
}

WorldPoint trilaterate_planar(const SphereConstraint& sphere_a,
                              const SphereConstraint& sphere_b,
                              const SphereConstraint& sphere_c,
                              double room_height_m,
                              double depth_scale_m) {
    validated_depth_scale(depth_scale_m, room_height_m);
    check_sphere(sphere_a, room_height_m);
    check_sphere(sphere_b, room_height_m);
    check_sphere(sphere_c, room_height_m);

    double m00, m01, r0, m10, m11, r1;
    pair_row(sphere_a, sphere_b, m00, m01, r0);
    pair_row(sphere_a, sphere_c, m10, m11, r1);

    const double det = m00 * m11 - m01 * m10;
    if (!(std::abs(det) > kCollinearDetFloor)) {
        throw SolverError("sphere centers are collinear");
    }
    return {(m11 * r0 - m01 * r1) / det,
            (m00 * r1 - m10 * r0) / det,
            room_height_m - depth_scale_m};
}

WorldPoint least_squares_multilaterate(std::span<const SphereConstraint> spheres,
                                       double room_height_m,
                                       double depth_scale_m) {
    validated_depth_scale(depth_scale_m, room_height_m);
    if (spheres.size() < 3) {
        throw SolverError("multilateration needs at least 3 spheres");
    }
    for (const auto& s : spheres) {
        check_sphere(s, room_height_m);
    }

    const double z = room_height_m - depth_scale_m;
    WorldPoint p = linearized_seed(spheres, z);

    // Gauss-Newton on sum_i (|p - c_i| - r_i)^2 with Z held fixed.
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        double a00 = 0.0, a01 = 0.0, a11 = 0.0, g0 = 0.0, g1 = 0.0;
        for (const auto& s : spheres) {
            const double rho = distance(p, s.center);
            if (!(rho > 0.0)) {
                throw SolverError("iterate coincides with a sphere center");
            }
            const double jx = (p.x - s.center.x) / rho;
            const double jy = (p.y - s.center.y) / rho;
            const double res = rho - s.radius_m;
            a00 += jx * jx;
            a01 += jx * jy;
            a11 += jy * jy;
            g0 += jx * res;
            g1 += jy * res;
        }
        const double det = a00 * a11 - a01 * a01;
        if (!(std::abs(det) > 1e-300)) {
            throw SolverError("degenerate normal equations in multilateration");
        }
        const double dx = -(a11 * g0 - a01 * g1) / det;
        const double dy = -(a00 * g1 - a01 * g0) / det;

        // Accept the step only if it does not increase the objective; a
        // half-step fallback keeps strongly inconsistent systems stable.
        double scale = 1.0;
        const double before = objective(spheres, p);
        WorldPoint candidate{p.x + dx, p.y + dy, z};
        while (objective(spheres, candidate) > before && scale > 1e-4) {
            scale /= 2.0;
            candidate = {p.x + scale * dx, p.y + scale * dy, z};
        }
        p = candidate;
        if (std::hypot(scale * dx, scale * dy) < kStepTolerance) {
            return p;
        }
    }
    throw SolverError("multilateration did not converge within the iteration cap");
}

LocalizationResult localize(std::span<const Observation> obs,
                            const FeatureSet& features,
                            const CameraIntrinsics& k,
                            double room_height_m,
                            SolverMethod method) {
    const auto matched = match_anchors(obs, features, k);
    if (matched.size() < 3) {
        throw SolverError("localization needs at least 3 matched anchors");
    }

    const double depth_scale = estimate_depth_scale(obs, features, k);

    std::vector<SphereConstraint> spheres;
    spheres.reserve(matched.size());
    for (const auto& m : matched) {
        const double img_dist = image_distance(m.point, k);
        spheres.push_back({m.feature->point, feature_distance(img_dist, depth_scale, k)});
    }

    LocalizationResult result;
    result.depth_scale_m = depth_scale;
    std::size_t used = spheres.size();
    if (method == SolverMethod::trilaterate) {
        used = 3;
        result.position =
            trilaterate_planar(spheres[0], spheres[1], spheres[2], room_height_m, depth_scale);
    } else {
        result.position = least_squares_multilaterate(spheres, room_height_m, depth_scale);
    }

    double sq_sum = 0.0;
    for (std::size_t i = 0; i < used; ++i) {
        const double res = distance(result.position, spheres[i].center) - spheres[i].radius_m;
        sq_sum += res * res;
    }
    result.residual_rms_m = std::sqrt(sq_sum / static_cast<double>(used));
    return result;
}

}  // namespace vlpmono
