#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "vlpmono/errors.hpp"
#include "vlpmono/geometry.hpp"
#include "vlpmono/rng.hpp"

using namespace vlpmono;

namespace {

TransmitterModel demo_rectangle() {
    TransmitterModel t;
    t.id = "LED-1";
    t.center = {1.5, 1.5, 5.0};
    t.shape = TransmitterShape::rectangle(1.0, 1.0);
    return t;
}

bool contains_point(const std::vector<WorldPoint>& pts, const WorldPoint& q) {
    return std::any_of(pts.begin(), pts.end(), [&](const WorldPoint& p) {
        return p.x == q.x && p.y == q.y && p.z == q.z;
    });
}

}  // namespace

TEST_CASE("2x2 grid of the demo rectangle reproduces its four corners exactly") {
    const auto pts = virtual_point_grid(demo_rectangle(), 2, 2);
    REQUIRE(pts.size() == 4);
    CHECK(contains_point(pts, {1.0, 1.0, 5.0}));
    CHECK(contains_point(pts, {1.0, 2.0, 5.0}));
    CHECK(contains_point(pts, {2.0, 1.0, 5.0}));
    CHECK(contains_point(pts, {2.0, 2.0, 5.0}));
}

TEST_CASE("3x3 grid includes the midpoints and the center") {
    const auto pts = virtual_point_grid(demo_rectangle(), 3, 3);
    REQUIRE(pts.size() == 9);
    CHECK(contains_point(pts, {1.5, 1.5, 5.0}));
    CHECK(contains_point(pts, {1.5, 1.0, 5.0}));
    CHECK(contains_point(pts, {2.0, 1.5, 5.0}));
}

TEST_CASE("circle grid points stay inside the disk") {
    TransmitterModel t;
    t.id = "disk";
    t.center = {1.5, 1.5, 5.0};
    t.shape = TransmitterShape::circle(1.0);
    const auto pts = virtual_point_grid(t, 11, 11);
    CHECK(pts.size() > 0);
    CHECK(pts.size() < 121);  // corners of the bounding square filtered out
    double cx = 0.0, cy = 0.0;
    for (const auto& p : pts) {
        CHECK(distance_xy(p, t.center) <= 0.5 + 1e-12);
        CHECK(p.z == 5.0);
        cx += p.x;
        cy += p.y;
    }
    // The disk filter keeps the grid symmetric about the center.
    CHECK(std::abs(cx / pts.size() - t.center.x) < 1e-12);
    CHECK(std::abs(cy / pts.size() - t.center.y) < 1e-12);
}

TEST_CASE("degenerate grid sizes are rejected") {
    CHECK_THROWS_AS(virtual_point_grid(demo_rectangle(), 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(virtual_point_grid(demo_rectangle(), 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(virtual_point_grid(demo_rectangle(), 0, 0), std::invalid_argument);
}

TEST_CASE("translating the transmitter translates every grid point exactly") {
    TrialRng rng(7);
    for (int rep = 0; rep < 50; ++rep) {
        TransmitterModel t = demo_rectangle();
        t.shape = TransmitterShape::rectangle(0.2 + rng.uniform(), 0.2 + rng.uniform());
        const auto base = virtual_point_grid(t, 4, 5);

        const WorldPoint shift{rng.uniform() * 2.0 - 1.0, rng.uniform() * 2.0 - 1.0,
                               rng.uniform()};
        TransmitterModel moved = t;
        moved.center = {t.center.x + shift.x, t.center.y + shift.y, t.center.z + shift.z};
        const auto shifted = virtual_point_grid(moved, 4, 5);

        REQUIRE(base.size() == shifted.size());
        for (std::size_t i = 0; i < base.size(); ++i) {
            CHECK(std::abs(shifted[i].x - (base[i].x + shift.x)) < 1e-12);
            CHECK(std::abs(shifted[i].y - (base[i].y + shift.y)) < 1e-12);
            CHECK(std::abs(shifted[i].z - (base[i].z + shift.z)) < 1e-12);
        }
    }
}

TEST_CASE("rectangle grid centroid coincides with the center") {
    TrialRng rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        TransmitterModel t = demo_rectangle();
        t.center = {rng.uniform() * 3.0, rng.uniform() * 3.0, 5.0};
        t.shape = TransmitterShape::rectangle(0.1 + rng.uniform(), 0.1 + rng.uniform());
        const int nx = 2 + static_cast<int>(rng.uniform() * 6);
        const int ny = 2 + static_cast<int>(rng.uniform() * 6);
        const auto pts = virtual_point_grid(t, nx, ny);

        double cx = 0.0, cy = 0.0;
        for (const auto& p : pts) {
            cx += p.x;
            cy += p.y;
        }
        cx /= static_cast<double>(pts.size());
        cy /= static_cast<double>(pts.size());
        CHECK(std::abs(cx - t.center.x) < 1e-12);
        CHECK(std::abs(cy - t.center.y) < 1e-12);
    }
}

TEST_CASE("default anchors of the demo rectangle are the documented corners") {
    const FeatureSet fs = default_features(demo_rectangle());
    REQUIRE(fs.points.size() == 4);
    CHECK(fs.points[0].label == "A");
    CHECK(fs.points[0].point.x == 1.0);
    CHECK(fs.points[0].point.y == 1.0);
    CHECK(fs.points[1].label == "B");
    CHECK(fs.points[1].point.x == 2.0);
    CHECK(fs.points[1].point.y == 1.0);
    CHECK(fs.points[2].label == "C");
    CHECK(fs.points[2].point.x == 1.0);
    CHECK(fs.points[2].point.y == 2.0);
    CHECK(fs.points[3].label == "E");
    CHECK(fs.points[3].point.x == 1.5);
    CHECK(fs.points[3].point.y == 1.5);
    for (const auto& f : fs.points) {
        CHECK(f.point.z == 5.0);
    }
}

TEST_CASE("default anchors of a unit circle sit on the rim") {
    TransmitterModel t;
    t.id = "disk";
    t.center = {0.0, 0.0, 3.0};
    t.shape = TransmitterShape::circle(1.0);
    const FeatureSet fs = default_features(t);
    REQUIRE(fs.points.size() == 4);
    for (const auto& f : fs.points) {
        CHECK(f.point.z == 3.0);
    }
    for (int i = 0; i < 3; ++i) {
        CHECK(distance_xy(fs.points[i].point, t.center) == doctest::Approx(0.5).epsilon(1e-12));
    }
    CHECK(fs.points[3].label == "E");
}

TEST_CASE("default anchors satisfy the anchor-set invariants for random transmitters") {
    TrialRng rng(23);
    for (int rep = 0; rep < 100; ++rep) {
        TransmitterModel t;
        t.id = "t";
        t.center = {rng.uniform() * 4.0, rng.uniform() * 4.0, 2.0 + rng.uniform() * 4.0};
        if (rep % 2 == 0) {
            t.shape = TransmitterShape::rectangle(0.05 + rng.uniform(), 0.05 + rng.uniform());
        } else {
            t.shape = TransmitterShape::circle(0.05 + rng.uniform());
        }
        CHECK_NOTHROW(default_features(t).validate());
    }
}

TEST_CASE("anchor-set validation rejects the documented degeneracies") {
    FeatureSet fs;
    fs.points = {{"A", {0, 0, 5}}, {"B", {1, 0, 5}}};
    CHECK_THROWS_AS(fs.validate(), InputError);  // too few

    fs.points = {{"A", {0, 0, 5}}, {"B", {1, 0, 5}}, {"C", {2, 0, 5}}};
    CHECK_THROWS_AS(fs.validate(), InputError);  // collinear

    fs.points = {{"A", {0, 0, 5}}, {"B", {0, 0, 5}}, {"C", {1, 1, 5}}};
    CHECK_THROWS_AS(fs.validate(), InputError);  // duplicate point

    fs.points = {{"A", {0, 0, 5}}, {"B", {1, 0, 5}}, {"C", {0, 1, 4}}};
    CHECK_THROWS_AS(fs.validate(), InputError);  // off-plane

    fs.points = {{"A", {0, 0, 5}}, {"B", {1, 0, 5}}, {"C", {0, 1, 5}}};
    CHECK_NOTHROW(fs.validate());
}

TEST_CASE("room and transmitter validation") {
    RoomConfig room{3.0, 3.0, 5.0};
    CHECK_NOTHROW(room.validate());
    CHECK_THROWS_AS((RoomConfig{0.0, 3.0, 5.0}.validate()), InputError);

    TransmitterModel t = demo_rectangle();
    CHECK_NOTHROW(t.validate_in_room(room));

    t.center.z = 4.0;  // below the ceiling
    CHECK_THROWS_AS(t.validate_in_room(room), InputError);

    t = demo_rectangle();
    t.center.x = 0.2;  // footprint pokes past the wall
    CHECK_THROWS_AS(t.validate_in_room(room), InputError);

    t = demo_rectangle();
    t.shape = TransmitterShape::rectangle(-1.0, 1.0);
    CHECK_THROWS_AS(t.validate(), InputError);

    t.shape = TransmitterShape::circle(0.0);
    CHECK_THROWS_AS(t.validate(), InputError);
}
