#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rispath/errors.hpp"
#include "rispath/geometry.hpp"
#include "rispath/presets.hpp"
#include "rispath/ris.hpp"
#include "rispath/units.hpp"

using namespace rispath;

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

TEST_CASE("cell centers on the signed grid") {
  const RisConfig tiny = make_ris_config(2, 2, 0.01, 0.01, 0.9, 3.0, 10.5e9, 0.0286);
  Point3 p = cell_center(tiny, {1, 1});
  CHECK(p.x == doctest::Approx(0.005).epsilon(1e-15));
  CHECK(p.y == doctest::Approx(0.005).epsilon(1e-15));
  CHECK(p.z == 0.0);

  p = cell_center(tiny, {0, 0});
  CHECK(p.x == doctest::Approx(-0.005).epsilon(1e-15));
  CHECK(p.y == doctest::Approx(-0.005).epsilon(1e-15));

  const RisConfig ris1 = ris_preset("large-ris1");
  p = cell_center(ris1, {50, 51});
  CHECK(p.x == doctest::Approx(0.505).epsilon(1e-15));
  CHECK(p.y == doctest::Approx(0.495).epsilon(1e-15));

  CHECK_THROWS_AS(cell_center(ris1, {51, 0}), ValidationError);
  CHECK_THROWS_AS(cell_center(ris1, {0, 52}), ValidationError);
  CHECK_THROWS_AS(cell_center(tiny, {2, 1}), ValidationError);
}

TEST_CASE("placement to point") {
  Point3 p = placement_to_point({1.0, 0.0, 0.0});
  CHECK(p.x == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(p.z == doctest::Approx(1.0).epsilon(1e-15));

  p = placement_to_point({1.0, kPi / 2.0, 0.0});
  CHECK(p.x == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.z == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));

  p = placement_to_point({2.0, kPi / 4.0, kPi});
  CHECK(p.x == doctest::Approx(-kSqrt2).epsilon(1e-14));
  CHECK(p.y == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(p.z == doctest::Approx(kSqrt2).epsilon(1e-14));
}

TEST_CASE("placement round trip is the identity") {
  std::mt19937 rng(91);
  std::uniform_real_distribution<double> ud(0.1, 100.0);
  std::uniform_real_distribution<double> ut(1e-6, kPi / 2.0);
  std::uniform_real_distribution<double> up(0.0, kTwoPi);
  for (int i = 0; i < 500; ++i) {
    const SphericalPlacement in{ud(rng), ut(rng), up(rng)};
    const SphericalPlacement out = point_to_placement(placement_to_point(in));
    CHECK(out.distance_m == doctest::Approx(in.distance_m).epsilon(1e-12));
    CHECK(out.theta_rad == doctest::Approx(in.theta_rad).epsilon(1e-12));
    CHECK(out.phi_rad == doctest::Approx(in.phi_rad).epsilon(1e-12));
  }
}

TEST_CASE("cell distances") {
  CHECK(cell_distance({0, 0, 1}, {0, 0, 0}) == 1.0);
  CHECK(cell_distance({3, 4, 0}, {0, 0, 0}) == 5.0);
  CHECK(cell_distance({3, 4, 0}, {0, 0, 0}) == cell_distance({0, 0, 0}, {3, 4, 0}));

  const RisConfig ris1 = ris_preset("large-ris1");
  const Point3 tx = placement_to_point({100.0, kPi / 4.0, kPi});
  const Point3 cell = cell_center(ris1, {50, 51});
  const double diag = std::hypot(ris1.cols_m * ris1.dx_m, ris1.rows_n * ris1.dy_m);
  const double r = cell_distance(tx, cell);
  CHECK(r > 100.0 - diag);
  CHECK(r < 100.0 + diag);
  // direct evaluation of the distance expression
  const double rd = std::sqrt((tx.x - 0.505) * (tx.x - 0.505) + (tx.y - 0.495) * (tx.y - 0.495) +
                              tx.z * tx.z);
  CHECK(r == doctest::Approx(rd).epsilon(1e-15));
}

TEST_CASE("triangle inequality on random triples") {
  std::mt19937 rng(92);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 300; ++i) {
    const Point3 a{u(rng), u(rng), u(rng)};
    const Point3 b{u(rng), u(rng), u(rng)};
    const Point3 c{u(rng), u(rng), u(rng)};
    CHECK(cell_distance(a, c) <= cell_distance(a, b) + cell_distance(b, c) + 1e-12);
  }
}

TEST_CASE("far placements match the linearized distance expansion") {
  const RisConfig ris1 = ris_preset("large-ris1");
  const double diag = std::hypot(ris1.cols_m * ris1.dx_m, ris1.rows_n * ris1.dy_m);
  const double d = 1e4 * diag;
  const double theta = kPi / 4.0;
  const double phi = kPi / 3.0;
  const Point3 t = placement_to_point({d, theta, phi});
  for (const CellIndex idx : {CellIndex{50, 51}, CellIndex{-49, -50}, CellIndex{50, -50}}) {
    const Point3 cell = cell_center(ris1, idx);
    const double linear = d - std::sin(theta) * std::cos(phi) * cell.x -
                          std::sin(theta) * std::sin(phi) * cell.y;
    CHECK(std::abs(cell_distance(t, cell) - linear) <= d * 1e-6);
  }
}

TEST_CASE("cell to terminal angles") {
  ElevationAzimuth a = cell_to_terminal_angles({0, 0, 0}, {0, 0, 5});
  CHECK(a.theta_rad == 0.0);
  CHECK(a.phi_rad == 0.0);  // azimuth convention on the normal

  a = cell_to_terminal_angles({0, 0, 0}, {1, 0, 1});
  CHECK(a.theta_rad == doctest::Approx(kPi / 4.0).epsilon(1e-14));
  CHECK(a.phi_rad == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

  // independent vector computation
  const Point3 cell{0.005, 0.005, 0.0};
  const Point3 t = placement_to_point({2.0, kPi / 4.0, kPi});
  const double dx = t.x - cell.x;
  const double dy = t.y - cell.y;
  const double r = std::sqrt(dx * dx + dy * dy + t.z * t.z);
  a = cell_to_terminal_angles(cell, t);
  CHECK(a.theta_rad == doctest::Approx(std::atan2(std::hypot(dx, dy), t.z)).epsilon(1e-12));
  double phi_expected = std::atan2(dy, dx);
  if (phi_expected < 0.0) phi_expected += kTwoPi;
  CHECK(a.phi_rad == doctest::Approx(phi_expected).epsilon(1e-12));

  CHECK_THROWS_AS(cell_to_terminal_angles({1, 2, 3}, {1, 2, 3}), ValidationError);
}

TEST_CASE("off-boresight angle") {
  const Point3 antenna{0, 0, 1};
  const Point3 target{0.2, -0.1, 0};
  CHECK(antenna_offboresight_angle(antenna, target, target) == 0.0);

  // dot-product oracle
  CHECK(antenna_offboresight_angle({0, 0, 1}, {0, 0, 0}, {1, 0, 0}) ==
        doctest::Approx(kPi / 4.0).epsilon(1e-14));

  // collinear along +z
  CHECK(antenna_offboresight_angle({0, 0, 3}, {0, 0, 1}, {0, 0, 0.5}) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(antenna_offboresight_angle(antenna, antenna, target), ValidationError);
  CHECK_THROWS_AS(antenna_offboresight_angle(antenna, target, antenna), ValidationError);
}

TEST_CASE("mirror image") {
  Point3 p = mirror_image({0, 0, 1});
  CHECK(p.z == -1.0);
  p = mirror_image({-1.414, 0, 1.414});
  CHECK(p.x == -1.414);
  CHECK(p.z == -1.414);

  std::mt19937 rng(93);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const Point3 q{u(rng), u(rng), std::abs(u(rng)) + 0.1};
    const Point3 back = mirror_image(mirror_image(q));
    CHECK(back.x == q.x);
    CHECK(back.y == q.y);
    CHECK(back.z == q.z);
    const Point3 plane_pt{u(rng), u(rng), 0.0};
    CHECK(cell_distance(q, plane_pt) ==
          doctest::Approx(cell_distance(mirror_image(q), plane_pt)).epsilon(1e-15));
  }
}

TEST_CASE("virtual transmitter placement") {
  Point3 p = virtual_transmitter(1.0, 0.0, 0.0);
  CHECK(p.x == doctest::Approx(0.0).scale(1.0));
  CHECK(p.z == doctest::Approx(1.0));

  p = virtual_transmitter(2.0, kPi / 4.0, kPi / 4.0);
  CHECK(p.x == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(p.y == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(p.z == doctest::Approx(kSqrt2).epsilon(1e-14));

  p = virtual_transmitter(1.0, kPi / 2.0, 0.0);
  CHECK(p.x == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(p.z == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(virtual_transmitter(0.0, 0.0, 0.0), ValidationError);
}
