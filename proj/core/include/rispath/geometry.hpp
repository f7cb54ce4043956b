#pragma once

// Cartesian/spherical placement of terminals and unit cells. The surface lies
// in the x-y plane with its geometric center at the origin; +z is the
// reflecting side.

#include <cmath>

namespace rispath {

struct RisConfig;  // ris.hpp

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Point3 operator-(const Point3& a, const Point3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

inline double dot(const Point3& a, const Point3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double norm(const Point3& a) { return std::sqrt(dot(a, a)); }

/// Terminal placement relative to the surface center: distance d > 0,
/// elevation theta in [0, pi/2] measured from the surface normal, azimuth
/// phi in [0, 2*pi).
struct SphericalPlacement {
  double distance_m = 1.0;
  double theta_rad = 0.0;
  double phi_rad = 0.0;
};

/// Signed unit-cell index: row n in [1-N/2, N/2], column m in [1-M/2, M/2].
struct CellIndex {
  int n = 1;
  int m = 1;
};

struct ElevationAzimuth {
  double theta_rad = 0.0;
  double phi_rad = 0.0;
};

/// Center of cell (n, m): ((m-1/2)*dx, (n-1/2)*dy, 0). Throws if the index
/// is outside the grid.
Point3 cell_center(const RisConfig& cfg, CellIndex idx);

Point3 placement_to_point(const SphericalPlacement& p);

/// Inverse of placement_to_point. phi of an on-axis point is reported as 0.
SphericalPlacement point_to_placement(const Point3& p);

double cell_distance(const Point3& terminal, const Point3& cell);

/// Elevation (from the +z surface normal) and azimuth of the direction from
/// `cell` to `terminal`. Azimuth is atan2(dy, dx) wrapped to [0, 2*pi); it is
/// 0 by convention when the direction is along the normal. Throws when the
/// points coincide.
ElevationAzimuth cell_to_terminal_angles(const Point3& cell, const Point3& terminal);

/// Angle at `antenna_pos` between the boresight ray (towards
/// `boresight_target`) and the ray towards `cell`, in [0, pi].
double antenna_offboresight_angle(const Point3& antenna_pos, const Point3& boresight_target,
                                  const Point3& cell);

/// Cosine of antenna_offboresight_angle; the form used by the field kernels.
double cos_offboresight(const Point3& antenna_pos, const Point3& boresight_target,
                        const Point3& cell);

/// Reflection of a point through the surface plane z = 0.
Point3 mirror_image(const Point3& p);

/// Source position that would specularly broadcast towards (theta_des,
/// phi_des) from distance d1: (-d1 sin(t)cos(p), -d1 sin(t)sin(p), d1 cos(t)).
Point3 virtual_transmitter(double d1, double theta_des, double phi_des);

}  // namespace rispath
