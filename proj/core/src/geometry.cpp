#include "rispath/geometry.hpp"

#include <algorithm>
#include <string>

#include "rispath/errors.hpp"
#include "rispath/ris.hpp"
#include "rispath/units.hpp"

namespace rispath {

Point3 cell_center(const RisConfig& cfg, CellIndex idx) {
  if (!cfg.contains(idx)) {
    throw ValidationError("cell index (" + std::to_string(idx.n) + ", " + std::to_string(idx.m) +
                          ") outside grid rows [" + std::to_string(cfg.n_min()) + ", " +
                          std::to_string(cfg.n_max()) + "], cols [" + std::to_string(cfg.m_min()) +
                          ", " + std::to_string(cfg.m_max()) + "]");
  }
  return {(idx.m - 0.5) * cfg.dx_m, (idx.n - 0.5) * cfg.dy_m, 0.0};
}

Point3 placement_to_point(const SphericalPlacement& p) {
  const double s = std::sin(p.theta_rad);
  return {p.distance_m * s * std::cos(p.phi_rad), p.distance_m * s * std::sin(p.phi_rad),
          p.distance_m * std::cos(p.theta_rad)};
}

SphericalPlacement point_to_placement(const Point3& p) {
  SphericalPlacement out;
  out.distance_m = norm(p);
  if (out.distance_m <= 0.0) throw ValidationError("cannot place a point at the surface center");
  out.theta_rad = std::acos(std::clamp(p.z / out.distance_m, -1.0, 1.0));
  const double rho = std::hypot(p.x, p.y);
  out.phi_rad = rho == 0.0 ? 0.0 : wrap_two_pi(std::atan2(p.y, p.x));
  return out;
}

double cell_distance(const Point3& terminal, const Point3& cell) {
  return norm(terminal - cell);
}

ElevationAzimuth cell_to_terminal_angles(const Point3& cell, const Point3& terminal) {
  const Point3 d = terminal - cell;
  const double r = norm(d);
  if (r == 0.0) throw ValidationError("terminal coincides with the cell");
  ElevationAzimuth out;
  out.theta_rad = std::acos(std::clamp(d.z / r, -1.0, 1.0));
  const double rho = std::hypot(d.x, d.y);
  out.phi_rad = rho == 0.0 ? 0.0 : wrap_two_pi(std::atan2(d.y, d.x));
  return out;
}

double cos_offboresight(const Point3& antenna_pos, const Point3& boresight_target,
                        const Point3& cell) {
  const Point3 b = boresight_target - antenna_pos;
  const Point3 c = cell - antenna_pos;
  const double nb = norm(b);
  const double nc = norm(c);
  if (nb == 0.0 || nc == 0.0) {
    throw ValidationError("degenerate zero-length vector in off-boresight angle");
  }
  return std::clamp(dot(b, c) / (nb * nc), -1.0, 1.0);
}

double antenna_offboresight_angle(const Point3& antenna_pos, const Point3& boresight_target,
                                  const Point3& cell) {
  const Point3 b = boresight_target - antenna_pos;
  const Point3 c = cell - antenna_pos;
  if (norm(b) == 0.0 || norm(c) == 0.0) {
    throw ValidationError("degenerate zero-length vector in off-boresight angle");
  }
  // atan2 of the cross/dot pair stays accurate near 0 and pi
  const Point3 cross{b.y * c.z - b.z * c.y, b.z * c.x - b.x * c.z, b.x * c.y - b.y * c.x};
  return std::atan2(norm(cross), dot(b, c));
}

Point3 mirror_image(const Point3& p) { return {p.x, p.y, -p.z}; }

Point3 virtual_transmitter(double d1, double theta_des, double phi_des) {
  if (d1 <= 0.0) throw ValidationError("virtual transmitter distance must be positive");
  const double s = std::sin(theta_des);
  return {-d1 * s * std::cos(phi_des), -d1 * s * std::sin(phi_des), d1 * std::cos(theta_des)};
}

}  // namespace rispath
