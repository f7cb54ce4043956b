#pragma once

// The field model: coherent per-cell summation of the received field, the
// closed-form regime formulas, the array factor, and field-region
// classification.

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "rispath/geometry.hpp"
#include "rispath/radiation.hpp"
#include "rispath/ris.hpp"

namespace rispath {

enum class Regime { kGeneral, kFarField, kNearFieldBeam, kNearFieldBroadcast };

const char* regime_name(Regime r);
std::optional<Regime> regime_from_name(const std::string& name);

struct LinkGeometry {
  SphericalPlacement tx;
  SphericalPlacement rx;
  AntennaSpec tx_antenna;
  AntennaSpec rx_antenna;

  /// Throws unless both terminals are strictly on the reflecting side.
  void validate() const;
};

/// Positions both antennas at their placements, boresights on the surface
/// center.
LinkGeometry make_link(const SphericalPlacement& tx, const SphericalPlacement& rx,
                       const AntennaSpec& tx_antenna, const AntennaSpec& rx_antenna);

struct PowerResult {
  double received_power_w = 0.0;
  double path_loss = 0.0;  // linear Pt/Pr; +inf when no power is received
  Regime regime = Regime::kGeneral;
  bool in_coverage = true;  // meaningful for the broadcast regime
};

enum class FieldRegion { kNear, kFar };

struct FieldRegionReport {
  double classic_boundary_m = 0.0;    // 2 M N dx dy / lambda
  double redefined_boundary_m = 0.0;  // L_bound
  double lower_bound_m = 0.0;         // 5 lambda
  FieldRegion tx_region = FieldRegion::kFar;
  FieldRegion rx_region = FieldRegion::kFar;
  bool below_lower_bound = false;  // some cell closer than 5 lambda to a terminal
};

/// Coherent sum of per-cell contributions with a deterministic order (n outer
/// ascending, m inner ascending). Cell amplitude is cfg.amplitude unless a
/// per-cell row-major matrix is supplied.
PowerResult received_power_general(const RisConfig& cfg, const PhaseProfile& profile,
                                   const LinkGeometry& link, double transmit_power_w);
PowerResult received_power_general(const RisConfig& cfg, const PhaseProfile& profile,
                                   std::span<const double> cell_amplitudes,
                                   const LinkGeometry& link, double transmit_power_w);

/// Closed-form array factor: the geometric-progression sum of the per-cell
/// phase ramps. Signed; equals M*N when both ramps vanish.
double array_factor(const RisConfig& cfg, double theta_t, double phi_t, double theta_r,
                    double phi_r, double delta1, double delta2);

/// Far-field closed form with steering offsets (delta1, delta2); (0, 0) is
/// specular reflection.
PowerResult received_power_farfield(const RisConfig& cfg, const LinkGeometry& link, double delta1,
                                    double delta2, double transmit_power_w);

/// Steering offsets that maximize the far-field form towards (theta_des,
/// phi_des).
void farfield_steering_deltas(double theta_t, double phi_t, double theta_des, double phi_des,
                              double& delta1, double& delta2);

/// Far-field beamforming path loss at the maximizing phase design.
double pathloss_farfield_beam(const RisConfig& cfg, const LinkGeometry& link);

/// General sum with uniform amplitude and the given phases; the near-field
/// beamforming regime label.
PowerResult received_power_nearfield_beam(const RisConfig& cfg, const PhaseProfile& profile,
                                          const LinkGeometry& link, double transmit_power_w);

/// Analytic maximum of the near-field beamforming power: every summand made
/// real positive by the focusing codebook.
PowerResult received_power_nearfield_beam_max(const RisConfig& cfg, const LinkGeometry& link,
                                              double transmit_power_w);

/// Pt / received_power_nearfield_beam for the given profile.
double pathloss_nearfield_beam(const RisConfig& cfg, const PhaseProfile& profile,
                               const LinkGeometry& link);

/// Closed-form path loss at the focusing maximum.
double pathloss_nearfield_beam_optimal(const RisConfig& cfg, const LinkGeometry& link);

/// True iff the ray from the mirror image of `origin` towards (theta_r,
/// phi_r) crosses the surface rectangle and lies within the antenna main
/// lobe mirrored with it.
bool broadcast_coverage_test(const RisConfig& cfg, const Point3& origin,
                             const AntennaSpec& tx_antenna, double theta_r, double phi_r);

/// Mirror-image Friis leg over d1 + d2 inside the lit solid angle, zero
/// outside. `broadcast_origin` substitutes the virtual transmitter for
/// intelligent broadcasting; the real transmitter is used by default.
PowerResult received_power_nearfield_broadcast(const RisConfig& cfg, const LinkGeometry& link,
                                               double transmit_power_w,
                                               std::optional<Point3> broadcast_origin = {});

double pathloss_nearfield_broadcast(const RisConfig& cfg, const LinkGeometry& link);

/// Classic and redefined near/far boundaries plus the 5-lambda validity flag.
FieldRegionReport field_region(const RisConfig& cfg, const LinkGeometry& link);

/// Per-cell diagnostics: incident power and the complex field contribution
/// (up to the common impedance factor) of each unit cell.
struct CellDiagnostic {
  CellIndex index;
  double incident_power_w = 0.0;
  std::complex<double> field_contribution{};
};

std::vector<CellDiagnostic> per_cell_diagnostics(const RisConfig& cfg,
                                                 const PhaseProfile& profile,
                                                 const LinkGeometry& link,
                                                 double transmit_power_w);

}  // namespace rispath
