#include "rispath/pathloss.hpp"

#include <cmath>
#include <limits>

#include "rispath/errors.hpp"
#include "rispath/units.hpp"

namespace rispath {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::kGeneral: return "general";
    case Regime::kFarField: return "far_field";
    case Regime::kNearFieldBeam: return "near_field_beam";
    case Regime::kNearFieldBroadcast: return "near_field_broadcast";
  }
  return "general";
}

std::optional<Regime> regime_from_name(const std::string& name) {
  if (name == "general") return Regime::kGeneral;
  if (name == "far_field") return Regime::kFarField;
  if (name == "near_field_beam") return Regime::kNearFieldBeam;
  if (name == "near_field_broadcast") return Regime::kNearFieldBroadcast;
  return {};
}

void LinkGeometry::validate() const {
  if (!(tx.distance_m > 0.0) || !(rx.distance_m > 0.0)) {
    throw ValidationError("terminal distances must be positive");
  }
  if (!(tx.theta_rad >= 0.0 && tx.theta_rad < kPi / 2.0) ||
      !(rx.theta_rad >= 0.0 && rx.theta_rad < kPi / 2.0)) {
    throw ValidationError("both terminals must be strictly on the reflecting side");
  }
}

LinkGeometry make_link(const SphericalPlacement& tx, const SphericalPlacement& rx,
                       const AntennaSpec& tx_antenna, const AntennaSpec& rx_antenna) {
  LinkGeometry link;
  link.tx = tx;
  link.rx = rx;
  link.tx_antenna = tx_antenna;
  link.rx_antenna = rx_antenna;
  link.tx_antenna.position = placement_to_point(tx);
  link.rx_antenna.position = placement_to_point(rx);
  link.validate();
  return link;
}

namespace {

double power_prefactor(const RisConfig& cfg, const LinkGeometry& link, double transmit_power_w) {
  return transmit_power_w * link.tx_antenna.gain * link.rx_antenna.gain * cfg.cell_gain *
         cfg.dx_m * cfg.dy_m * cfg.wavelength_m * cfg.wavelength_m /
         (64.0 * kPi * kPi * kPi);
}

PowerResult make_result(double pr_w, double transmit_power_w, Regime regime,
                        bool in_coverage = true) {
  PowerResult out;
  out.received_power_w = pr_w;
  out.path_loss = pr_w > 0.0 ? transmit_power_w / pr_w : std::numeric_limits<double>::infinity();
  out.regime = regime;
  out.in_coverage = in_coverage;
  return out;
}

// Coherent field sum of the general formula, n outer ascending, m inner
// ascending. Empty `amplitudes` means the uniform cfg.amplitude.
std::complex<double> field_sum(const RisConfig& cfg, const PhaseProfile& profile,
                               std::span<const double> amplitudes, const LinkGeometry& link) {
  if (!profile.dims_match(cfg)) {
    throw ValidationError("phase profile dimensions do not match the surface grid");
  }
  if (!amplitudes.empty() &&
      amplitudes.size() != static_cast<size_t>(cfg.rows_n) * cfg.cols_m) {
    throw ValidationError("per-cell amplitude matrix dimensions do not match the surface grid");
  }
  link.validate();

  const Point3 txp = link.tx_antenna.position;
  const Point3 rxp = link.rx_antenna.position;
  const double k = kTwoPi / cfg.wavelength_m;

  std::complex<double> acc{0.0, 0.0};
  size_t flat = 0;
  for (int i = 0; i < cfg.rows_n; ++i) {
    const double cy = (cfg.n_min() + i - 0.5) * cfg.dy_m;
    for (int j = 0; j < cfg.cols_m; ++j, ++flat) {
      const double cx = (cfg.m_min() + j - 0.5) * cfg.dx_m;
      const Point3 cell{cx, cy, 0.0};
      const double rt = cell_distance(txp, cell);
      const double rr = cell_distance(rxp, cell);
      const double f = combined_pattern_factor(link.tx_antenna, link.rx_antenna,
                                               cfg.cell_pattern, cell);
      if (f == 0.0) continue;
      const double a = amplitudes.empty() ? cfg.amplitude : amplitudes[flat];
      const double amp = a * std::sqrt(f) / (rt * rr);
      const double phase = profile.at(i, j) - k * (rt + rr);
      acc += std::polar(amp, phase);
    }
  }
  return acc;
}

// sin(count*x)/sin(x) for even count, with the removable singularities at
// x = k*pi evaluated through the series-patched sinc.
double diric_even(int count, double x) {
  const double kf = std::nearbyint(x / kPi);
  const double e = x - kf * kPi;
  const double sign = std::fmod(kf, 2.0) == 0.0 ? 1.0 : -1.0;
  return sign * count * sinc_unnormalized(count * e) / sinc_unnormalized(e);
}

}  // namespace

PowerResult received_power_general(const RisConfig& cfg, const PhaseProfile& profile,
                                   const LinkGeometry& link, double transmit_power_w) {
  return received_power_general(cfg, profile, {}, link, transmit_power_w);
}

PowerResult received_power_general(const RisConfig& cfg, const PhaseProfile& profile,
                                   std::span<const double> cell_amplitudes,
                                   const LinkGeometry& link, double transmit_power_w) {
  const std::complex<double> s = field_sum(cfg, profile, cell_amplitudes, link);
  const double pr = power_prefactor(cfg, link, transmit_power_w) * std::norm(s);
  return make_result(pr, transmit_power_w, Regime::kGeneral);
}

double array_factor(const RisConfig& cfg, double theta_t, double phi_t, double theta_r,
                    double phi_r, double delta1, double delta2) {
  const double k = kTwoPi / cfg.wavelength_m;
  const double u = k * (std::sin(theta_t) * std::cos(phi_t) +
                        std::sin(theta_r) * std::cos(phi_r) + delta1) * cfg.dx_m;
  const double v = k * (std::sin(theta_t) * std::sin(phi_t) +
                        std::sin(theta_r) * std::sin(phi_r) + delta2) * cfg.dy_m;
  return diric_even(cfg.cols_m, u / 2.0) * diric_even(cfg.rows_n, v / 2.0);
}

PowerResult received_power_farfield(const RisConfig& cfg, const LinkGeometry& link, double delta1,
                                    double delta2, double transmit_power_w) {
  link.validate();
  const double beta = array_factor(cfg, link.tx.theta_rad, link.tx.phi_rad, link.rx.theta_rad,
                                   link.rx.phi_rad, delta1, delta2);
  const double f_t = cfg.cell_pattern.value_from_cos(std::cos(link.tx.theta_rad));
  const double f_r = cfg.cell_pattern.value_from_cos(std::cos(link.rx.theta_rad));
  const double d1 = link.tx.distance_m;
  const double d2 = link.rx.distance_m;
  const double pr = power_prefactor(cfg, link, transmit_power_w) * f_t * f_r *
                    cfg.amplitude * cfg.amplitude * beta * beta / (d1 * d1 * d2 * d2);
  return make_result(pr, transmit_power_w, Regime::kFarField);
}

void farfield_steering_deltas(double theta_t, double phi_t, double theta_des, double phi_des,
                              double& delta1, double& delta2) {
  delta1 = -std::sin(theta_t) * std::cos(phi_t) - std::sin(theta_des) * std::cos(phi_des);
  delta2 = -std::sin(theta_t) * std::sin(phi_t) - std::sin(theta_des) * std::sin(phi_des);
}

double pathloss_farfield_beam(const RisConfig& cfg, const LinkGeometry& link) {
  link.validate();
  const double f_t = cfg.cell_pattern.value_from_cos(std::cos(link.tx.theta_rad));
  const double f_r = cfg.cell_pattern.value_from_cos(std::cos(link.rx.theta_rad));
  const double mn = static_cast<double>(cfg.cols_m) * cfg.rows_n;
  const double d1d2 = link.tx.distance_m * link.rx.distance_m;
  return 64.0 * kPi * kPi * kPi * d1d2 * d1d2 /
         (link.tx_antenna.gain * link.rx_antenna.gain * cfg.cell_gain * mn * mn * cfg.dx_m *
          cfg.dy_m * cfg.wavelength_m * cfg.wavelength_m * f_t * f_r * cfg.amplitude *
          cfg.amplitude);
}

PowerResult received_power_nearfield_beam(const RisConfig& cfg, const PhaseProfile& profile,
                                          const LinkGeometry& link, double transmit_power_w) {
  const std::complex<double> s = field_sum(cfg, profile, {}, link);
  const double pr = power_prefactor(cfg, link, transmit_power_w) * std::norm(s);
  return make_result(pr, transmit_power_w, Regime::kNearFieldBeam);
}

PowerResult received_power_nearfield_beam_max(const RisConfig& cfg, const LinkGeometry& link,
                                              double transmit_power_w) {
  link.validate();
  const Point3 txp = link.tx_antenna.position;
  const Point3 rxp = link.rx_antenna.position;
  double sum = 0.0;
  for (int i = 0; i < cfg.rows_n; ++i) {
    const double cy = (cfg.n_min() + i - 0.5) * cfg.dy_m;
    for (int j = 0; j < cfg.cols_m; ++j) {
      const double cx = (cfg.m_min() + j - 0.5) * cfg.dx_m;
      const Point3 cell{cx, cy, 0.0};
      const double f = combined_pattern_factor(link.tx_antenna, link.rx_antenna,
                                               cfg.cell_pattern, cell);
      sum += std::sqrt(f) / (cell_distance(txp, cell) * cell_distance(rxp, cell));
    }
  }
  const double pr = power_prefactor(cfg, link, transmit_power_w) * cfg.amplitude *
                    cfg.amplitude * sum * sum;
  return make_result(pr, transmit_power_w, Regime::kNearFieldBeam);
}

double pathloss_nearfield_beam(const RisConfig& cfg, const PhaseProfile& profile,
                               const LinkGeometry& link) {
  return received_power_nearfield_beam(cfg, profile, link, 1.0).path_loss;
}

double pathloss_nearfield_beam_optimal(const RisConfig& cfg, const LinkGeometry& link) {
  return received_power_nearfield_beam_max(cfg, link, 1.0).path_loss;
}

bool broadcast_coverage_test(const RisConfig& cfg, const Point3& origin,
                             const AntennaSpec& tx_antenna, double theta_r, double phi_r) {
  if (!(origin.z > 0.0)) throw ValidationError("broadcast origin must be on the reflecting side");
  const Point3 mirror = mirror_image(origin);
  const double st = std::sin(theta_r);
  const Point3 dir{st * std::cos(phi_r), st * std::sin(phi_r), std::cos(theta_r)};
  if (!(dir.z > 0.0)) return false;  // grazing or below the surface plane

  // Solid-angle membership: the ray through the surface rectangle.
  const double t = -mirror.z / dir.z;
  const double px = mirror.x + t * dir.x;
  const double py = mirror.y + t * dir.y;
  const bool through_surface = std::abs(px) <= cfg.cols_m * cfg.dx_m / 2.0 &&
                               std::abs(py) <= cfg.rows_n * cfg.dy_m / 2.0;
  if (!through_surface) return false;

  // Main-lobe membership: direction within the mirrored antenna boresight cone.
  const Point3 bore = mirror_image(tx_antenna.boresight_target) - mirror;
  const double nb = norm(bore);
  if (nb == 0.0) throw ValidationError("broadcast origin coincides with its boresight target");
  const double cang = std::clamp(dot(bore, dir) / nb, -1.0, 1.0);
  return std::acos(cang) <= tx_antenna.effective_mainlobe_halfwidth();
}

PowerResult received_power_nearfield_broadcast(const RisConfig& cfg, const LinkGeometry& link,
                                               double transmit_power_w,
                                               std::optional<Point3> broadcast_origin) {
  link.validate();
  const Point3 origin = broadcast_origin.value_or(link.tx_antenna.position);
  const bool covered =
      broadcast_coverage_test(cfg, origin, link.tx_antenna, link.rx.theta_rad, link.rx.phi_rad);
  double pr = 0.0;
  if (covered) {
    const double d12 = link.tx.distance_m + link.rx.distance_m;
    pr = transmit_power_w * link.tx_antenna.gain * link.rx_antenna.gain * cfg.wavelength_m *
         cfg.wavelength_m * cfg.amplitude * cfg.amplitude / (16.0 * kPi * kPi * d12 * d12);
  }
  return make_result(pr, transmit_power_w, Regime::kNearFieldBroadcast, covered);
}

double pathloss_nearfield_broadcast(const RisConfig& cfg, const LinkGeometry& link) {
  link.validate();
  const double d12 = link.tx.distance_m + link.rx.distance_m;
  return 16.0 * kPi * kPi * d12 * d12 /
         (link.tx_antenna.gain * link.rx_antenna.gain * cfg.wavelength_m * cfg.wavelength_m *
          cfg.amplitude * cfg.amplitude);
}

FieldRegionReport field_region(const RisConfig& cfg, const LinkGeometry& link) {
  link.validate();
  FieldRegionReport out;
  const double mn = static_cast<double>(cfg.cols_m) * cfg.rows_n;
  out.classic_boundary_m = 2.0 * mn * cfg.dx_m * cfg.dy_m / cfg.wavelength_m;
  const double f_t = cfg.cell_pattern.value_from_cos(std::cos(link.tx.theta_rad));
  const double f_r = cfg.cell_pattern.value_from_cos(std::cos(link.rx.theta_rad));
  out.redefined_boundary_m = mn * std::sqrt(cfg.cell_gain * cfg.dx_m * cfg.dy_m * f_t * f_r /
                                            (4.0 * kPi));
  out.lower_bound_m = 5.0 * cfg.wavelength_m;
  out.tx_region = link.tx.distance_m < out.redefined_boundary_m ? FieldRegion::kNear
                                                                : FieldRegion::kFar;
  out.rx_region = link.rx.distance_m < out.redefined_boundary_m ? FieldRegion::kNear
                                                                : FieldRegion::kFar;

  const Point3 txp = link.tx_antenna.position;
  const Point3 rxp = link.rx_antenna.position;
  double min_r = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.rows_n; ++i) {
    const double cy = (cfg.n_min() + i - 0.5) * cfg.dy_m;
    for (int j = 0; j < cfg.cols_m; ++j) {
      const double cx = (cfg.m_min() + j - 0.5) * cfg.dx_m;
      const Point3 cell{cx, cy, 0.0};
      min_r = std::min({min_r, cell_distance(txp, cell), cell_distance(rxp, cell)});
    }
  }
  out.below_lower_bound = min_r < out.lower_bound_m;
  return out;
}

std::vector<CellDiagnostic> per_cell_diagnostics(const RisConfig& cfg,
                                                 const PhaseProfile& profile,
                                                 const LinkGeometry& link,
                                                 double transmit_power_w) {
  if (!profile.dims_match(cfg)) {
    throw ValidationError("phase profile dimensions do not match the surface grid");
  }
  link.validate();
  const Point3 txp = link.tx_antenna.position;
  const Point3 rxp = link.rx_antenna.position;
  const double k = kTwoPi / cfg.wavelength_m;

  std::vector<CellDiagnostic> out;
  out.reserve(static_cast<size_t>(cfg.cell_count()));
  for (int i = 0; i < cfg.rows_n; ++i) {
    const int n = cfg.n_min() + i;
    const double cy = (n - 0.5) * cfg.dy_m;
    for (int j = 0; j < cfg.cols_m; ++j) {
      const int m = cfg.m_min() + j;
      const double cx = (m - 0.5) * cfg.dx_m;
      const Point3 cell{cx, cy, 0.0};
      const double rt = cell_distance(txp, cell);
      const double rr = cell_distance(rxp, cell);

      CellDiagnostic d;
      d.index = {n, m};
      const double f_tx = link.tx_antenna.pattern.value_from_cos(
          cos_offboresight(txp, link.tx_antenna.boresight_target, cell));
      const double f_t = cfg.cell_pattern.value_from_cos(txp.z / rt);
      d.incident_power_w = link.tx_antenna.gain * transmit_power_w * f_tx * f_t * cfg.dx_m *
                           cfg.dy_m / (4.0 * kPi * rt * rt);
      const double f =
          combined_pattern_factor(link.tx_antenna, link.rx_antenna, cfg.cell_pattern, cell);
      d.field_contribution =
          std::polar(cfg.amplitude * std::sqrt(f) / (rt * rr), profile.at(i, j) - k * (rt + rr));
      out.push_back(d);
    }
  }
  return out;
}

}  // namespace rispath
