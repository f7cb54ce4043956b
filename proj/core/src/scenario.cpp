#include "rispath/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "rispath/errors.hpp"
#include "rispath/presets.hpp"
#include "rispath/units.hpp"

namespace rispath {

using nlohmann::json;

PhaseProfile build_profile(const RisConfig& cfg, const PhaseDesign& design,
                           const LinkGeometry& link) {
  switch (design.kind) {
    case PhaseDesignKind::kUniform:
      return uniform_profile(cfg, design.phi_rad);
    case PhaseDesignKind::kFarfield:
      return farfield_codebook(cfg, link.tx.theta_rad, link.tx.phi_rad, design.theta_des_rad,
                               design.phi_des_rad);
    case PhaseDesignKind::kNearfieldFocus:
      return nearfield_focus_codebook(cfg, placement_to_point(link.tx),
                                      placement_to_point(link.rx));
    case PhaseDesignKind::kNearfieldBroadcast:
      return nearfield_broadcast_codebook(cfg, placement_to_point(link.tx), link.tx.distance_m,
                                          design.theta_des_rad, design.phi_des_rad);
    case PhaseDesignKind::kTwoBeamStripe:
      return two_beam_stripe_profile(cfg);
  }
  throw ValidationError("unknown phase design");
}

void SweepSpec::validate() const {
  ris.validate();
  link.validate();
  if (!(transmit_power_w > 0.0)) throw ValidationError("transmit power must be positive");
  if (mode == SweepMode::kAngularHeatmap) {
    if (!(heatmap_resolution_deg > 0.0 && heatmap_resolution_deg <= 90.0)) {
      throw ValidationError("heatmap resolution must lie in (0, 90] degrees");
    }
  } else {
    if (!(step_m > 0.0)) throw ValidationError("sweep step must be positive");
    if (!(start_m < stop_m)) throw ValidationError("sweep start must be below stop");
    if (!(start_m > 0.0)) throw ValidationError("sweep distances must be positive");
  }
  if (regimes.empty()) throw ValidationError("at least one regime must be requested");
}

namespace {

LinkGeometry link_at(const LinkGeometry& tmpl, double d1, double d2) {
  SphericalPlacement tx = tmpl.tx;
  SphericalPlacement rx = tmpl.rx;
  tx.distance_m = d1;
  rx.distance_m = d2;
  return make_link(tx, rx, tmpl.tx_antenna, tmpl.rx_antenna);
}

PowerResult evaluate_regime(const SweepSpec& spec, const LinkGeometry& link, Regime regime) {
  switch (regime) {
    case Regime::kGeneral:
      return received_power_general(spec.ris, build_profile(spec.ris, spec.design, link), link,
                                    spec.transmit_power_w);
    case Regime::kFarField: {
      double delta1 = 0.0;
      double delta2 = 0.0;
      if (spec.design.kind == PhaseDesignKind::kFarfield) {
        farfield_steering_deltas(link.tx.theta_rad, link.tx.phi_rad, spec.design.theta_des_rad,
                                 spec.design.phi_des_rad, delta1, delta2);
      }
      return received_power_farfield(spec.ris, link, delta1, delta2, spec.transmit_power_w);
    }
    case Regime::kNearFieldBeam:
      return received_power_nearfield_beam(spec.ris,
                                           build_profile(spec.ris, spec.design, link), link,
                                           spec.transmit_power_w);
    case Regime::kNearFieldBroadcast: {
      std::optional<Point3> origin;
      if (spec.design.kind == PhaseDesignKind::kNearfieldBroadcast) {
        origin = virtual_transmitter(link.tx.distance_m, spec.design.theta_des_rad,
                                     spec.design.phi_des_rad);
      }
      return received_power_nearfield_broadcast(spec.ris, link, spec.transmit_power_w, origin);
    }
  }
  throw ValidationError("unknown regime");
}

}  // namespace

SweepGrid run_distance_sweep(const SweepSpec& spec) {
  spec.validate();
  if (spec.mode == SweepMode::kAngularHeatmap) {
    throw ValidationError("distance sweep requested with a heatmap spec");
  }

  std::vector<double> axis;
  for (double d = spec.start_m; d <= spec.stop_m + spec.step_m * 1e-9; d += spec.step_m) {
    axis.push_back(d);
  }

  SweepGrid grid;
  grid.rows.reserve(axis.size() * spec.regimes.size());
  for (const double d : axis) {
    const double d1 = spec.mode == SweepMode::kDistanceD1 ? d : spec.link.tx.distance_m;
    const double d2 = spec.mode == SweepMode::kDistanceD2 ? d : spec.link.rx.distance_m;
    for (const Regime regime : spec.regimes) {
      SweepRow row;
      row.d1_m = d1;
      row.d2_m = d2;
      row.theta_r_rad = spec.link.rx.theta_rad;
      row.phi_r_rad = spec.link.rx.phi_rad;
      row.regime = regime;
      row.transmit_power_w = spec.transmit_power_w;
      try {
        row.result = evaluate_regime(spec, link_at(spec.link, d1, d2), regime);
      } catch (const ValidationError&) {
        // Flagged row: the point stays in the output with zero power.
        row.result = PowerResult{0.0, std::numeric_limits<double>::infinity(), regime, false};
      }
      grid.rows.push_back(row);
    }
  }
  return grid;
}

namespace {

// Transmit-side per-cell factors are direction-independent; cache them once
// per heatmap.
struct TxSideCache {
  std::vector<double> cx;
  std::vector<double> cy;
  std::vector<std::complex<double>> factor;  // A sqrt(Ftx*Ft) e^{j(phi - k rt)} / rt
};

TxSideCache build_tx_cache(const RisConfig& cfg, const PhaseProfile& profile,
                           const LinkGeometry& link) {
  TxSideCache cache;
  const size_t cells = static_cast<size_t>(cfg.cell_count());
  cache.cx.resize(cells);
  cache.cy.resize(cells);
  cache.factor.resize(cells);
  const Point3 txp = link.tx_antenna.position;
  const double k = kTwoPi / cfg.wavelength_m;
  size_t flat = 0;
  for (int i = 0; i < cfg.rows_n; ++i) {
    const double cy = (cfg.n_min() + i - 0.5) * cfg.dy_m;
    for (int j = 0; j < cfg.cols_m; ++j, ++flat) {
      const double cx = (cfg.m_min() + j - 0.5) * cfg.dx_m;
      const Point3 cell{cx, cy, 0.0};
      const double rt = cell_distance(txp, cell);
      const double f_tx = link.tx_antenna.pattern.value_from_cos(
          cos_offboresight(txp, link.tx_antenna.boresight_target, cell));
      const double f_t = cfg.cell_pattern.value_from_cos(txp.z / rt);
      cache.cx[flat] = cx;
      cache.cy[flat] = cy;
      cache.factor[flat] =
          std::polar(cfg.amplitude * std::sqrt(f_tx * f_t) / rt, profile.at(i, j) - k * rt);
    }
  }
  return cache;
}

double eval_direction(const RisConfig& cfg, const TxSideCache& cache, const AntennaSpec& rx_ant,
                      const Point3& rxp, double prefactor) {
  const double k = kTwoPi / cfg.wavelength_m;
  const Point3 bore = rx_ant.boresight_target - rxp;
  const double nb = norm(bore);
  std::complex<double> acc{0.0, 0.0};
  const size_t cells = cache.factor.size();
  for (size_t c = 0; c < cells; ++c) {
    const double dx = cache.cx[c] - rxp.x;
    const double dy = cache.cy[c] - rxp.y;
    const double rr = std::sqrt(dx * dx + dy * dy + rxp.z * rxp.z);
    const double f_r = cfg.cell_pattern.value_from_cos(rxp.z / rr);
    const double f_rx = rx_ant.pattern.value_from_cos(
        std::clamp((dx * bore.x + dy * bore.y - rxp.z * bore.z) / (rr * nb), -1.0, 1.0));
    const double w = f_r * f_rx;
    if (w == 0.0) continue;
    acc += cache.factor[c] * std::polar(std::sqrt(w) / rr, -k * rr);
  }
  return prefactor * std::norm(acc);
}

}  // namespace

SweepGrid run_angular_heatmap(const SweepSpec& spec) {
  spec.validate();
  if (spec.mode != SweepMode::kAngularHeatmap) {
    throw ValidationError("heatmap requested with a distance-sweep spec");
  }

  const PhaseProfile profile = build_profile(spec.ris, spec.design, spec.link);
  const TxSideCache cache = build_tx_cache(spec.ris, profile, spec.link);
  const double prefactor = spec.transmit_power_w * spec.link.tx_antenna.gain *
                           spec.link.rx_antenna.gain * spec.ris.cell_gain * spec.ris.dx_m *
                           spec.ris.dy_m * spec.ris.wavelength_m * spec.ris.wavelength_m /
                           (64.0 * kPi * kPi * kPi);

  const double res = spec.heatmap_resolution_deg;
  std::vector<double> thetas;
  for (double t = 0.0; t <= 90.0 + res * 1e-9; t += res) thetas.push_back(std::min(t, 90.0));
  std::vector<double> phis;
  for (double p = 0.0; p < 360.0 - res * 1e-9; p += res) phis.push_back(p);

  const size_t npoints = thetas.size() * phis.size();
  std::vector<double> power(npoints, 0.0);

  const double d2 = spec.link.rx.distance_m;
  auto worker = [&](size_t begin, size_t end) {
    for (size_t idx = begin; idx < end; ++idx) {
      const double th = deg_to_rad(thetas[idx / phis.size()]);
      const double ph = deg_to_rad(phis[idx % phis.size()]);
      const Point3 rxp = placement_to_point({d2, th, ph});
      if (!(rxp.z > 0.0)) continue;  // theta = 90 deg sits outside the model's validity
      AntennaSpec rx_ant = spec.link.rx_antenna;
      rx_ant.position = rxp;
      power[idx] = eval_direction(spec.ris, cache, rx_ant, rxp, prefactor);
    }
  };

  unsigned nthreads = std::max(1u, std::thread::hardware_concurrency());
  nthreads = static_cast<unsigned>(std::min<size_t>(nthreads, npoints));
  if (nthreads <= 1) {
    worker(0, npoints);
  } else {
    std::vector<std::thread> pool;
    const size_t chunk = (npoints + nthreads - 1) / nthreads;
    for (unsigned t = 0; t < nthreads; ++t) {
      const size_t begin = t * chunk;
      if (begin >= npoints) break;
      pool.emplace_back(worker, begin, std::min(npoints, begin + chunk));
    }
    for (auto& th : pool) th.join();
  }

  SweepGrid grid;
  grid.rows.reserve(npoints);
  size_t best = 0;
  for (size_t idx = 0; idx < npoints; ++idx) {
    SweepRow row;
    row.d1_m = spec.link.tx.distance_m;
    row.d2_m = d2;
    row.theta_r_rad = deg_to_rad(thetas[idx / phis.size()]);
    row.phi_r_rad = deg_to_rad(phis[idx % phis.size()]);
    row.regime = Regime::kGeneral;
    row.transmit_power_w = spec.transmit_power_w;
    row.result = PowerResult{
        power[idx],
        power[idx] > 0.0 ? spec.transmit_power_w / power[idx]
                         : std::numeric_limits<double>::infinity(),
        Regime::kGeneral, true};
    grid.rows.push_back(row);
    if (power[idx] > power[best]) best = idx;
  }
  grid.argmax = grid.rows[best];
  return grid;
}

ResidualReport compare_measurements(const std::vector<MeasurementRecord>& records,
                                    const SweepSpec& model, const CalibrationSpec& cal) {
  if (records.empty()) throw ValidationError("no measurement records supplied");
  if (model.regimes.size() != 1) {
    throw ValidationError("measurement comparison needs exactly one model regime");
  }
  if (!(cal.line_loss > 0.0)) throw ValidationError("line loss must be positive");

  ResidualReport report;
  report.outlier_threshold_db = cal.outlier_threshold_db;
  double sum = 0.0;
  for (const auto& rec : records) {
    if (!(rec.d1_m > 0.0) || !(rec.d2_m > 0.0) || !std::isfinite(rec.received_power_dbm)) {
      throw ValidationError("measurement record with non-physical values (tag '" + rec.tag +
                            "')");
    }
    const PowerResult r =
        evaluate_regime(model, link_at(model.link, rec.d1_m, rec.d2_m), model.regimes.front());
    ResidualRow row;
    row.record = rec;
    row.model_dbm = watts_to_dbm(r.received_power_w * cal.line_loss);
    row.residual_db = rec.received_power_dbm - row.model_dbm;
    row.outlier = !(std::abs(row.residual_db) <= cal.outlier_threshold_db);
    report.rows.push_back(row);
    sum += row.residual_db;
    report.max_abs_residual_db = std::max(report.max_abs_residual_db, std::abs(row.residual_db));
  }
  report.mean_residual_db = sum / static_cast<double>(report.rows.size());
  return report;
}

// --- CSV / JSON emission ---

namespace {

std::string fixed6(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string sci9(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9e", v);
  return buf;
}

void write_row(const SweepRow& row, std::ostream& os) {
  os << fixed6(row.d1_m) << ',' << fixed6(row.d2_m) << ','
     << fixed6(rad_to_deg(row.theta_r_rad)) << ',' << fixed6(rad_to_deg(row.phi_r_rad)) << ','
     << regime_name(row.regime) << ',' << fixed6(watts_to_dbm(row.result.received_power_w))
     << ',' << sci9(row.result.received_power_w) << ','
     << fixed6(linear_to_db(row.result.path_loss)) << ','
     << (row.result.in_coverage ? "true" : "false") << '\n';
}

constexpr const char* kSweepHeader =
    "d1_m,d2_m,theta_r_deg,phi_r_deg,regime,pr_dbm,pr_w,path_loss_db,in_coverage";

json row_to_json(const SweepRow& row) {
  const double dbm = watts_to_dbm(row.result.received_power_w);
  const double pl_db = linear_to_db(row.result.path_loss);
  json j;
  j["d1_m"] = row.d1_m;
  j["d2_m"] = row.d2_m;
  j["theta_r_deg"] = rad_to_deg(row.theta_r_rad);
  j["phi_r_deg"] = rad_to_deg(row.phi_r_rad);
  j["regime"] = regime_name(row.regime);
  j["pr_dbm"] = std::isfinite(dbm) ? json(dbm) : json();
  j["pr_w"] = row.result.received_power_w;
  j["path_loss_db"] = std::isfinite(pl_db) ? json(pl_db) : json();
  j["in_coverage"] = row.result.in_coverage;
  return j;
}

}  // namespace

void write_sweep_csv(const SweepGrid& grid, std::ostream& os) {
  os << kSweepHeader << '\n';
  for (const auto& row : grid.rows) write_row(row, os);
  if (!os) throw IoError("failed to write sweep output");
}

void write_heatmap_csv(const SweepGrid& grid, std::ostream& os) {
  write_sweep_csv(grid, os);
  if (grid.argmax) {
    const SweepRow& a = *grid.argmax;
    os << "# argmax theta_r_deg=" << fixed6(rad_to_deg(a.theta_r_rad))
       << " phi_r_deg=" << fixed6(rad_to_deg(a.phi_r_rad))
       << " pr_dbm=" << fixed6(watts_to_dbm(a.result.received_power_w))
       << " pr_w=" << sci9(a.result.received_power_w) << '\n';
  }
  if (!os) throw IoError("failed to write heatmap output");
}

void write_sweep_json(const SweepGrid& grid, std::ostream& os) {
  json j;
  j["rows"] = json::array();
  for (const auto& row : grid.rows) j["rows"].push_back(row_to_json(row));
  if (grid.argmax) j["argmax"] = row_to_json(*grid.argmax);
  os << j.dump(2) << '\n';
  if (!os) throw IoError("failed to write sweep output");
}

void write_residual_csv(const ResidualReport& report, std::ostream& os) {
  os << "d1_m,d2_m,tag,measured_dbm,model_dbm,residual_db,outlier\n";
  for (const auto& row : report.rows) {
    os << fixed6(row.record.d1_m) << ',' << fixed6(row.record.d2_m) << ',' << row.record.tag
       << ',' << fixed6(row.record.received_power_dbm) << ',' << fixed6(row.model_dbm) << ','
       << fixed6(row.residual_db) << ',' << (row.outlier ? "true" : "false") << '\n';
  }
  os << "# mean_residual_db=" << fixed6(report.mean_residual_db)
     << " max_abs_residual_db=" << fixed6(report.max_abs_residual_db)
     << " outlier_threshold_db=" << fixed6(report.outlier_threshold_db) << '\n';
  if (!os) throw IoError("failed to write residual report");
}

void write_residual_json(const ResidualReport& report, std::ostream& os) {
  json j;
  j["rows"] = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["d1_m"] = row.record.d1_m;
    r["d2_m"] = row.record.d2_m;
    r["tag"] = row.record.tag;
    r["measured_dbm"] = row.record.received_power_dbm;
    r["model_dbm"] = std::isfinite(row.model_dbm) ? json(row.model_dbm) : json();
    r["residual_db"] = std::isfinite(row.residual_db) ? json(row.residual_db) : json();
    r["outlier"] = row.outlier;
    j["rows"].push_back(r);
  }
  j["mean_residual_db"] =
      std::isfinite(report.mean_residual_db) ? json(report.mean_residual_db) : json();
  j["max_abs_residual_db"] =
      std::isfinite(report.max_abs_residual_db) ? json(report.max_abs_residual_db) : json();
  j["outlier_threshold_db"] = report.outlier_threshold_db;
  os << j.dump(2) << '\n';
  if (!os) throw IoError("failed to write residual report");
}

std::vector<MeasurementRecord> read_measurement_csv(std::istream& is) {
  std::vector<MeasurementRecord> out;
  std::vector<size_t> bad_lines;
  std::string line;
  size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "d1_m,d2_m,pr_dbm,tag") {
        throw IoError("measurement CSV line " + std::to_string(line_no) +
                      ": expected header 'd1_m,d2_m,pr_dbm,tag'");
      }
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string f1, f2, f3, tag;
    std::getline(ss, f1, ',');
    std::getline(ss, f2, ',');
    std::getline(ss, f3, ',');
    std::getline(ss, tag);
    MeasurementRecord rec;
    try {
      size_t p1 = 0, p2 = 0, p3 = 0;
      rec.d1_m = std::stod(f1, &p1);
      rec.d2_m = std::stod(f2, &p2);
      rec.received_power_dbm = std::stod(f3, &p3);
      rec.tag = tag;
      if (p1 != f1.size() || p2 != f2.size() || p3 != f3.size() || !(rec.d1_m > 0.0) ||
          !(rec.d2_m > 0.0) || !std::isfinite(rec.received_power_dbm)) {
        bad_lines.push_back(line_no);
        continue;
      }
    } catch (const std::exception&) {
      bad_lines.push_back(line_no);
      continue;
    }
    out.push_back(std::move(rec));
  }
  if (!header_seen) throw IoError("measurement CSV is empty");
  if (!bad_lines.empty()) {
    std::string msg = "measurement CSV: unparseable record(s) at line(s)";
    for (const size_t l : bad_lines) msg += " " + std::to_string(l);
    throw IoError(msg);
  }
  return out;
}

// --- scenario config (JSON, angles in degrees) ---

namespace {

double require_number(const json& j, const std::string& section, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ValidationError("config section '" + section + "' is missing numeric field '" + key +
                          "'");
  }
  return j[key].get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ValidationError(std::string("config field '") + key +
                                                 "' must be numeric");
  return j[key].get<double>();
}

RisConfig parse_ris(const json& j) {
  RisConfig base;
  bool have_base = false;
  if (j.contains("preset")) {
    base = ris_preset(j["preset"].get<std::string>());
    have_base = true;
  }
  const int rows = static_cast<int>(number_or(j, "rows", have_base ? base.rows_n : 0));
  const int cols = static_cast<int>(number_or(j, "cols", have_base ? base.cols_m : 0));
  const double dx = number_or(j, "dx_m", have_base ? base.dx_m : 0.0);
  const double dy = number_or(j, "dy_m", have_base ? base.dy_m : 0.0);
  const double amp = number_or(j, "amplitude", have_base ? base.amplitude : 0.0);
  const double alpha =
      number_or(j, "cell_alpha", have_base ? base.cell_pattern.exponent() : -1.0);
  const double freq = number_or(j, "frequency_hz", have_base ? base.frequency_hz : 0.0);
  double lam = number_or(j, "wavelength_m", 0.0);
  if (lam == 0.0 && have_base && !j.contains("frequency_hz")) lam = base.wavelength_m;
  if (rows <= 0 || cols <= 0 || dx <= 0.0 || dy <= 0.0 || amp <= 0.0 || alpha < 0.0 ||
      (freq <= 0.0 && lam <= 0.0)) {
    throw ValidationError("config section 'ris' is incomplete");
  }
  return make_ris_config(rows, cols, dx, dy, amp, alpha, freq, lam);
}

AntennaSpec parse_antenna(const json& j, const std::string& section) {
  AntennaSpec a = make_antenna(0.0);  // hemispheric radiator by default
  if (j.contains("preset")) a = antenna_from_preset(antenna_preset(j["preset"].get<std::string>()));
  if (j.contains("alpha")) {
    const double alpha = require_number(j, section, "alpha");
    if (j.contains("gain_db")) {
      a = make_antenna(alpha, db_to_linear(require_number(j, section, "gain_db")));
    } else if (j.contains("gain")) {
      a = make_antenna(alpha, require_number(j, section, "gain"));
    } else {
      a = make_antenna(alpha);
    }
  }
  if (j.contains("mainlobe_halfwidth_deg")) {
    a.mainlobe_halfwidth_rad = deg_to_rad(require_number(j, section, "mainlobe_halfwidth_deg"));
  }
  return a;
}

PhaseDesign parse_design(const json& j) {
  PhaseDesign d;
  const std::string kind = j.contains("kind") ? j["kind"].get<std::string>() : "uniform";
  if (kind == "uniform") {
    d.kind = PhaseDesignKind::kUniform;
    d.phi_rad = deg_to_rad(number_or(j, "phi_deg", 0.0));
  } else if (kind == "farfield") {
    d.kind = PhaseDesignKind::kFarfield;
  } else if (kind == "nearfield_focus") {
    d.kind = PhaseDesignKind::kNearfieldFocus;
  } else if (kind == "nearfield_broadcast") {
    d.kind = PhaseDesignKind::kNearfieldBroadcast;
  } else if (kind == "two_beam_stripe") {
    d.kind = PhaseDesignKind::kTwoBeamStripe;
  } else {
    throw ValidationError("unknown phase design kind '" + kind + "'");
  }
  if (d.kind == PhaseDesignKind::kFarfield || d.kind == PhaseDesignKind::kNearfieldBroadcast) {
    d.theta_des_rad = deg_to_rad(require_number(j, "phase_design", "theta_des_deg"));
    d.phi_des_rad = deg_to_rad(require_number(j, "phase_design", "phi_des_deg"));
  }
  return d;
}

}  // namespace

ScenarioConfig load_scenario_config(std::istream& is) {
  json j;
  try {
    j = json::parse(is, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }

  ScenarioConfig cfg;
  if (!j.contains("ris")) throw ValidationError("config is missing the 'ris' section");
  cfg.ris = parse_ris(j["ris"]);
  cfg.tx_antenna = j.contains("tx_antenna") ? parse_antenna(j["tx_antenna"], "tx_antenna")
                                            : make_antenna(0.0);
  cfg.rx_antenna = j.contains("rx_antenna") ? parse_antenna(j["rx_antenna"], "rx_antenna")
                                            : make_antenna(0.0);

  if (!j.contains("link")) throw ValidationError("config is missing the 'link' section");
  const json& l = j["link"];
  SphericalPlacement tx{require_number(l, "link", "d1_m"),
                        deg_to_rad(require_number(l, "link", "theta_t_deg")),
                        deg_to_rad(require_number(l, "link", "phi_t_deg"))};
  SphericalPlacement rx{require_number(l, "link", "d2_m"),
                        deg_to_rad(require_number(l, "link", "theta_r_deg")),
                        deg_to_rad(require_number(l, "link", "phi_r_deg"))};
  cfg.link = make_link(tx, rx, cfg.tx_antenna, cfg.rx_antenna);

  cfg.design = j.contains("phase_design") ? parse_design(j["phase_design"]) : PhaseDesign{};

  cfg.sweep.ris = cfg.ris;
  cfg.sweep.link = cfg.link;
  cfg.sweep.design = cfg.design;
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    const std::string mode = s.contains("mode") ? s["mode"].get<std::string>() : "distance_d2";
    if (mode == "distance_d2") {
      cfg.sweep.mode = SweepMode::kDistanceD2;
    } else if (mode == "distance_d1") {
      cfg.sweep.mode = SweepMode::kDistanceD1;
    } else if (mode == "angular_heatmap") {
      cfg.sweep.mode = SweepMode::kAngularHeatmap;
    } else {
      throw ValidationError("unknown sweep mode '" + mode + "'");
    }
    cfg.sweep.start_m = number_or(s, "start_m", cfg.sweep.start_m);
    cfg.sweep.stop_m = number_or(s, "stop_m", cfg.sweep.stop_m);
    cfg.sweep.step_m = number_or(s, "step_m", cfg.sweep.step_m);
    cfg.sweep.heatmap_resolution_deg = number_or(s, "resolution_deg", 1.0);
    if (s.contains("transmit_power_w")) {
      cfg.sweep.transmit_power_w = require_number(s, "sweep", "transmit_power_w");
    } else if (s.contains("transmit_power_dbm")) {
      cfg.sweep.transmit_power_w =
          dbm_to_watts(require_number(s, "sweep", "transmit_power_dbm"));
    }
    if (s.contains("regimes")) {
      cfg.sweep.regimes.clear();
      for (const auto& name : s["regimes"]) {
        const auto regime = regime_from_name(name.get<std::string>());
        if (!regime) {
          throw ValidationError("unknown regime '" + name.get<std::string>() + "'");
        }
        cfg.sweep.regimes.push_back(*regime);
      }
      if (cfg.sweep.regimes.empty()) throw ValidationError("empty regime list");
    }
  }

  if (j.contains("calibration")) {
    const json& c = j["calibration"];
    if (c.contains("line_loss")) {
      cfg.calibration.line_loss = require_number(c, "calibration", "line_loss");
    } else if (c.contains("line_loss_db")) {
      cfg.calibration.line_loss = db_to_linear(require_number(c, "calibration", "line_loss_db"));
    }
    cfg.calibration.outlier_threshold_db =
        number_or(c, "outlier_threshold_db", cfg.calibration.outlier_threshold_db);
    if (!(cfg.calibration.line_loss > 0.0 && cfg.calibration.line_loss <= 1.0)) {
      throw ValidationError("line loss must be a linear factor in (0, 1]");
    }
  }
  return cfg;
}

ScenarioConfig load_scenario_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config file '" + path + "'");
  return load_scenario_config(is);
}

}  // namespace rispath
