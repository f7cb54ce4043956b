#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rispath/errors.hpp"
#include "rispath/presets.hpp"
#include "rispath/scenario.hpp"
#include "rispath/units.hpp"

using namespace rispath;

namespace {

SweepSpec ris1_spec() {
  SweepSpec spec;
  spec.ris = ris_preset("large-ris1");
  const AntennaSpec horn = make_antenna(62.0);
  spec.link = make_link({100.0, kPi / 4.0, kPi}, {100.0, kPi / 4.0, 0.0}, horn, horn);
  return spec;
}

std::string to_csv(const SweepGrid& grid) {
  std::ostringstream os;
  write_sweep_csv(grid, os);
  return os.str();
}

}  // namespace

TEST_CASE("sweep spec validation") {
  SweepSpec spec = ris1_spec();
  spec.start_m = 10.0;
  spec.stop_m = 5.0;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec.stop_m = 20.0;
  spec.step_m = 0.0;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec.step_m = 1.0;
  spec.regimes.clear();
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec.regimes = {Regime::kGeneral};
  spec.transmit_power_w = 0.0;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
}

TEST_CASE("far-field distance sweep steps by the inverse-square law") {
  SweepSpec spec = ris1_spec();
  spec.mode = SweepMode::kDistanceD2;
  spec.start_m = 100.0;
  spec.stop_m = 800.0;
  spec.step_m = 100.0;
  spec.regimes = {Regime::kFarField};
  const SweepGrid grid = run_distance_sweep(spec);
  REQUIRE(grid.rows.size() == 8);
  const auto dbm_at = [&](size_t i) {
    return watts_to_dbm(grid.rows[i].result.received_power_w);
  };
  // rows at d2 = 100, 200, 400, 800 (indices 0, 1, 3, 7)
  CHECK(dbm_at(0) - dbm_at(1) == doctest::Approx(6.0205999).epsilon(1e-6));
  CHECK(dbm_at(1) - dbm_at(3) == doctest::Approx(6.0205999).epsilon(1e-6));
  CHECK(dbm_at(3) - dbm_at(7) == doctest::Approx(6.0205999).epsilon(1e-6));
}

TEST_CASE("sweep output is deterministic") {
  SweepSpec spec = ris1_spec();
  spec.mode = SweepMode::kDistanceD2;
  spec.start_m = 5.0;
  spec.stop_m = 25.0;
  spec.step_m = 5.0;
  spec.link = make_link({1.0, kPi / 4.0, kPi}, {5.0, kPi / 4.0, 0.0}, make_antenna(62.0),
                        make_antenna(62.0));
  spec.regimes = {Regime::kGeneral, Regime::kNearFieldBroadcast};
  CHECK(to_csv(run_distance_sweep(spec)) == to_csv(run_distance_sweep(spec)));
}

TEST_CASE("broadcast sweep agrees with the general formula near the surface") {
  SweepSpec spec = ris1_spec();
  spec.mode = SweepMode::kDistanceD2;
  spec.link = make_link({1.0, kPi / 4.0, kPi}, {5.0, kPi / 4.0, 0.0}, make_antenna(62.0),
                        make_antenna(62.0));
  spec.start_m = 5.0;
  spec.stop_m = 100.0;
  spec.step_m = 5.0;
  spec.regimes = {Regime::kGeneral, Regime::kNearFieldBroadcast};
  const SweepGrid grid = run_distance_sweep(spec);
  REQUIRE(grid.rows.size() == 40);
  for (size_t i = 0; i < grid.rows.size(); i += 2) {
    const SweepRow& general = grid.rows[i];
    const SweepRow& broadcast = grid.rows[i + 1];
    REQUIRE(general.regime == Regime::kGeneral);
    REQUIRE(broadcast.regime == Regime::kNearFieldBroadcast);
    REQUIRE(broadcast.result.in_coverage);
    const double gap = std::abs(10.0 * std::log10(general.result.received_power_w /
                                                  broadcast.result.received_power_w));
    CHECK(gap < 1.5);
  }
}

TEST_CASE("out-of-coverage broadcast rows are flagged, not dropped") {
  SweepSpec spec = ris1_spec();
  spec.mode = SweepMode::kDistanceD2;
  spec.link = make_link({1.0, kPi / 4.0, kPi}, {5.0, kPi / 4.0, kPi}, make_antenna(62.0),
                        make_antenna(62.0));
  spec.start_m = 5.0;
  spec.stop_m = 20.0;
  spec.step_m = 5.0;
  spec.regimes = {Regime::kNearFieldBroadcast};
  const SweepGrid grid = run_distance_sweep(spec);
  REQUIRE(grid.rows.size() == 4);
  for (const auto& row : grid.rows) {
    CHECK_FALSE(row.result.in_coverage);
    CHECK(row.result.received_power_w == 0.0);
  }
  const std::string csv = to_csv(grid);
  CHECK(csv.find(",-inf,") != std::string::npos);
  CHECK(csv.find(",false") != std::string::npos);
}

TEST_CASE("sweep CSV format") {
  SweepSpec spec = ris1_spec();
  spec.mode = SweepMode::kDistanceD2;
  spec.start_m = 100.0;
  spec.stop_m = 102.0;
  spec.step_m = 1.0;
  spec.regimes = {Regime::kFarField};
  const std::string csv = to_csv(run_distance_sweep(spec));
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line == "d1_m,d2_m,theta_r_deg,phi_r_deg,regime,pr_dbm,pr_w,path_loss_db,in_coverage");
  std::getline(is, line);
  CHECK(line.substr(0, 11) == "100.000000,");
  // dB columns carry six decimals
  const size_t dot = line.rfind('.');
  CHECK(dot != std::string::npos);
  size_t commas = 0;
  for (const char c : line) commas += c == ',';
  CHECK(commas == 8);
}

TEST_CASE("measurement CSV parsing") {
  SUBCASE("valid file with comments") {
    std::istringstream is(
        "# chamber run\n"
        "d1_m,d2_m,pr_dbm,tag\n"
        "1.0,2.0,-45.5,specular\n"
        "\n"
        "1.0,3.0,-48.25,specular\n");
    const auto records = read_measurement_csv(is);
    REQUIRE(records.size() == 2);
    CHECK(records[0].d1_m == 1.0);
    CHECK(records[1].received_power_dbm == -48.25);
    CHECK(records[0].tag == "specular");
  }

  SUBCASE("bad rows are rejected with their line numbers") {
    std::istringstream is(
        "d1_m,d2_m,pr_dbm,tag\n"
        "1.0,2.0,-45.5,ok\n"
        "1.0,zzz,-48.2,bad\n"
        "-1.0,2.0,-48.2,bad\n");
    CHECK_THROWS_WITH_AS(read_measurement_csv(is), doctest::Contains("line(s) 3 4"), IoError);
  }

  SUBCASE("missing header") {
    std::istringstream is("1.0,2.0,-45.5,x\n");
    CHECK_THROWS_AS(read_measurement_csv(is), IoError);
  }
}

TEST_CASE("measurement comparison") {
  SweepSpec model = ris1_spec();
  model.mode = SweepMode::kDistanceD2;
  model.link = make_link({1.0, kPi / 4.0, kPi}, {5.0, kPi / 4.0, 0.0}, make_antenna(62.0),
                         make_antenna(62.0));
  model.regimes = {Regime::kNearFieldBroadcast};

  std::vector<MeasurementRecord> records;
  for (const double d2 : {5.0, 10.0, 20.0, 50.0}) {
    const PowerResult r = received_power_nearfield_broadcast(
        model.ris, make_link({1.0, kPi / 4.0, kPi}, {d2, kPi / 4.0, 0.0}, model.link.tx_antenna,
                             model.link.rx_antenna),
        model.transmit_power_w);
    records.push_back({1.0, d2, watts_to_dbm(r.received_power_w), "loop"});
  }

  SUBCASE("model-generated records close the loop at zero residual") {
    const ResidualReport report = compare_measurements(records, model, {});
    CHECK(report.max_abs_residual_db < 1e-9);
    CHECK(report.mean_residual_db == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    for (const auto& row : report.rows) CHECK_FALSE(row.outlier);
  }

  SUBCASE("a constant offset is recovered in the mean") {
    auto offset = records;
    for (auto& r : offset) r.received_power_dbm += 3.0;
    const ResidualReport report = compare_measurements(offset, model, {});
    CHECK(report.mean_residual_db == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(report.max_abs_residual_db == doctest::Approx(3.0).epsilon(1e-9));
  }

  SUBCASE("line loss shifts the prediction, residuals follow") {
    CalibrationSpec cal;
    cal.line_loss = db_to_linear(-2.0);
    const ResidualReport report = compare_measurements(records, model, cal);
    CHECK(report.mean_residual_db == doctest::Approx(2.0).epsilon(1e-9));
  }

  SUBCASE("residuals beyond the threshold are flagged as outliers") {
    auto noisy = records;
    noisy[2].received_power_dbm += 6.0;
    const ResidualReport report = compare_measurements(noisy, model, {});
    CHECK(report.rows[2].outlier);
    CHECK_FALSE(report.rows[0].outlier);
  }

  SUBCASE("two regimes cannot be compared at once") {
    SweepSpec two = model;
    two.regimes = {Regime::kGeneral, Regime::kNearFieldBroadcast};
    CHECK_THROWS_AS(compare_measurements(records, two, {}), ValidationError);
  }
}

TEST_CASE("heatmap points match the direct general evaluation") {
  SweepSpec spec;
  spec.ris = ris_preset("small-ris");
  const AntennaSpec horn = make_antenna(13.0);
  spec.link = make_link({3.5, kPi / 4.0, kPi}, {10.0, kPi / 4.0, 0.0}, horn, horn);
  spec.mode = SweepMode::kAngularHeatmap;
  spec.heatmap_resolution_deg = 15.0;
  const SweepGrid grid = run_angular_heatmap(spec);
  REQUIRE(grid.rows.size() == 7 * 24);
  REQUIRE(grid.argmax.has_value());
  const double peak = grid.argmax->result.received_power_w;
  for (const auto& row : grid.rows) {
    if (row.theta_r_rad >= kPi / 2.0 - 1e-9) continue;  // at 90 deg the point is off-model
    const LinkGeometry link = make_link(spec.link.tx,
                                        {row.d2_m, row.theta_r_rad, row.phi_r_rad},
                                        spec.link.tx_antenna, spec.link.rx_antenna);
    const PowerResult direct = received_power_general(
        spec.ris, build_profile(spec.ris, spec.design, spec.link), link,
        spec.transmit_power_w);
    // deep interference nulls (120 dB down) are pure cancellation noise and
    // carry no comparable digits
    if (direct.received_power_w < 1e-12 * peak) continue;
    CHECK(std::abs(row.result.received_power_w - direct.received_power_w) <
          1e-6 * direct.received_power_w);
  }
  // the peak itself must agree to full precision
  const LinkGeometry peak_link =
      make_link(spec.link.tx, {grid.argmax->d2_m, grid.argmax->theta_r_rad,
                               grid.argmax->phi_r_rad},
                spec.link.tx_antenna, spec.link.rx_antenna);
  const PowerResult at_peak = received_power_general(
      spec.ris, build_profile(spec.ris, spec.design, spec.link), peak_link,
      spec.transmit_power_w);
  CHECK(std::abs(peak - at_peak.received_power_w) < 1e-9 * at_peak.received_power_w);
}

TEST_CASE("heatmap argmax is stable under grid refinement") {
  SweepSpec spec;
  spec.ris = ris_preset("small-ris");
  const AntennaSpec horn = make_antenna(13.0);
  spec.link = make_link({3.5, kPi / 4.0, kPi}, {10.0, kPi / 4.0, 0.0}, horn, horn);
  spec.mode = SweepMode::kAngularHeatmap;
  spec.heatmap_resolution_deg = 1.0;
  const SweepGrid coarse = run_angular_heatmap(spec);
  spec.heatmap_resolution_deg = 0.5;
  const SweepGrid fine = run_angular_heatmap(spec);
  REQUIRE(coarse.argmax.has_value());
  REQUIRE(fine.argmax.has_value());
  CHECK(std::abs(rad_to_deg(coarse.argmax->theta_r_rad) -
                 rad_to_deg(fine.argmax->theta_r_rad)) <= 1.0 + 1e-9);
  double dphi = std::abs(rad_to_deg(coarse.argmax->phi_r_rad) -
                         rad_to_deg(fine.argmax->phi_r_rad));
  dphi = std::min(dphi, 360.0 - dphi);
  CHECK(dphi <= 1.0 + 1e-9);
}

TEST_CASE("intelligent broadcast lights the desired patch") {
  SweepSpec spec;
  spec.ris = ris_preset("large-ris1");
  const AntennaSpec horn = make_antenna(62.0);
  spec.link = make_link({2.0, kPi / 4.0, kPi}, {100.0, kPi / 4.0, 0.0}, horn, horn);
  spec.design.kind = PhaseDesignKind::kNearfieldBroadcast;
  spec.design.theta_des_rad = kPi / 4.0;
  spec.design.phi_des_rad = kPi / 4.0;
  spec.mode = SweepMode::kAngularHeatmap;
  spec.heatmap_resolution_deg = 2.0;
  const SweepGrid grid = run_angular_heatmap(spec);
  REQUIRE(grid.argmax.has_value());

  // the peak ripples inside the lit patch; membership is the honest check
  const Point3 virt = virtual_transmitter(2.0, kPi / 4.0, kPi / 4.0);
  CHECK(broadcast_coverage_test(spec.ris, virt, spec.link.tx_antenna,
                                grid.argmax->theta_r_rad, grid.argmax->phi_r_rad));

  // and the desired direction itself is within a ripple of the maximum
  double p_des = 0.0;
  for (const auto& row : grid.rows) {
    if (std::abs(rad_to_deg(row.theta_r_rad) - 44.0) < 1e-9 &&
        std::abs(rad_to_deg(row.phi_r_rad) - 44.0) < 1e-9) {
      p_des = row.result.received_power_w;
    }
  }
  REQUIRE(p_des > 0.0);
  CHECK(10.0 * std::log10(grid.argmax->result.received_power_w / p_des) < 2.0);
}

TEST_CASE("heatmap CSV carries the argmax summary and is reproducible") {
  SweepSpec spec;
  spec.ris = ris_preset("small-ris");
  const AntennaSpec horn = make_antenna(13.0);
  spec.link = make_link({3.5, kPi / 4.0, kPi}, {10.0, kPi / 4.0, 0.0}, horn, horn);
  spec.mode = SweepMode::kAngularHeatmap;
  spec.heatmap_resolution_deg = 10.0;
  std::ostringstream os;
  write_heatmap_csv(run_angular_heatmap(spec), os);
  const std::string text = os.str();
  const size_t pos = text.rfind("# argmax theta_r_deg=");
  REQUIRE(pos != std::string::npos);
  CHECK(text.find("pr_dbm=", pos) != std::string::npos);

  // parallel evaluation must not disturb the canonical output order
  std::ostringstream again;
  write_heatmap_csv(run_angular_heatmap(spec), again);
  CHECK(text == again.str());

  CHECK_THROWS_AS(run_distance_sweep(spec), ValidationError);
  SweepSpec distance = spec;
  distance.mode = SweepMode::kDistanceD2;
  distance.start_m = 1.0;
  distance.stop_m = 2.0;
  distance.step_m = 0.5;
  CHECK_THROWS_AS(run_angular_heatmap(distance), ValidationError);
}

TEST_CASE("scenario config parsing") {
  SUBCASE("full document") {
    std::istringstream is(R"({
      "ris": {"preset": "large-ris1"},
      "tx_antenna": {"preset": "x-band-horn"},
      "rx_antenna": {"alpha": 13, "gain_db": 14.5, "mainlobe_halfwidth_deg": 20.0},
      "link": {"d1_m": 2, "theta_t_deg": 45, "phi_t_deg": 180,
               "d2_m": 100, "theta_r_deg": 45, "phi_r_deg": 0},
      "phase_design": {"kind": "nearfield_broadcast", "theta_des_deg": 45, "phi_des_deg": 45},
      "sweep": {"mode": "distance_d2", "start_m": 5, "stop_m": 100, "step_m": 5,
                "transmit_power_dbm": 0,
                "regimes": ["general", "near_field_broadcast"]},
      "calibration": {"line_loss_db": -1.5, "outlier_threshold_db": 4}
    })");
    const ScenarioConfig cfg = load_scenario_config(is);
    CHECK(cfg.ris.rows_n == 100);
    CHECK(cfg.tx_antenna.gain == doctest::Approx(126.0));
    CHECK(cfg.rx_antenna.gain == doctest::Approx(db_to_linear(14.5)));
    CHECK(cfg.rx_antenna.mainlobe_halfwidth_rad == doctest::Approx(deg_to_rad(20.0)));
    CHECK(cfg.link.tx.theta_rad == doctest::Approx(kPi / 4.0));
    CHECK(cfg.link.rx.distance_m == 100.0);
    CHECK(cfg.design.kind == PhaseDesignKind::kNearfieldBroadcast);
    CHECK(cfg.design.phi_des_rad == doctest::Approx(kPi / 4.0));
    CHECK(cfg.sweep.regimes.size() == 2);
    CHECK(cfg.sweep.transmit_power_w == doctest::Approx(1e-3));
    CHECK(cfg.calibration.line_loss == doctest::Approx(db_to_linear(-1.5)));
    CHECK(cfg.calibration.outlier_threshold_db == 4.0);
  }

  SUBCASE("ris overrides on top of a preset") {
    std::istringstream is(R"({
      "ris": {"preset": "large-ris1", "amplitude": 0.5},
      "link": {"d1_m": 1, "theta_t_deg": 45, "phi_t_deg": 180,
               "d2_m": 4, "theta_r_deg": 45, "phi_r_deg": 0}
    })");
    const ScenarioConfig cfg = load_scenario_config(is);
    CHECK(cfg.ris.amplitude == 0.5);
    CHECK(cfg.ris.rows_n == 100);
    CHECK(cfg.ris.wavelength_m == 0.0286);
  }

  SUBCASE("errors") {
    std::istringstream missing_link(R"({"ris": {"preset": "small-ris"}})");
    CHECK_THROWS_AS(load_scenario_config(missing_link), ValidationError);
    std::istringstream bad_regime(R"({
      "ris": {"preset": "small-ris"},
      "link": {"d1_m": 1, "theta_t_deg": 45, "phi_t_deg": 180,
               "d2_m": 4, "theta_r_deg": 45, "phi_r_deg": 0},
      "sweep": {"regimes": ["warp_drive"]}
    })");
    CHECK_THROWS_AS(load_scenario_config(bad_regime), ValidationError);
    std::istringstream not_json("{nope");
    CHECK_THROWS_AS(load_scenario_config(not_json), ValidationError);
    CHECK_THROWS_AS(load_scenario_config_file("/nonexistent/path.json"), IoError);
  }
}

TEST_CASE("json writers emit parseable documents") {
  SweepSpec spec = ris1_spec();
  spec.mode = SweepMode::kDistanceD2;
  spec.start_m = 100.0;
  spec.stop_m = 103.0;
  spec.step_m = 1.0;
  spec.regimes = {Regime::kFarField};
  std::ostringstream os;
  write_sweep_json(run_distance_sweep(spec), os);
  const std::string text = os.str();
  CHECK(text.find("\"rows\"") != std::string::npos);
  CHECK(text.find("\"pr_dbm\"") != std::string::npos);
  CHECK(text.find("\"regime\": \"far_field\"") != std::string::npos);
}
