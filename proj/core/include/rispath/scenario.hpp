#pragma once

// Sweep orchestration, measurement ingestion and residual comparison, CSV and
// JSON emission, and the scenario config file.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rispath/pathloss.hpp"

namespace rispath {

enum class SweepMode { kDistanceD2, kDistanceD1, kAngularHeatmap };

enum class PhaseDesignKind {
  kUniform,
  kFarfield,
  kNearfieldFocus,
  kNearfieldBroadcast,
  kTwoBeamStripe,
};

struct PhaseDesign {
  PhaseDesignKind kind = PhaseDesignKind::kUniform;
  double phi_rad = 0.0;        // uniform
  double theta_des_rad = 0.0;  // farfield / nearfield broadcast
  double phi_des_rad = 0.0;
};

/// Profile for a concrete link; focus and broadcast designs depend on the
/// terminal positions.
PhaseProfile build_profile(const RisConfig& cfg, const PhaseDesign& design,
                           const LinkGeometry& link);

struct SweepSpec {
  SweepMode mode = SweepMode::kDistanceD2;
  RisConfig ris;
  LinkGeometry link;  // template; the swept coordinate is overridden per point
  PhaseDesign design;
  double transmit_power_w = 1e-3;
  double start_m = 1.0;
  double stop_m = 10.0;
  double step_m = 1.0;
  double heatmap_resolution_deg = 1.0;
  std::vector<Regime> regimes{Regime::kGeneral};

  void validate() const;
};

struct SweepRow {
  double d1_m = 0.0;
  double d2_m = 0.0;
  double theta_r_rad = 0.0;
  double phi_r_rad = 0.0;
  Regime regime = Regime::kGeneral;
  PowerResult result;
  double transmit_power_w = 1e-3;
};

struct SweepGrid {
  std::vector<SweepRow> rows;
  std::optional<SweepRow> argmax;  // heatmaps only
};

/// One row per axis point per requested regime, axis ascending, regime order
/// as requested. Invalid per-point evaluations become zero-power flagged rows.
SweepGrid run_distance_sweep(const SweepSpec& spec);

/// Received-power grid over theta_r in [0, 90] deg and phi_r in [0, 360) deg
/// via the general formula; rows in canonical order (theta outer ascending,
/// phi inner ascending) with the argmax recorded. Points are evaluated
/// concurrently; the output order is deterministic.
SweepGrid run_angular_heatmap(const SweepSpec& spec);

struct MeasurementRecord {
  double d1_m = 0.0;
  double d2_m = 0.0;
  double received_power_dbm = 0.0;
  std::string tag;
};

struct CalibrationSpec {
  double line_loss = 1.0;             // linear <= 1, folded into the model prediction
  double outlier_threshold_db = 5.0;  // |residual| above this flags the record
};

struct ResidualRow {
  MeasurementRecord record;
  double model_dbm = 0.0;
  double residual_db = 0.0;  // measured - model
  bool outlier = false;
};

struct ResidualReport {
  std::vector<ResidualRow> rows;
  double mean_residual_db = 0.0;
  double max_abs_residual_db = 0.0;
  double outlier_threshold_db = 5.0;
};

/// Model prediction (with calibration folded in) and residual per record.
/// The model sweep must request exactly one regime.
ResidualReport compare_measurements(const std::vector<MeasurementRecord>& records,
                                    const SweepSpec& model, const CalibrationSpec& cal);

// --- file formats ---

/// Header `d1_m,d2_m,pr_dbm,tag`; `#` comment lines ignored. Unparseable
/// records are rejected with their line numbers.
std::vector<MeasurementRecord> read_measurement_csv(std::istream& is);

/// Header `d1_m,d2_m,theta_r_deg,phi_r_deg,regime,pr_dbm,pr_w,path_loss_db,
/// in_coverage`; dB columns fixed 6 decimals; zero power prints the sentinel
/// "-inf".
void write_sweep_csv(const SweepGrid& grid, std::ostream& os);

/// Sweep CSV plus a trailing `# argmax ...` summary line.
void write_heatmap_csv(const SweepGrid& grid, std::ostream& os);

void write_sweep_json(const SweepGrid& grid, std::ostream& os);

void write_residual_csv(const ResidualReport& report, std::ostream& os);
void write_residual_json(const ResidualReport& report, std::ostream& os);

// --- scenario config (JSON document, angles in degrees) ---

struct ScenarioConfig {
  RisConfig ris;
  AntennaSpec tx_antenna;
  AntennaSpec rx_antenna;
  LinkGeometry link;
  PhaseDesign design;
  SweepSpec sweep;  // fully assembled from the file
  CalibrationSpec calibration;
};

ScenarioConfig load_scenario_config(std::istream& is);
ScenarioConfig load_scenario_config_file(const std::string& path);

}  // namespace rispath
