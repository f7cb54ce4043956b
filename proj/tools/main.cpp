// Command-line front end: every subcommand is a thin wrapper over the library
// with degrees/dB conversions at this boundary only.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rispath/errors.hpp"
#include "rispath/presets.hpp"
#include "rispath/scenario.hpp"
#include "rispath/units.hpp"

namespace {

using namespace rispath;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct OutputTarget {
  std::string path;  // empty = stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream os(path);
    if (!os) throw IoError("cannot open output file '" + path + "'");
    os << text;
    if (!os) throw IoError("failed to write output file '" + path + "'");
  }
};

void print_warnings(const RisConfig& cfg) {
  for (const auto& w : cfg.validate()) std::cerr << "warning: " << w << "\n";
}

void warn_if_not_electrically_large(const SweepSpec& spec) {
  for (const Regime r : spec.regimes) {
    if (r == Regime::kNearFieldBroadcast && !ris_electrically_large(spec.ris)) {
      std::cerr << "warning: surface is not electrically large (sides < 10 wavelengths); "
                   "the broadcast closed form is a rough approximation here\n";
      return;
    }
  }
}

ScenarioConfig load_config_checked(const std::string& path) {
  ScenarioConfig cfg = load_scenario_config_file(path);
  print_warnings(cfg.ris);
  return cfg;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

int cmd_gain(double alpha, const std::string& format, const OutputTarget& out) {
  const double g = gain_from_pattern(CosinePattern(alpha));
  const double dbi = linear_to_db(g);
  std::string text;
  if (format == "text") {
    text = fmt("%.6f", g) + " linear, " + fmt("%.4f", dbi) + " dBi\n";
  } else if (format == "csv") {
    text = "alpha,gain_linear,gain_dbi\n" + fmt("%g", alpha) + "," + fmt("%.6f", g) + "," +
           fmt("%.6f", dbi) + "\n";
  } else {
    text = std::string("{\"alpha\": ") + fmt("%g", alpha) + ", \"gain_linear\": " +
           fmt("%.9g", g) + ", \"gain_dbi\": " + fmt("%.6f", dbi) + "}\n";
  }
  out.write(text);
  return kExitOk;
}

int cmd_boundary(const std::string& config_path, const std::string& preset, double theta_t_deg,
                 double theta_r_deg, double d1, double d2, const std::string& format,
                 const OutputTarget& out) {
  RisConfig ris;
  LinkGeometry link;
  if (!config_path.empty()) {
    const ScenarioConfig cfg = load_config_checked(config_path);
    ris = cfg.ris;
    link = cfg.link;
  } else if (!preset.empty()) {
    ris = ris_preset(preset);
    print_warnings(ris);
    link = make_link({d1, deg_to_rad(theta_t_deg), kPi}, {d2, deg_to_rad(theta_r_deg), 0.0},
                     make_antenna(0.0), make_antenna(0.0));
  } else {
    throw ValidationError("boundary needs --config or --preset");
  }

  const FieldRegionReport r = field_region(ris, link);
  const char* tx_region = r.tx_region == FieldRegion::kNear ? "near" : "far";
  const char* rx_region = r.rx_region == FieldRegion::kNear ? "near" : "far";
  std::string text;
  if (format == "text") {
    text += "classic boundary 2D^2/lambda: " + fmt("%.6f", r.classic_boundary_m) + " m\n";
    text += "redefined boundary L_bound:   " + fmt("%.6f", r.redefined_boundary_m) + " m\n";
    text += "near-field lower bound (5 lambda): " + fmt("%.6f", r.lower_bound_m) + " m\n";
    text += std::string("tx region: ") + tx_region + " (d1 = " + fmt("%.6f", link.tx.distance_m) +
            " m)\n";
    text += std::string("rx region: ") + rx_region + " (d2 = " + fmt("%.6f", link.rx.distance_m) +
            " m)\n";
    text += std::string("below 5-lambda validity bound: ") +
            (r.below_lower_bound ? "true" : "false") + "\n";
  } else if (format == "csv") {
    text = "classic_boundary_m,l_bound_m,lower_bound_m,tx_region,rx_region,below_lower_bound\n";
    text += fmt("%.6f", r.classic_boundary_m) + "," + fmt("%.6f", r.redefined_boundary_m) + "," +
            fmt("%.6f", r.lower_bound_m) + "," + tx_region + "," + rx_region + "," +
            (r.below_lower_bound ? "true" : "false") + "\n";
  } else {
    text = std::string("{\"classic_boundary_m\": ") + fmt("%.9g", r.classic_boundary_m) +
           ", \"l_bound_m\": " + fmt("%.9g", r.redefined_boundary_m) +
           ", \"lower_bound_m\": " + fmt("%.9g", r.lower_bound_m) + ", \"tx_region\": \"" +
           tx_region + "\", \"rx_region\": \"" + rx_region + "\", \"below_lower_bound\": " +
           (r.below_lower_bound ? "true" : "false") + "}\n";
  }
  out.write(text);
  return kExitOk;
}

int cmd_power(const std::string& config_path, const std::string& regime_name_opt,
              const std::string& format, const OutputTarget& out) {
  ScenarioConfig cfg = load_config_checked(config_path);
  SweepSpec spec = cfg.sweep;
  if (!regime_name_opt.empty()) {
    const auto r = regime_from_name(regime_name_opt);
    if (!r) throw ValidationError("unknown regime '" + regime_name_opt + "'");
    spec.regimes = {*r};
  }
  // A degenerate single-point sweep at the configured link distances.
  spec.mode = SweepMode::kDistanceD2;
  spec.start_m = cfg.link.rx.distance_m;
  spec.stop_m = cfg.link.rx.distance_m + 1.0;
  spec.step_m = 2.0;
  warn_if_not_electrically_large(spec);
  const SweepGrid grid = run_distance_sweep(spec);

  std::ostringstream os;
  if (format == "json") {
    write_sweep_json(grid, os);
  } else {
    write_sweep_csv(grid, os);
  }
  out.write(os.str());
  return kExitOk;
}

int cmd_phase_design(const std::string& config_path, const OutputTarget& out) {
  const ScenarioConfig cfg = load_config_checked(config_path);
  const PhaseProfile profile = build_profile(cfg.ris, cfg.design, cfg.link);
  std::ostringstream os;
  write_profile_csv(profile, os);
  out.write(os.str());
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& format,
              const OutputTarget& out) {
  const ScenarioConfig cfg = load_config_checked(config_path);
  warn_if_not_electrically_large(cfg.sweep);
  const SweepGrid grid = run_distance_sweep(cfg.sweep);
  std::ostringstream os;
  if (format == "json") {
    write_sweep_json(grid, os);
  } else {
    write_sweep_csv(grid, os);
  }
  out.write(os.str());
  return kExitOk;
}

int cmd_heatmap(const std::string& config_path, const std::string& format,
                const OutputTarget& out) {
  ScenarioConfig cfg = load_config_checked(config_path);
  cfg.sweep.mode = SweepMode::kAngularHeatmap;
  const SweepGrid grid = run_angular_heatmap(cfg.sweep);
  std::ostringstream os;
  if (format == "json") {
    write_sweep_json(grid, os);
  } else {
    write_heatmap_csv(grid, os);
  }
  out.write(os.str());
  if (grid.argmax && !out.path.empty()) {
    const SweepRow& a = *grid.argmax;
    std::cout << "argmax: theta_r=" << fmt("%.2f", rad_to_deg(a.theta_r_rad))
              << " deg, phi_r=" << fmt("%.2f", rad_to_deg(a.phi_r_rad)) << " deg, "
              << fmt("%.6f", watts_to_dbm(a.result.received_power_w)) << " dBm\n";
  }
  return kExitOk;
}

int cmd_compare(const std::string& config_path, const std::string& measurements_path,
                const std::string& format, const OutputTarget& out) {
  const ScenarioConfig cfg = load_config_checked(config_path);
  std::ifstream is(measurements_path);
  if (!is) throw IoError("cannot open measurements file '" + measurements_path + "'");
  const auto records = read_measurement_csv(is);
  SweepSpec model = cfg.sweep;
  if (model.regimes.size() != 1) {
    throw ValidationError("comparison config must request exactly one regime");
  }
  warn_if_not_electrically_large(model);
  const ResidualReport report = compare_measurements(records, model, cfg.calibration);
  std::ostringstream os;
  if (format == "json") {
    write_residual_json(report, os);
  } else {
    write_residual_csv(report, os);
  }
  out.write(os.str());
  return kExitOk;
}

int cmd_power_consumption(const std::string& kind, long n_on, const std::string& preset,
                          const std::string& format, const OutputTarget& out) {
  const DiodeKind k = kind == "pin" ? DiodeKind::kPin : DiodeKind::kVaractor;
  double watts = 0.0;
  if (!preset.empty()) {
    watts = power_consumption(k, n_on, ris_preset(preset));
  } else {
    watts = power_consumption(k, n_on);
  }
  std::string text;
  if (format == "text") {
    text = fmt("%.6f", watts) + " W\n";
  } else if (format == "csv") {
    text = "kind,n_on,power_w\n" + kind + "," + std::to_string(n_on) + "," + fmt("%.6f", watts) +
           "\n";
  } else {
    text = std::string("{\"kind\": \"") + kind + "\", \"n_on\": " + std::to_string(n_on) +
           ", \"power_w\": " + fmt("%.9g", watts) + "}\n";
  }
  out.write(text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-space path loss and received power for surface-assisted links"};
  app.require_subcommand(0, 1);
  bool list_presets = false;
  app.add_flag("--list-presets", list_presets, "List built-in surface and antenna presets");

  std::string format = "text";
  std::string out_path;
  std::string config_path;
  std::string preset;

  auto* gain = app.add_subcommand("gain", "Antenna/cell gain of a cos^alpha pattern");
  double alpha = 3.0;
  gain->add_option("--alpha", alpha, "Pattern exponent")->required();
  std::string gain_format = "text";
  std::string gain_out;
  gain->add_option("--format", gain_format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  gain->add_option("--out", gain_out, "Output path (default stdout)");

  auto* boundary = app.add_subcommand("boundary", "Near/far field boundaries of a surface");
  std::string b_config, b_preset, b_format = "text", b_out;
  double b_theta_t = 45.0, b_theta_r = 45.0, b_d1 = 1.0, b_d2 = 1.0;
  boundary->add_option("--config", b_config, "Scenario config file");
  boundary->add_option("--preset", b_preset, "Surface preset name");
  boundary->add_option("--theta-t", b_theta_t, "Transmit elevation, degrees (with --preset)");
  boundary->add_option("--theta-r", b_theta_r, "Receive elevation, degrees (with --preset)");
  boundary->add_option("--d1", b_d1, "Transmitter distance, m (with --preset)");
  boundary->add_option("--d2", b_d2, "Receiver distance, m (with --preset)");
  boundary->add_option("--format", b_format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  boundary->add_option("--out", b_out, "Output path (default stdout)");

  auto* power = app.add_subcommand("power", "Received power at the configured link");
  std::string p_config, p_regime, p_format = "csv", p_out;
  power->add_option("--config", p_config, "Scenario config file")->required();
  power->add_option("--regime", p_regime,
                    "general, far_field, near_field_beam or near_field_broadcast");
  power->add_option("--format", p_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  power->add_option("--out", p_out, "Output path (default stdout)");

  auto* design = app.add_subcommand("phase-design", "Emit the configured phase profile as CSV");
  std::string d_config, d_out;
  design->add_option("--config", d_config, "Scenario config file")->required();
  design->add_option("--out", d_out, "Output path (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Distance sweep over the configured axis");
  std::string s_config, s_format = "csv", s_out;
  sweep->add_option("--config", s_config, "Scenario config file")->required();
  sweep->add_option("--format", s_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", s_out, "Output path (default stdout)");

  auto* heatmap = app.add_subcommand("heatmap", "Received-power distribution over directions");
  std::string h_config, h_format = "csv", h_out;
  heatmap->add_option("--config", h_config, "Scenario config file")->required();
  heatmap->add_option("--format", h_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  heatmap->add_option("--out", h_out, "Output path (default stdout)");

  auto* compare = app.add_subcommand("compare", "Residuals of measurements against the model");
  std::string c_config, c_meas, c_format = "csv", c_out;
  compare->add_option("--config", c_config, "Scenario config file")->required();
  compare->add_option("--measurements", c_meas, "Measurement CSV (d1_m,d2_m,pr_dbm,tag)")
      ->required();
  compare->add_option("--format", c_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  compare->add_option("--out", c_out, "Output path (default stdout)");

  auto* consumption = app.add_subcommand("power-consumption", "Surface control power draw");
  std::string pc_kind, pc_preset, pc_format = "text", pc_out;
  long pc_n_on = 0;
  consumption->add_option("--kind", pc_kind, "varactor or pin")
      ->required()
      ->check(CLI::IsMember({"varactor", "pin"}));
  consumption->add_option("--n-on", pc_n_on, "Number of cells in the on state")->required();
  consumption->add_option("--preset", pc_preset, "Surface preset (bounds the cell count)");
  consumption->add_option("--format", pc_format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  consumption->add_option("--out", pc_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (list_presets) {
      std::cout << describe_presets();
      return kExitOk;
    }
    if (gain->parsed()) return cmd_gain(alpha, gain_format, {gain_out});
    if (boundary->parsed()) {
      return cmd_boundary(b_config, b_preset, b_theta_t, b_theta_r, b_d1, b_d2, b_format,
                          {b_out});
    }
    if (power->parsed()) return cmd_power(p_config, p_regime, p_format, {p_out});
    if (design->parsed()) return cmd_phase_design(d_config, {d_out});
    if (sweep->parsed()) return cmd_sweep(s_config, s_format, {s_out});
    if (heatmap->parsed()) return cmd_heatmap(h_config, h_format, {h_out});
    if (compare->parsed()) return cmd_compare(c_config, c_meas, c_format, {c_out});
    if (consumption->parsed()) {
      return cmd_power_consumption(pc_kind, pc_n_on, pc_preset, pc_format, {pc_out});
    }
    std::cout << app.help();
    return kExitOk;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
