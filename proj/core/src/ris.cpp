#include "rispath/ris.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "rispath/errors.hpp"
#include "rispath/units.hpp"

namespace rispath {

std::vector<std::string> RisConfig::validate() const {
  if (rows_n <= 0 || cols_m <= 0) throw ValidationError("grid dimensions must be positive");
  if (rows_n % 2 != 0 || cols_m % 2 != 0) {
    throw ValidationError("grid dimensions N and M must be even");
  }
  if (!(dx_m > 0.0) || !(dy_m > 0.0)) throw ValidationError("cell pitch must be positive");
  if (!(amplitude > 0.0 && amplitude <= 1.0)) {
    throw ValidationError("reflection amplitude must lie in (0, 1]");
  }
  if (!(wavelength_m > 0.0)) throw ValidationError("wavelength must be positive");

  std::vector<std::string> warnings;
  const double lo = wavelength_m / 10.0;
  const double hi = wavelength_m / 2.0;
  if (dx_m < lo || dx_m > hi || dy_m < lo || dy_m > hi) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "cell pitch (%g, %g) m outside the usual subwavelength range [%g, %g] m",
                  dx_m, dy_m, lo, hi);
    warnings.emplace_back(buf);
  }
  return warnings;
}

RisConfig make_ris_config(int rows_n, int cols_m, double dx_m, double dy_m, double amplitude,
                          double cell_alpha, double frequency_hz, double wavelength_m) {
  RisConfig cfg;
  cfg.rows_n = rows_n;
  cfg.cols_m = cols_m;
  cfg.dx_m = dx_m;
  cfg.dy_m = dy_m;
  cfg.amplitude = amplitude;
  cfg.cell_pattern = CosinePattern(cell_alpha);
  cfg.cell_gain = cosine_gain_closed_form(cell_alpha);
  cfg.frequency_hz = frequency_hz;
  cfg.wavelength_m = wavelength_m > 0.0 ? wavelength_m : kSpeedOfLight / frequency_hz;
  cfg.validate();
  return cfg;
}

bool ris_electrically_large(const RisConfig& cfg) {
  return cfg.cols_m * cfg.dx_m >= 10.0 * cfg.wavelength_m &&
         cfg.rows_n * cfg.dy_m >= 10.0 * cfg.wavelength_m;
}

PhaseProfile::PhaseProfile(int rows, int cols)
    : rows_(rows), cols_(cols), phases_(static_cast<size_t>(rows) * cols, 0.0) {
  if (rows <= 0 || cols <= 0) throw ValidationError("profile dimensions must be positive");
}

void PhaseProfile::set(int i, int j, double phase) {
  if (!std::isfinite(phase)) throw ValidationError("phase must be finite");
  phases_[static_cast<size_t>(i) * cols_ + j] = wrap_two_pi(phase);
}

double PhaseProfile::at_cell(CellIndex idx) const {
  const int i = idx.n - (1 - rows_ / 2);
  const int j = idx.m - (1 - cols_ / 2);
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) {
    throw ValidationError("cell index outside the profile");
  }
  return at(i, j);
}

namespace {

// Iterates the signed grid in canonical order and stores wrapped phases.
template <typename Fn>
PhaseProfile build(const RisConfig& cfg, Fn&& phase_of_cell) {
  PhaseProfile p(cfg.rows_n, cfg.cols_m);
  for (int i = 0; i < cfg.rows_n; ++i) {
    const int n = cfg.n_min() + i;
    for (int j = 0; j < cfg.cols_m; ++j) {
      const int m = cfg.m_min() + j;
      p.set(i, j, phase_of_cell(n, m));
    }
  }
  return p;
}

}  // namespace

PhaseProfile uniform_profile(const RisConfig& cfg, double phi) {
  if (!std::isfinite(phi)) throw ValidationError("phase must be finite");
  return build(cfg, [phi](int, int) { return phi; });
}

PhaseProfile farfield_codebook(const RisConfig& cfg, double theta_t, double phi_t,
                               double theta_des, double phi_des) {
  const double ax = std::sin(theta_t) * std::cos(phi_t) + std::sin(theta_des) * std::cos(phi_des);
  const double ay = std::sin(theta_t) * std::sin(phi_t) + std::sin(theta_des) * std::sin(phi_des);
  const double k = kTwoPi / cfg.wavelength_m;
  return build(cfg, [&](int n, int m) {
    return -k * (ax * (m - 0.5) * cfg.dx_m + ay * (n - 0.5) * cfg.dy_m);
  });
}

PhaseProfile nearfield_focus_codebook(const RisConfig& cfg, const Point3& tx, const Point3& rx) {
  if (!(tx.z > 0.0) || !(rx.z > 0.0)) {
    throw ValidationError("terminals must be on the reflecting side");
  }
  const double k = kTwoPi / cfg.wavelength_m;
  return build(cfg, [&](int n, int m) {
    const Point3 cell{(m - 0.5) * cfg.dx_m, (n - 0.5) * cfg.dy_m, 0.0};
    return k * (cell_distance(tx, cell) + cell_distance(rx, cell));
  });
}

PhaseProfile nearfield_broadcast_codebook(const RisConfig& cfg, const Point3& tx, double d1,
                                          double theta_des, double phi_des) {
  if (!(tx.z > 0.0)) throw ValidationError("transmitter must be on the reflecting side");
  const Point3 virt = virtual_transmitter(d1, theta_des, phi_des);
  const double k = kTwoPi / cfg.wavelength_m;
  return build(cfg, [&](int n, int m) {
    const Point3 cell{(m - 0.5) * cfg.dx_m, (n - 0.5) * cfg.dy_m, 0.0};
    return k * (cell_distance(tx, cell) - cell_distance(virt, cell));
  });
}

PhaseProfile two_beam_stripe_profile(const RisConfig& cfg) {
  return build(cfg, [](int, int m) {
    const int r = ((m % 4) + 4) % 4;  // non-negative remainder for negative m
    return (r == 0 || r == 1) ? 0.0 : kPi;
  });
}

double power_consumption(DiodeKind kind, long n_on) {
  if (n_on < 0) throw ValidationError("cell count must be non-negative");
  if (kind == DiodeKind::kVaractor) return 0.0;
  return 0.33e-3 * static_cast<double>(n_on);
}

double power_consumption(DiodeKind kind, long n_on, const RisConfig& cfg) {
  if (kind == DiodeKind::kPin && n_on > cfg.cell_count()) {
    throw ValidationError("on-state cell count exceeds the surface cell count");
  }
  return power_consumption(kind, n_on);
}

void write_profile_csv(const PhaseProfile& profile, std::ostream& os) {
  char buf[32];
  for (int i = 0; i < profile.rows(); ++i) {
    for (int j = 0; j < profile.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.9g", profile.at(i, j));
      os << buf << (j + 1 == profile.cols() ? "" : ",");
    }
    os << '\n';
  }
  if (!os) throw IoError("failed to write phase profile");
}

PhaseProfile read_profile_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      try {
        size_t pos = 0;
        const double v = std::stod(field, &pos);
        if (pos != field.size() || !std::isfinite(v)) throw std::invalid_argument(field);
        row.push_back(v);
      } catch (const std::exception&) {
        throw IoError("phase profile line " + std::to_string(line_no) + ": bad value '" + field +
                      "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw IoError("phase profile line " + std::to_string(line_no) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("phase profile is empty");
  PhaseProfile p(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int i = 0; i < p.rows(); ++i) {
    for (int j = 0; j < p.cols(); ++j) p.set(i, j, rows[i][j]);
  }
  return p;
}

}  // namespace rispath
