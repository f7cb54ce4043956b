#pragma once

// Surface configuration, per-cell phase profiles, the three phase-design
// codebooks, the two-beam stripe pattern, and diode power consumption.

#include <iosfwd>
#include <string>
#include <vector>

#include "rispath/geometry.hpp"
#include "rispath/radiation.hpp"

namespace rispath {

struct RisConfig {
  int rows_n = 2;  // N, even
  int cols_m = 2;  // M, even
  double dx_m = 0.01;
  double dy_m = 0.01;
  CosinePattern cell_pattern{3.0};
  double cell_gain = 8.0;  // linear, from the cell pattern
  double amplitude = 1.0;  // |Gamma| in (0, 1]
  double wavelength_m = 0.03;
  double frequency_hz = 0.0;  // informational when wavelength is given verbatim

  int n_min() const { return 1 - rows_n / 2; }
  int n_max() const { return rows_n / 2; }
  int m_min() const { return 1 - cols_m / 2; }
  int m_max() const { return cols_m / 2; }
  int cell_count() const { return rows_n * cols_m; }
  bool contains(CellIndex idx) const {
    return idx.n >= n_min() && idx.n <= n_max() && idx.m >= m_min() && idx.m <= m_max();
  }

  /// Throws ValidationError on hard errors (odd N or M, A outside (0,1], ...);
  /// returns soft warnings such as a cell pitch outside [lambda/10, lambda/2].
  std::vector<std::string> validate() const;
};

/// Builds a config, deriving the wavelength from the frequency when no
/// verbatim wavelength is supplied and the cell gain from the cell pattern.
RisConfig make_ris_config(int rows_n, int cols_m, double dx_m, double dy_m, double amplitude,
                          double cell_alpha, double frequency_hz, double wavelength_m = 0.0);

/// Both side lengths at least 10 wavelengths; required by the near-field
/// broadcast closed form.
bool ris_electrically_large(const RisConfig& cfg);

/// Dense N x M matrix of phase shifts in [0, 2*pi), row n ascending, column m
/// ascending.
class PhaseProfile {
 public:
  PhaseProfile() = default;
  PhaseProfile(int rows, int cols);  // zero phases

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  /// Storage access, row i in [0, N), column j in [0, M).
  double at(int i, int j) const { return phases_[static_cast<size_t>(i) * cols_ + j]; }
  void set(int i, int j, double phase);

  /// Access by signed cell index (n, m).
  double at_cell(CellIndex idx) const;

  const std::vector<double>& data() const { return phases_; }

  bool dims_match(const RisConfig& cfg) const {
    return rows_ == cfg.rows_n && cols_ == cfg.cols_m;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> phases_;
};

/// All cells share the phase mod(phi, 2*pi).
PhaseProfile uniform_profile(const RisConfig& cfg, double phi);

/// Linear phase gradient steering a far-field incident wave from (theta_t,
/// phi_t) towards (theta_des, phi_des).
PhaseProfile farfield_codebook(const RisConfig& cfg, double theta_t, double phi_t,
                               double theta_des, double phi_des);

/// Per-cell phase mod(2*pi*(r_t + r_r)/lambda, 2*pi); focuses on a receiver at
/// a known position and maximizes its received power.
PhaseProfile nearfield_focus_codebook(const RisConfig& cfg, const Point3& tx, const Point3& rx);

/// Phase compensation that makes the real transmitter act as a virtual
/// transmitter mirrored about the desired broadcast direction.
PhaseProfile nearfield_broadcast_codebook(const RisConfig& cfg, const Point3& tx, double d1,
                                          double theta_des, double phi_des);

/// Column-striped 0/pi profile (period 4 in m) producing two symmetric beams.
PhaseProfile two_beam_stripe_profile(const RisConfig& cfg);

enum class DiodeKind { kVaractor, kPin };

/// Surface power draw in watts: 0 for varactor cells, 0.33 mW per "on" PIN
/// cell. With a config, n_on is validated against the cell count.
double power_consumption(DiodeKind kind, long n_on);
double power_consumption(DiodeKind kind, long n_on, const RisConfig& cfg);

/// CSV matrix, row n ascending, column m ascending, radians, 9 significant
/// digits.
void write_profile_csv(const PhaseProfile& profile, std::ostream& os);
PhaseProfile read_profile_csv(std::istream& is);

}  // namespace rispath
