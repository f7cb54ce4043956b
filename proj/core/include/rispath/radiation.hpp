#pragma once

// Normalized power radiation patterns of the cos^alpha family, gain from the
// pattern integral, and the combined per-cell pattern factor.

#include <optional>

#include "rispath/geometry.hpp"

namespace rispath {

/// Hemispherical cos^alpha power pattern: cos(theta)^alpha on the front
/// hemisphere (theta <= pi/2), 0 behind. Peak value 1 at theta = 0.
class CosinePattern {
 public:
  CosinePattern() : CosinePattern(0.0) {}
  explicit CosinePattern(double exponent);

  double exponent() const { return exponent_; }

  /// Pattern value given cos(theta); negative cosines are the back hemisphere.
  double value_from_cos(double cos_theta) const;

 private:
  double exponent_ = 0.0;
  int int_exponent_ = 0;  // -1 when the exponent is not integral
};

/// Pattern value at elevation theta. Throws when theta is outside [0, pi].
double pattern_value(const CosinePattern& p, double theta_rad);

/// Gain by numerical quadrature of 4*pi / integral(F sin(theta)); assumes
/// 100% efficiency. Agrees with the closed form 2*(alpha+1) to better than
/// 1e-6 relative.
double gain_from_pattern(const CosinePattern& p);

/// Closed-form gain 2*(alpha+1) of the hemispherical cosine family.
double cosine_gain_closed_form(double alpha);

/// -3 dB half-width of the main lobe: arccos(2^(-1/alpha)); pi/2 for alpha=0.
double mainlobe_halfwidth(const CosinePattern& p);

struct AntennaSpec {
  CosinePattern pattern;
  double gain = 1.0;  // linear power ratio
  Point3 position{};
  Point3 boresight_target{};  // surface center unless overridden
  std::optional<double> mainlobe_halfwidth_rad{};

  /// Configured main-lobe half-width, falling back to the -3 dB width.
  double effective_mainlobe_halfwidth() const {
    return mainlobe_halfwidth_rad ? *mainlobe_halfwidth_rad : mainlobe_halfwidth(pattern);
  }
};

AntennaSpec make_antenna(double alpha, double gain_linear);

/// Antenna with gain derived from its pattern via the closed form.
AntennaSpec make_antenna(double alpha);

/// Product F_tx * F_cell(to tx) * F_cell(to rx) * F_rx evaluated at one unit
/// cell; in [0, 1]. A terminal behind the surface contributes factor 0.
double combined_pattern_factor(const AntennaSpec& tx, const AntennaSpec& rx,
                               const CosinePattern& cell_pattern, const Point3& cell);

}  // namespace rispath
